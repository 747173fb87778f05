#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "graphmem/bounds.hpp"
#include "graphmem/cli.hpp"
#include "graphmem/errors.hpp"
#include "graphmem/parallel.hpp"
#include "graphmem/random.hpp"

namespace graphmem::cli {

using nlohmann::json;

namespace {

const char* const kCommands[] = {"gen", "spectrum", "dynamics", "capacity", "theory", "verify", "reproduce"};

json defaults_for(const std::string& command) {
  if (command == "gen") {
    return {{"model", "complete"}, {"n", 0},       {"p", 0.1},       {"beta", 3.5},
            {"davg", 10.0},        {"mbar", 50.0}, {"m_small", 2},   {"bridged", false}};
  }
  if (command == "spectrum") return {{"graph", ""}, {"tol", kDefaultSpectralTol}, {"method", "auto"}};
  if (command == "dynamics") {
    return {{"graph", ""},         {"m", 1},           {"patterns_seed", nullptr}, {"mu", 0},
            {"start", "pattern"},  {"mode", "parallel"}, {"kmax", "auto"},       {"energy_trace", false}};
  }
  if (command == "capacity") {
    return {{"graph", ""},    {"rho", 0.05},        {"threshold", 0.95},      {"trials", 200},
            {"kmax", "auto"}, {"max_m", 0},         {"trials_per_set", 10},   {"flip_set", ""}};
  }
  if (command == "theory") {
    return {{"graph", ""},
            {"tol", kDefaultSpectralTol},
            {"alpha", 0.05},
            {"m", 1.0},
            {"rho_start", 0.05},
            {"c1", 1.0},
            {"c2", 1.0},
            {"c_steps", 1.0},
            {"c_iter", 10.0},
            {"ratio_factor", 1.0},
            {"h1_c", 0.5},
            {"h2_c", 0.1},
            {"rho_grid", {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4}}};
  }
  if (command == "verify") {
    return {{"check", "tail"}, {"graph", ""},   {"n", 0},     {"p", 0.0},
            {"samples", 100000}, {"trials", 200}, {"pairs", 1000}, {"complement_checks", 10},
            {"grid", 20},      {"z", 3.0}};
  }
  if (command == "reproduce") {
    const ReproduceOptions d;
    return {{"suite", "complete"}, {"sizes", d.sizes}, {"p", d.p},       {"c0", d.c0},
            {"beta", d.beta},      {"davg", d.d_avg},  {"mbar", d.m_bar}, {"c_degree", d.c_degree},
            {"c1", d.c1},          {"c_h2", d.c_h2},   {"rho", d.rho},    {"threshold", d.threshold},
            {"trials", d.trials},  {"trials_per_set", d.trials_per_pattern_set}};
  }
  throw ConfigError("command", "unknown command \"" + command + "\"");
}

// Typed, named access to resolved parameters.
class Params {
 public:
  explicit Params(const json& j) : j_(j) {}

  const json& raw(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(key, "missing");
    return j_.at(key);
  }
  double num(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
  }
  std::size_t count(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key, "expected a non-negative integer");
    return v.get<std::size_t>();
  }
  std::string str(const char* key) const {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(key, "expected a string");
    return v.get<std::string>();
  }
  bool flag(const char* key) const {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
    return v.get<bool>();
  }
  std::vector<double> nums(const char* key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(key, "expected an array of numbers");
    std::vector<double> out;
    for (const json& x : v) {
      if (!x.is_number()) throw ConfigError(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  std::vector<std::size_t> counts(const char* key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(key, "expected an array of integers");
    std::vector<std::size_t> out;
    for (const json& x : v) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw ConfigError(key, "expected an array of integers");
      out.push_back(x.get<std::size_t>());
    }
    return out;
  }
  // "auto" or a positive integer; 0 stands for auto.
  std::size_t kmax(const char* key) const {
    const json& v = raw(key);
    if (v.is_string() && v.get<std::string>() == "auto") return 0;
    if (v.is_number_integer() && v.get<long long>() > 0) return v.get<std::size_t>();
    throw ConfigError(key, "expected \"auto\" or a positive integer");
  }

 private:
  const json& j_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<VertexId> parse_flip_set(const std::string& text) {
  std::vector<VertexId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(static_cast<VertexId>(std::stoul(item)));
      } else {
        const auto a = std::stoul(item.substr(0, dash));
        const auto b = std::stoul(item.substr(dash + 1));
        if (b < a) throw ConfigError("flip_set", "descending range \"" + item + "\"");
        for (auto v = a; v <= b; ++v) out.push_back(static_cast<VertexId>(v));
      }
    } catch (const std::logic_error&) {
      throw ConfigError("flip_set", "malformed entry \"" + item + "\"");
    }
  }
  return out;
}

SpectralMethod parse_method(const std::string& s) {
  if (s == "auto") return SpectralMethod::automatic;
  if (s == "dense") return SpectralMethod::dense;
  if (s == "iterative") return SpectralMethod::iterative;
  throw ConfigError("method", "expected auto, dense or iterative");
}

Graph load_graph(const Params& p) {
  const std::string path = p.str("graph");
  if (path.empty()) throw ConfigError("graph", "an edge-list path is required");
  return load_edge_list(path);
}

json spectrum_json(const SpectralSummary& s) {
  return {{"lambda1", s.lambda1}, {"lambda2", s.lambda2}, {"lambdaN", s.lambdaN},        {"kappa", s.kappa},
          {"gap", s.gap},         {"method", to_string(s.method)}, {"residual", s.residual}, {"matvecs", s.matvecs}};
}

json degrees_json(const DegreeStats& d) {
  return {{"delta", d.delta}, {"m", d.m}, {"d_avg", d.d_avg}, {"d_tilde", d.d_tilde}, {"edges", d.edge_count}};
}

json condition_json(const ConditionReport& c) {
  return {{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"constant", c.constant_used}};
}

json rate_json(const RateEstimate& e) {
  return {{"trials", e.trials}, {"successes", e.successes}, {"rate", e.rate},
          {"ci_lo", e.ci_lo},   {"ci_hi", e.ci_hi},         {"mean_steps", e.mean_steps}};
}

std::string spins_text(const SpinState& s) {
  std::string out(s.size(), '+');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) out[i] = '-';
  }
  return out;
}

struct Report {
  json result = json::object();
  std::string csv_columns;
  std::vector<std::string> csv_rows;
  std::size_t violations = 0;
};

Report run_gen(const ExperimentConfig& c, const Params& p) {
  const std::string model = p.str("model");
  const std::size_t n = p.count("n");
  if (n == 0) throw ConfigError("n", "must be positive");
  Graph g;
  if (model == "complete") {
    g = gen_complete(n);
  } else if (model == "gnp") {
    g = gen_erdos_renyi(n, p.num("p"), c.master_seed);
  } else if (model == "chunglu") {
    g = gen_chung_lu(powerlaw_weights(n, p.num("beta"), p.num("davg"), p.num("mbar")), c.master_seed);
  } else if (model == "twoclique") {
    g = gen_two_cliques(p.count("m_small"), n, p.flag("bridged"));
  } else {
    throw ConfigError("model", "expected complete, gnp, chunglu or twoclique");
  }
  Report r;
  r.result = {{"n", g.num_vertices()}, {"edges", g.num_edges()}};
  r.csv_rows.push_back([&] {
    std::ostringstream os;
    write_edge_list(g, os);
    return os.str();
  }());
  return r;
}

Report run_spectrum(const ExperimentConfig&, const Params& p) {
  const Graph g = load_graph(p);
  Report r;
  r.result = spectrum_json(spectrum_summary(g, p.num("tol"), parse_method(p.str("method"))));
  return r;
}

Report run_dynamics_cmd(const ExperimentConfig& c, const Params& p) {
  const Graph g = load_graph(p);
  const std::size_t m = p.count("m");
  if (m == 0) throw ConfigError("m", "must be positive");
  const json& ps = p.raw("patterns_seed");
  if (!ps.is_number_unsigned()) throw ConfigError("patterns_seed", "expected a non-negative integer");
  const PatternSet patterns = sample_patterns(m, g.num_vertices(), ps.get<std::uint64_t>());
  const Network net(g, patterns);
  const std::size_t mu = p.count("mu");
  if (mu >= m) throw ConfigError("mu", "must be below m");

  const SpinState target = patterns.row(mu);
  SpinState start = target;
  const std::string start_spec = p.str("start");
  if (start_spec.rfind("corrupt:", 0) == 0) {
    double rho = 0.0;
    try {
      rho = std::stod(start_spec.substr(8));
    } catch (const std::logic_error&) {
      throw ConfigError("start", "expected corrupt:RHO");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("start", "rho must lie in [0, 1]");
    start = corrupt(target, rho, derive_seed(c.master_seed, {1}));
  } else if (start_spec != "pattern") {
    throw ConfigError("start", "expected pattern or corrupt:RHO");
  }

  const std::string mode_name = p.str("mode");
  UpdateMode mode;
  if (mode_name == "parallel") {
    mode = UpdateMode::parallel;
  } else if (mode_name == "sequential") {
    mode = UpdateMode::sequential;
  } else {
    throw ConfigError("mode", "expected parallel or sequential");
  }
  std::size_t k_max = p.kmax("kmax");
  if (k_max == 0) k_max = default_step_budget(spectrum_summary(g), g.num_vertices());

  const bool trace = p.flag("energy_trace");
  const DynamicsOutcome out = run_dynamics(net, start, mode, k_max, trace);
  Report r;
  r.result = {{"terminal", to_string(out.terminal)},
              {"steps", out.steps},
              {"k_max", k_max},
              {"start_distance", hamming(start, target)},
              {"final_distance", hamming(out.final, target)},
              {"recovered", out.terminal == Terminal::fixed_point && out.final == target},
              {"final", spins_text(out.final)}};
  if (trace) r.result["energy_trace"] = out.energy_trace;
  return r;
}

Report run_capacity(const ExperimentConfig& c, const Params& p) {
  const Graph g = load_graph(p);
  SearchOptions opt;
  opt.corruption.rho = p.num("rho");
  opt.corruption.fixed_flips = parse_flip_set(p.str("flip_set"));
  for (VertexId v : opt.corruption.fixed_flips) {
    if (v >= g.num_vertices()) throw ConfigError("flip_set", "vertex " + std::to_string(v) + " out of range");
  }
  opt.threshold = p.num("threshold");
  opt.trials = p.count("trials");
  opt.k_max = p.kmax("kmax");
  opt.max_m = p.count("max_m");
  opt.trials_per_pattern_set = p.count("trials_per_set");
  opt.seed = c.master_seed;
  opt.workers = c.worker_count;
  const CapacityEstimate est = capacity_search(g, opt);

  Report r;
  r.result = {{"m_hat", est.m_hat}, {"k_max", est.k_max}, {"rho", est.rho}, {"threshold", est.threshold},
              {"trials_per_m", est.trials_per_m}};
  r.csv_columns = "M,trials,successes,rate,ci_lo,ci_hi,mean_steps";
  json curve = json::array();
  for (const CurvePoint& pt : est.curve) {
    const RateEstimate& e = pt.estimate;
    r.csv_rows.push_back(std::to_string(pt.m_patterns) + "," + std::to_string(e.trials) + "," +
                         std::to_string(e.successes) + "," + fmt(e.rate) + "," + fmt(e.ci_lo) + "," + fmt(e.ci_hi) +
                         "," + fmt(e.mean_steps));
    json row = rate_json(e);
    row["M"] = pt.m_patterns;
    curve.push_back(row);
  }
  r.result["curve"] = curve;
  return r;
}

Report run_theory(const ExperimentConfig&, const Params& p) {
  const Graph g = load_graph(p);
  const std::size_t n = g.num_vertices();
  TheoryParams tp;
  tp.alpha = p.num("alpha");
  tp.c1 = p.num("c1");
  tp.c2 = p.num("c2");
  tp.c_steps = p.num("c_steps");
  tp.c_iter = p.num("c_iter");
  try {
    tp.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("theory", e.what());
  }
  const double m = p.num("m");
  const SpectralSummary s = spectrum_summary(g, p.num("tol"));
  const DegreeStats d = degree_stats(g);

  Report r;
  r.result["spectrum"] = spectrum_json(s);
  r.result["degrees"] = degrees_json(d);
  r.result["h1"] = condition_json(check_h1(s, d, p.num("h1_c")));
  r.result["h2"] = condition_json(check_h2(s, n, p.num("h2_c")));
  const CapacityPrediction cap = theoretical_capacity(s, d, n, tp.alpha);
  r.result["theoretical_capacity"] = {{"value", cap.value}, {"feasible", cap.feasible}};
  r.result["rho_zero"] = rho_zero(s, d, m, tp.c2);

  json table = json::array();
  for (double rho : p.nums("rho_grid")) {
    const FRhoResult f = f_rho(rho, s, d, m, tp);
    json branches = json::object();
    for (std::size_t k = 0; k < f.branches.size(); ++k) branches[std::string(kFRhoBranchNames[k])] = f.branches[k];
    table.push_back({{"rho", rho},
                     {"branches", branches},
                     {"active", kFRhoBranchNames[f.active]},
                     {"value", f.value},
                     {"contracts", f.value < rho}});
  }
  r.result["f_rho"] = table;

  try {
    const StepPrediction sp = predict_steps(s, m, n, p.num("rho_start"), tp.c_steps, p.num("ratio_factor"));
    r.result["predict_steps"] = {{"n0", sp.n0},
                                 {"diverged", sp.diverged},
                                 {"crossings", sp.crossings},
                                 {"monotonicity_checks", sp.monotonicity_checks}};
  } catch (const InvalidArgument& e) {
    r.result["predict_steps"] = {{"error", e.what()}};
  }
  r.result["default_k_max"] = default_step_budget(s, n, tp.c_iter);
  return r;
}

Graph verify_graph(const ExperimentConfig& c, const Params& p) {
  if (!p.str("graph").empty()) return load_graph(p);
  const std::size_t n = p.count("n");
  if (n == 0) throw ConfigError("graph", "give --graph or --n with --p");
  return gen_erdos_renyi(n, p.num("p"), derive_seed(c.master_seed, {0}));
}

std::vector<VertexId> random_subset(Rng& rng, std::size_t n) {
  const auto size = static_cast<std::size_t>(1 + uniform_below(rng, n));
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

Report run_verify(const ExperimentConfig& c, const Params& p) {
  const std::string check = p.str("check");
  const std::uint64_t seed = derive_seed(c.master_seed, {1});
  const double z = p.num("z");
  if (!(z > 0.0)) throw ConfigError("z", "must be positive");
  Report r;
  r.result["check"] = check;

  if (check == "degrees") {
    const std::size_t n = p.count("n");
    if (n == 0) throw ConfigError("n", "the degrees check needs --n and --p");
    const DegreeTailReport d = degree_tail_experiment(n, p.num("p"), p.count("trials"), seed, p.count("complement_checks"));
    r.result.update({{"n", d.n},
                     {"p", d.p},
                     {"trials", d.trials},
                     {"epsilon", d.epsilon},
                     {"epsilon_valid", d.epsilon_valid},
                     {"upper_threshold", d.upper_threshold},
                     {"lower_threshold", d.lower_threshold},
                     {"freq_max", d.freq_max},
                     {"freq_min", d.freq_min},
                     {"bound_max", d.bound_max},
                     {"bound_min", d.bound_min},
                     {"complement_checks", d.complement_checks},
                     {"complement_mismatches", d.complement_mismatches}});
    r.violations = d.violations;
    r.result["violations"] = r.violations;
    return r;
  }

  const Graph g = verify_graph(c, p);
  const SpectralSummary s = spectrum_summary(g);
  r.result["spectrum"] = spectrum_json(s);
  const std::size_t grid = p.count("grid");
  if (grid == 0) throw ConfigError("grid", "must be positive");

  if (check == "tail") {
    const double l = static_cast<double>(g.num_edges());
    std::vector<double> ys;
    for (std::size_t k = 1; k <= grid; ++k) ys.push_back(4.0 * std::sqrt(std::max(l, 1.0)) * k / grid);
    const TailReport t = quadratic_form_tail(g, s, ys, p.count("samples"), seed, c.worker_count, z);
    r.result.update({{"y", t.y_grid},       {"empirical", t.empirical}, {"ci_lo", t.ci_lo}, {"ci_hi", t.ci_hi},
                     {"analytic", t.analytic}, {"exact", t.exact},       {"samples", t.samples}});
    r.violations = t.violations;
  } else if (check == "mgf") {
    std::vector<double> ts;
    const double cap = s.lambda1 > 0.0 ? 0.9 / s.lambda1 : 1.0;
    for (std::size_t k = 0; k < grid; ++k) ts.push_back(cap * k / grid);
    const MgfReport m = mgf_check(g, s, ts, p.count("samples"), seed, c.worker_count, z);
    r.result.update({{"t", m.t_grid},       {"empirical", m.empirical}, {"ci_lo", m.ci_lo}, {"ci_hi", m.ci_hi},
                     {"analytic", m.analytic}, {"exact", m.exact},       {"samples", m.samples}});
    r.violations = m.violations;
  } else if (check == "lemma43") {
    const std::size_t pairs = p.count("pairs");
    std::vector<std::uint8_t> bad(pairs, 0);
    parallel_for(pairs, c.worker_count, [&](std::size_t k) {
      Rng rng(derive_seed(seed, {k}));
      const auto I = random_subset(rng, g.num_vertices());
      const auto J = random_subset(rng, g.num_vertices());
      const BoundReport b = subgraph_bounds(g, s, I, J);
      bad[k] = static_cast<std::uint8_t>(!b.edge_ok) | static_cast<std::uint8_t>(!b.lambda_ok) << 1;
    });
    std::size_t edge_bad = 0, lambda_bad = 0;
    for (std::uint8_t b : bad) {
      edge_bad += b & 1U;
      lambda_bad += (b >> 1) & 1U;
      r.violations += static_cast<std::size_t>(b != 0);
    }
    r.result.update({{"pairs", pairs}, {"edge_violations", edge_bad}, {"lambda_violations", lambda_bad}});
  } else {
    throw ConfigError("check", "expected tail, mgf, degrees or lemma43");
  }
  r.result["violations"] = r.violations;
  return r;
}

Report run_reproduce(const ExperimentConfig& c, const Params& p) {
  ReproduceOptions opt;
  opt.suite = parse_suite(p.str("suite"));
  opt.sizes = p.counts("sizes");
  opt.p = p.num("p");
  opt.c0 = p.num("c0");
  opt.beta = p.num("beta");
  opt.d_avg = p.num("davg");
  opt.m_bar = p.num("mbar");
  opt.c_degree = p.num("c_degree");
  opt.c1 = p.num("c1");
  opt.c_h2 = p.num("c_h2");
  opt.rho = p.num("rho");
  opt.threshold = p.num("threshold");
  opt.trials = p.count("trials");
  opt.trials_per_pattern_set = p.count("trials_per_set");
  opt.seed = c.master_seed;
  opt.workers = c.worker_count;
  const ReproduceSummary sum = reproduce_corollaries(opt);

  Report r;
  r.csv_columns = "n,lambda1,kappa,gap,delta,m,h1,h2,theory,k_max,m_hat,mean_steps,predictor,ratio";
  json rows = json::array();
  for (const ReproduceRow& row : sum.rows) {
    r.csv_rows.push_back(std::to_string(row.n) + "," + fmt(row.spectrum.lambda1) + "," + fmt(row.spectrum.kappa) +
                         "," + fmt(row.spectrum.gap) + "," + std::to_string(row.degrees.delta) + "," +
                         std::to_string(row.degrees.m) + "," + (row.h1.holds ? "1" : "0") + "," +
                         (row.h2.holds ? "1" : "0") + "," + fmt(row.theory.value) + "," + std::to_string(row.k_max) +
                         "," + std::to_string(row.m_hat) + "," + fmt(row.mean_steps) + "," + fmt(row.predictor) +
                         "," + fmt(row.ratio));
    rows.push_back({{"n", row.n},
                    {"spectrum", spectrum_json(row.spectrum)},
                    {"degrees", degrees_json(row.degrees)},
                    {"h1", condition_json(row.h1)},
                    {"h2", condition_json(row.h2)},
                    {"theory", row.theory.value},
                    {"k_max", row.k_max},
                    {"m_hat", row.m_hat},
                    {"mean_steps", row.mean_steps},
                    {"predictor", row.predictor},
                    {"ratio", row.ratio}});
  }
  r.result = {{"suite", to_string(opt.suite)}, {"ratio_spread", sum.ratio_spread}, {"slope", sum.slope},
              {"rows", rows}};
  return r;
}

void emit(const ExperimentConfig& c, const std::string& text, std::ostream& out) {
  if (c.output_path.empty() || c.output_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output_path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open " + c.output_path + " for writing");
  f << text;
  f.flush();
  if (!f) throw std::ios_base::failure("write to " + c.output_path + " failed");
}

std::string render(const ExperimentConfig& c, const Report& r, double seconds) {
  if (c.command == "gen") return r.csv_rows.front();
  json result = r.result;
  if (c.format == OutputFormat::csv && !r.csv_columns.empty()) {
    result.erase("curve");
    result.erase("rows");
    std::string text = "# schema_version: " + std::to_string(kSchemaVersion) + "\n";
    text += "# config: " + to_json(c).dump() + "\n";
    text += "# result: " + result.dump() + "\n";
    text += r.csv_columns + "\n";
    for (const std::string& row : r.csv_rows) text += row + "\n";
    return text;
  }
  json doc = {{"schema_version", kSchemaVersion}, {"config", to_json(c)}, {"result", result},
              {"timing", {{"elapsed_seconds", seconds}}}};
  return doc.dump(2) + "\n";
}

}  // namespace

json default_params(const std::string& command) { return defaults_for(command); }

ExperimentConfig resolve(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  json merged = defaults_for(c.command);
  if (!c.params.is_object()) throw ConfigError("params", "expected an object");
  for (const auto& [key, value] : c.params.items()) {
    if (!merged.contains(key)) throw ConfigError(key, "unknown parameter for " + c.command);
    const json& def = merged[key];
    const bool ok = def.is_null() || value.is_null() || (def.is_number() && value.is_number()) ||
                    def.type() == value.type() || key == "kmax";
    if (!ok) throw ConfigError(key, "expected " + std::string(def.type_name()));
    merged[key] = value;
  }
  if (merged.contains("patterns_seed") && merged["patterns_seed"].is_null()) merged["patterns_seed"] = c.master_seed;
  c.params = merged;
  if (c.deterministic_order) c.worker_count = 1;
  if (c.worker_count == 0) c.worker_count = default_workers();
  return c;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig c = resolve(config);
    const Params p(c.params);
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    if (c.command == "gen") {
      r = run_gen(c, p);
    } else if (c.command == "spectrum") {
      r = run_spectrum(c, p);
    } else if (c.command == "dynamics") {
      r = run_dynamics_cmd(c, p);
    } else if (c.command == "capacity") {
      r = run_capacity(c, p);
    } else if (c.command == "theory") {
      r = run_theory(c, p);
    } else if (c.command == "verify") {
      r = run_verify(c, p);
    } else {
      r = run_reproduce(c, p);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(c, render(c, r, seconds), out);
    return r.violations > 0 ? kExitViolations : kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

ExperimentConfig config_from_csv_header(std::istream& in) {
  const std::string prefix = "# config: ";
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) {
      try {
        return config_from_json(json::parse(line.substr(prefix.size())));
      } catch (const json::parse_error& e) {
        throw ConfigError("config", e.what());
      }
    }
    if (line.empty() || line[0] != '#') break;
  }
  throw ConfigError("config", "no config line in header");
}

std::string csv_body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body += line + "\n";
  }
  return body;
}

namespace {

// Binds a typed option whose value lands in params[key] only when given.
template <class T>
CLI::Option* param(CLI::App* app, json& params, const json& defaults, const std::string& flag, const std::string& key,
                   const std::string& help) {
  CLI::Option* o = app->add_option_function<T>(flag, [&params, key](const T& v) { params[key] = v; }, help);
  if (defaults.contains(key) && !defaults[key].is_null()) {
    o->default_str(defaults[key].is_string() ? defaults[key].get<std::string>() : defaults[key].dump());
  }
  return o;
}

CLI::Option* switch_param(CLI::App* app, json& params, const std::string& flag, const std::string& key,
                          const std::string& help) {
  return app->add_flag_function(flag, [&params, key](std::int64_t n) { params[key] = n > 0; }, help);
}

// "auto" stays a string, anything else must be a positive integer.
void kmax_param(CLI::App* app, json& params, const json& defaults) {
  app->add_option_function<std::string>(
         "--kmax",
         [&params](const std::string& v) {
           if (v == "auto") {
             params["kmax"] = v;
             return;
           }
           std::size_t used = 0;
           long long k = 0;
           try {
             k = std::stoll(v, &used);
           } catch (const std::logic_error&) {
           }
           if (k <= 0 || used != v.size()) throw CLI::ValidationError("--kmax", "expected auto or a positive integer");
           params["kmax"] = k;
         },
         "step budget: auto or a positive integer")
      ->default_str(defaults["kmax"].get<std::string>());
}

}  // namespace

std::optional<ExperimentConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out,
                                                   std::ostream& err, int& exit_code) {
  CLI::App app{"Hopfield associative memory on graphs: generation, spectra, dynamics, capacity and bounds",
               args.empty() ? "graphmem" : args.front()};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::map<std::string, json> params;
  std::map<std::string, json> defaults;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  bool deterministic = false;
  std::string output;
  std::string format;

  auto common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--seed", seed, "master seed (falls back to GRAPHMEM_SEED, then 0)")->envname("GRAPHMEM_SEED");
    sub->add_option("--workers", workers, "worker threads, 0 for all cores");
    sub->add_flag("--deterministic-order", deterministic, "run on a single worker");
    sub->add_option("--out", output, "output file (default stdout)");
    if (with_format) sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  for (const char* name : kCommands) {
    params[name] = json::object();
    defaults[name] = defaults_for(name);
  }

  {
    auto* sub = app.add_subcommand("gen", "generate a graph and write it as an edge list");
    json& p = params["gen"];
    const json& d = defaults["gen"];
    param<std::string>(sub, p, d, "--model", "model", "complete, gnp, chunglu or twoclique")
        ->check(CLI::IsMember({"complete", "gnp", "chunglu", "twoclique"}));
    param<std::size_t>(sub, p, d, "--n", "n", "number of vertices")->required();
    param<double>(sub, p, d, "--p", "p", "edge probability (gnp)");
    param<double>(sub, p, d, "--beta", "beta", "power-law exponent (chunglu)");
    param<double>(sub, p, d, "--davg", "davg", "expected average degree (chunglu)");
    param<double>(sub, p, d, "--mbar", "mbar", "expected maximum degree (chunglu)");
    param<std::size_t>(sub, p, d, "--m-small", "m_small", "size of the small clique (twoclique)");
    switch_param(sub, p, "--bridged", "bridged", "join the two cliques by one edge (twoclique)");
    common(sub, false);
  }
  {
    auto* sub = app.add_subcommand("spectrum", "extreme adjacency eigenvalues of a graph");
    json& p = params["spectrum"];
    const json& d = defaults["spectrum"];
    param<std::string>(sub, p, d, "--graph", "graph", "edge-list file")->required();
    param<double>(sub, p, d, "--tol", "tol", "relative eigenvalue tolerance");
    param<std::string>(sub, p, d, "--method", "method", "auto, dense or iterative")
        ->check(CLI::IsMember({"auto", "dense", "iterative"}));
    common(sub, false);
  }
  {
    auto* sub = app.add_subcommand("dynamics", "run retrieval dynamics from a stored or corrupted pattern");
    json& p = params["dynamics"];
    const json& d = defaults["dynamics"];
    param<std::string>(sub, p, d, "--graph", "graph", "edge-list file")->required();
    param<std::size_t>(sub, p, d, "--m", "m", "number of stored patterns");
    param<std::uint64_t>(sub, p, d, "--patterns-seed", "patterns_seed", "pattern seed (default: master seed)");
    param<std::size_t>(sub, p, d, "--mu", "mu", "index of the target pattern");
    param<std::string>(sub, p, d, "--start", "start", "pattern or corrupt:RHO");
    param<std::string>(sub, p, d, "--mode", "mode", "parallel or sequential")
        ->check(CLI::IsMember({"parallel", "sequential"}));
    kmax_param(sub, p, d);
    switch_param(sub, p, "--energy-trace", "energy_trace", "record the energy after every step");
    common(sub, false);
  }
  {
    auto* sub = app.add_subcommand("capacity", "estimate the storage capacity by bracketing and bisection");
    json& p = params["capacity"];
    const json& d = defaults["capacity"];
    param<std::string>(sub, p, d, "--graph", "graph", "edge-list file")->required();
    param<double>(sub, p, d, "--rho", "rho", "fraction of corrupted spins");
    param<double>(sub, p, d, "--threshold", "threshold", "required recovery rate");
    param<std::size_t>(sub, p, d, "--trials", "trials", "trials per pattern count");
    kmax_param(sub, p, d);
    param<std::size_t>(sub, p, d, "--max-m", "max_m", "largest pattern count tried, 0 for 4n");
    param<std::size_t>(sub, p, d, "--trials-per-set", "trials_per_set", "trials sharing one pattern draw");
    param<std::string>(sub, p, d, "--flip-set", "flip_set", "fixed corrupted vertices, e.g. 0-49 (overrides --rho)");
    common(sub, true);
  }
  {
    auto* sub = app.add_subcommand("theory", "evaluate the theoretical predictors on a graph");
    json& p = params["theory"];
    const json& d = defaults["theory"];
    param<std::string>(sub, p, d, "--graph", "graph", "edge-list file")->required();
    param<double>(sub, p, d, "--tol", "tol", "relative eigenvalue tolerance");
    param<double>(sub, p, d, "--alpha", "alpha", "capacity prefactor");
    param<double>(sub, p, d, "--m", "m", "number of stored patterns");
    param<double>(sub, p, d, "--rho-start", "rho_start", "initial error fraction of the step predictor");
    param<double>(sub, p, d, "--c1", "c1", "prefactor of the one-step error map");
    param<double>(sub, p, d, "--c2", "c2", "exponent constant of rho_0");
    param<double>(sub, p, d, "--c-steps", "c_steps", "contraction constant of the step predictor");
    param<double>(sub, p, d, "--c-iter", "c_iter", "safety factor of the default step budget");
    param<double>(sub, p, d, "--ratio-factor", "ratio_factor", "required lambda1 / (kappa log n)");
    param<double>(sub, p, d, "--h1-c", "h1_c", "regularity constant");
    param<double>(sub, p, d, "--h2-c", "h2_c", "expansion constant");
    param<std::vector<double>>(sub, p, d, "--rho-grid", "rho_grid", "error fractions for the f table")
        ->delimiter(',');
    common(sub, false);
  }
  {
    auto* sub = app.add_subcommand("verify", "check concentration and subgraph bounds; exit 1 on violations");
    json& p = params["verify"];
    const json& d = defaults["verify"];
    param<std::string>(sub, p, d, "--check", "check", "tail, mgf, degrees or lemma43")
        ->check(CLI::IsMember({"tail", "mgf", "degrees", "lemma43"}));
    param<std::string>(sub, p, d, "--graph", "graph", "edge-list file (or use --n and --p)");
    param<std::size_t>(sub, p, d, "--n", "n", "G(n, p) size");
    param<double>(sub, p, d, "--p", "p", "G(n, p) edge probability");
    param<std::size_t>(sub, p, d, "--samples", "samples", "Monte-Carlo samples (tail, mgf)");
    param<std::size_t>(sub, p, d, "--trials", "trials", "random graphs (degrees)");
    param<std::size_t>(sub, p, d, "--pairs", "pairs", "random vertex-set pairs (lemma43)");
    param<std::size_t>(sub, p, d, "--complement-checks", "complement_checks", "draws checked against the complement");
    param<std::size_t>(sub, p, d, "--grid", "grid", "grid points (tail, mgf)");
    param<double>(sub, p, d, "--z", "z", "interval width in standard errors");
    common(sub, false);
  }
  {
    auto* sub = app.add_subcommand("reproduce", "capacity scaling over a ladder of sizes");
    json& p = params["reproduce"];
    const json& d = defaults["reproduce"];
    param<std::string>(sub, p, d, "--suite", "suite", "complete, gnp or powerlaw")
        ->check(CLI::IsMember({"complete", "gnp", "powerlaw"}));
    param<std::vector<std::size_t>>(sub, p, d, "--sizes", "sizes", "size ladder, at least three")->delimiter(',');
    param<double>(sub, p, d, "--p", "p", "edge probability (gnp)");
    param<double>(sub, p, d, "--c0", "c0", "density constant (gnp)");
    param<double>(sub, p, d, "--beta", "beta", "power-law exponent (powerlaw)");
    param<double>(sub, p, d, "--davg", "davg", "expected average degree (powerlaw)");
    param<double>(sub, p, d, "--mbar", "mbar", "expected maximum degree (powerlaw)");
    param<double>(sub, p, d, "--c-degree", "c_degree", "degree constant (powerlaw)");
    param<double>(sub, p, d, "--c1", "c1", "regularity constant");
    param<double>(sub, p, d, "--c-h2", "c_h2", "expansion constant");
    param<double>(sub, p, d, "--rho", "rho", "fraction of corrupted spins");
    param<double>(sub, p, d, "--threshold", "threshold", "required recovery rate");
    param<std::size_t>(sub, p, d, "--trials", "trials", "trials per pattern count");
    param<std::size_t>(sub, p, d, "--trials-per-set", "trials_per_set", "trials sharing one pattern draw");
    common(sub, true);
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("graphmem");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    return std::nullopt;
  }

  ExperimentConfig c;
  c.command = app.get_subcommands().front()->get_name();
  c.params = params[c.command];
  c.master_seed = seed;
  c.output_path = output;
  c.worker_count = workers;
  c.deterministic_order = deterministic;
  if (format.empty()) {
    c.format = (c.command == "capacity" || c.command == "reproduce") ? OutputFormat::csv : OutputFormat::json;
  } else {
    c.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  }
  try {
    c = resolve(c);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    exit_code = kExitUsage;
    return std::nullopt;
  }
  exit_code = kExitOk;
  return c;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto config = parse_command_line(args, out, err, code);
  if (!config) return code;
  return run(*config, out, err);
}

}  // namespace graphmem::cli
