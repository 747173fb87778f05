#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphmem/capacity.hpp"

namespace graphmem::cli {

inline constexpr int kSchemaVersion = 1;

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolations = 1,  ///< a verification found bound or invariant violations
  kExitUsage = 2,       ///< invalid command line or configuration
  kExitIo = 3,          ///< file could not be read or written
  kExitParse = 4,       ///< input file malformed
  kExitSolver = 5,      ///< eigensolver failed to converge
  kExitInternal = 6,    ///< any other failure
};

enum class OutputFormat { csv, json };

/// Fully resolved description of one run. `params` holds the command's own
/// parameters with every default filled in.
struct ExperimentConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  unsigned worker_count = 0;  ///< 0 selects the hardware concurrency
  bool deterministic_order = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Configuration problem tied to one field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Default parameters of a command, or ConfigError for an unknown command.
nlohmann::json default_params(const std::string& command);

/// Copy of `config` whose params have every default filled in. Throws
/// ConfigError on unknown keys or mistyped values.
ExperimentConfig resolve(const ExperimentConfig& config);

/// Recovers the configuration from the "# config: " line of a CSV report.
ExperimentConfig config_from_csv_header(std::istream& in);

/// CSV text with the comment header removed.
std::string csv_body(const std::string& csv);

/// Validates and executes a configuration, writing reports to `out` unless
/// config.output_path names a file. Returns an ExitCode.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses a command line into a configuration. Prints help or errors to the
/// given streams and returns nullopt with `exit_code` set when no run should happen.
std::optional<ExperimentConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out,
                                                   std::ostream& err, int& exit_code);

/// parse_command_line followed by run. args[0] is the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Scaling-law reproduction
// ---------------------------------------------------------------------------

enum class Suite { complete, gnp, powerlaw };

struct ReproduceOptions {
  Suite suite = Suite::complete;
  std::vector<std::size_t> sizes{256, 512, 1024};
  double p = 0.3;         ///< gnp edge probability
  double c0 = 1.0;        ///< gnp density constant in p >= c0 (log n)^2 / n
  double beta = 3.5;      ///< powerlaw exponent
  double d_avg = 30.0;    ///< powerlaw expected average degree
  double m_bar = 100.0;   ///< powerlaw expected maximum degree
  double c_degree = 0.1;  ///< powerlaw constant in d > c sqrt(m_bar) (log n)^{3/2}
  double c1 = 0.5;        ///< regularity constant reported per row
  double c_h2 = 0.1;      ///< expansion constant reported per row
  double rho = 0.05;
  double threshold = 0.95;
  std::size_t trials = 200;
  std::size_t trials_per_pattern_set = 10;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct ReproduceRow {
  std::size_t n = 0;
  SpectralSummary spectrum;
  DegreeStats degrees;
  ConditionReport h1;
  ConditionReport h2;
  CapacityPrediction theory;
  std::size_t k_max = 0;
  std::size_t m_hat = 0;
  double mean_steps = 0.0;  ///< mean recovery steps at m_hat
  double predictor = 0.0;   ///< n/log n, p n/log n or d^2/(m_bar log n)
  double ratio = 0.0;       ///< m_hat / predictor
};

struct ReproduceSummary {
  std::vector<ReproduceRow> rows;
  double ratio_spread = 0.0;  ///< max ratio / min ratio over rows with m_hat > 0
  double slope = 0.0;         ///< least-squares slope of log m_hat against log predictor
};

/// Throws InvalidArgument when the suite's hypotheses cannot hold, e.g. beta <= 3.
void check_suite(const ReproduceOptions& opt);

/// Generate, analyse and capacity-search each size of the ladder (>= 3 sizes).
ReproduceSummary reproduce_corollaries(const ReproduceOptions& opt);

Suite parse_suite(const std::string& name);
std::string_view to_string(Suite s);

}  // namespace graphmem::cli
