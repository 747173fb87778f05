#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "graphmem/errors.hpp"
#include "graphmem/graph.hpp"
#include "oracles.hpp"

using namespace graphmem;

namespace {

Graph path3() {
  const std::vector<Edge> e{{0, 1}, {1, 2}};
  return Graph::from_edges(3, e);
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

}  // namespace

TEST_CASE("complete graphs") {
  const Graph k3 = gen_complete(3);
  CHECK(k3.num_edges() == 3);
  for (VertexId v = 0; v < 3; ++v) CHECK(k3.degree(v) == 2);

  CHECK(gen_complete(100).num_edges() == 4950);

  const Graph k2 = gen_complete(2);
  CHECK(k2.num_edges() == 1);
  CHECK(k2.degree(0) == 1);
  CHECK(k2.degree(1) == 1);

  CHECK_THROWS_AS(gen_complete(1), InvalidArgument);
  CHECK_THROWS_AS(gen_complete(0), InvalidArgument);
}

TEST_CASE("from_edges rejects non-simple input") {
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), InvalidArgument);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::from_edges(3, dup), InvalidArgument);
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, range), InvalidArgument);
}

TEST_CASE("erdos renyi extremes") {
  const Graph empty = gen_erdos_renyi(50, 0.0, 7);
  CHECK(empty.num_vertices() == 50);
  CHECK(empty.num_edges() == 0);
  CHECK(gen_erdos_renyi(40, 1.0, 123) == gen_complete(40));
  CHECK_THROWS_AS(gen_erdos_renyi(10, -0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 1.5, 1), InvalidArgument);
}

TEST_CASE("erdos renyi edge count within three standard deviations") {
  const double pairs = 2000.0 * 1999.0 / 2.0;
  const double mu = 0.05 * pairs;
  CHECK(mu == doctest::Approx(99950.0));
  const double sigma = std::sqrt(pairs * 0.05 * 0.95);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Graph g = gen_erdos_renyi(2000, 0.05, seed);
    CHECK(std::abs(static_cast<double>(g.num_edges()) - mu) <= 3.0 * sigma);
    CHECK(oracle::check_graph(g).empty());
  }
}

TEST_CASE("erdos renyi skip sampler above the dense limit") {
  const std::size_t n = 20000;
  const double p = 0.0005;
  const double pairs = n * (n - 1.0) / 2.0;
  const Graph g = gen_erdos_renyi(n, p, 99);
  CHECK(oracle::check_graph(g).empty());
  CHECK(std::abs(static_cast<double>(g.num_edges()) - p * pairs) <= 4.0 * std::sqrt(pairs * p * (1 - p)));
}

TEST_CASE("erdos renyi is reproducible under a seed") {
  CHECK(gen_erdos_renyi(300, 0.2, 42) == gen_erdos_renyi(300, 0.2, 42));
  CHECK_FALSE(gen_erdos_renyi(300, 0.2, 42) == gen_erdos_renyi(300, 0.2, 43));
  CHECK(gen_erdos_renyi(20000, 0.0002, 5) == gen_erdos_renyi(20000, 0.0002, 5));
}

TEST_CASE("power-law weights match the closed forms") {
  const std::size_t n = 10000;
  const double beta = 3.5, d = 20.0, m_bar = 400.0;
  const WeightSequence w = powerlaw_weights(n, beta, d, m_bar);

  const double c = (beta - 2.0) / (beta - 1.0) * d * std::pow(static_cast<double>(n), 1.0 / (beta - 1.0));
  const double i0_real = n * std::pow(d * (beta - 2.0) / (m_bar * (beta - 1.0)), beta - 1.0);
  const auto i0 = static_cast<std::uint64_t>(std::max(1.0, std::round(i0_real)));
  CHECK(w.c == doctest::Approx(c).epsilon(1e-12));
  CHECK(w.i0 == i0);
  CHECK(w.beta == beta);
  REQUIRE(w.weights.size() == n);
  for (std::size_t k : {std::size_t{0}, std::size_t{17}, n - 1}) {
    CHECK(w.weights[k] == doctest::Approx(c * std::pow(static_cast<double>(i0 + k), -1.0 / (beta - 1.0))));
  }
  const double ratio = w.weights.front() / m_bar;
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
  CHECK(std::is_sorted(w.weights.begin(), w.weights.end(), std::greater<>()));
  const double sum = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
  CHECK(w.rho_norm == doctest::Approx(1.0 / sum));
  CHECK(w.weights.front() * w.weights.front() < sum);
}

TEST_CASE("power-law weights approach their large-n limits") {
  const WeightSequence w = powerlaw_weights(100000, 3.5, 20.0, 400.0);
  CHECK(w.weights.back() == doctest::Approx(12.0).epsilon(0.02));
  const double avg = std::accumulate(w.weights.begin(), w.weights.end(), 0.0) / 100000.0;
  CHECK(std::abs(avg / 20.0 - 1.0) <= 0.05);
  CHECK(w.expected_average_degree() == doctest::Approx(avg));
}

TEST_CASE("power-law weight errors") {
  CHECK_THROWS_AS(powerlaw_weights(1000, 2.0, 10.0, 50.0), InvalidArgument);
  CHECK_THROWS_AS(powerlaw_weights(1000, 1.5, 10.0, 50.0), InvalidArgument);
  CHECK_THROWS_AS(powerlaw_weights(1000, 3.0, 60.0, 50.0), InvalidArgument);
  CHECK_THROWS_AS(powerlaw_weights(100, 3.5, 10.0, 90.0), InfeasibleWeights);
  CHECK_THROWS_AS(WeightSequence::from_weights({10.0, 1.0, 1.0}), InfeasibleWeights);
  CHECK_THROWS_AS(WeightSequence::from_weights({1.0, -1.0}), InvalidArgument);
}

TEST_CASE("chung-lu with uniform weights matches G(n, p) in distribution") {
  const std::size_t n = 200;
  const double p = 0.1;
  const WeightSequence w = WeightSequence::from_weights(std::vector<double>(n, p * n));
  std::vector<double> cl, er;
  for (std::uint64_t s = 0; s < 100; ++s) {
    cl.push_back(static_cast<double>(gen_chung_lu(w, 1000 + s).num_edges()));
    er.push_back(static_cast<double>(gen_erdos_renyi(n, p, 5000 + s).num_edges()));
  }
  const double t = (mean(cl) - mean(er)) / std::sqrt(variance(cl) / 100.0 + variance(er) / 100.0);
  CHECK(std::abs(t) < 2.576);
}

TEST_CASE("chung-lu expected degrees with the self-loop correction") {
  const WeightSequence w = powerlaw_weights(500, 3.5, 10.0, 40.0);
  const std::size_t seeds = 200;
  std::vector<double> sums(500, 0.0);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const Graph g = gen_chung_lu(w, s);
    for (VertexId v = 0; v < 500; ++v) sums[v] += g.degree(v);
  }
  for (VertexId v : {0u, 3u, 50u, 250u, 499u}) {
    double var = 0.0;
    for (VertexId u = 0; u < 500; ++u) {
      if (u == v) continue;
      const double q = w.rho_norm * w.weights[u] * w.weights[v];
      var += q * (1 - q);
    }
    const double expected = w.weights[v] * (1.0 - w.rho_norm * w.weights[v]);
    CHECK(std::abs(sums[v] / seeds - expected) <= 3.0 * std::sqrt(var / seeds));
  }
}

TEST_CASE("chung-lu with a single positive weight is empty") {
  WeightSequence w;
  w.weights = {5.0, 0.0, 0.0, 0.0};
  w.rho_norm = 0.2;
  const Graph g = gen_chung_lu(w, 1);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("chung-lu skip-and-thin sampler above the dense limit") {
  const WeightSequence w = powerlaw_weights(20000, 3.5, 8.0, 60.0);
  const double s = w.weight_sum();
  double sq = 0.0;
  for (double x : w.weights) sq += x * x;
  const double expected = (s * s - sq) / (2.0 * s);
  const Graph g = gen_chung_lu(w, 17);
  CHECK(oracle::check_graph(g).empty());
  CHECK(std::abs(static_cast<double>(g.num_edges()) - expected) <= 4.0 * std::sqrt(expected));
  CHECK(gen_chung_lu(w, 17) == g);
}

TEST_CASE("chung-lu second-order average degree ratio") {
  const double beta = 3.5;
  const Graph g = gen_chung_lu(powerlaw_weights(100000, beta, 10.0, 300.0), 11);
  const DegreeStats d = degree_stats(g);
  const double target = (beta - 2) * (beta - 2) / ((beta - 1) * (beta - 3));
  CHECK(target == doctest::Approx(1.8));
  CHECK(std::abs(d.d_tilde / d.d_avg / target - 1.0) <= 0.25);
}

TEST_CASE("two cliques") {
  const Graph g = gen_two_cliques(2, 4, false);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(2, 3));

  const Graph h = gen_two_cliques(5, 12, false);
  CHECK(degree_stats(h).delta == 4);
  CHECK(degree_stats(h).m == 6);

  const Graph b = gen_two_cliques(5, 12, true);
  std::size_t crossing = 0;
  for (const auto& [i, j] : b.edge_list()) crossing += static_cast<std::size_t>((i < 5) != (j < 5));
  CHECK(crossing == 1);
  CHECK(b.num_edges() == h.num_edges() + 1);

  CHECK_THROWS_AS(gen_two_cliques(1, 10, false), InvalidArgument);
  CHECK_THROWS_AS(gen_two_cliques(9, 10, false), InvalidArgument);
}

TEST_CASE("degree statistics") {
  const DegreeStats k = degree_stats(gen_complete(7));
  CHECK(k.delta == 6);
  CHECK(k.m == 6);
  CHECK(k.d_avg == 6.0);
  CHECK(k.d_tilde == 6.0);
  CHECK(k.edge_count == 21);

  const DegreeStats p = degree_stats(path3());
  CHECK(p.delta == 1);
  CHECK(p.m == 2);
  CHECK(p.d_avg == doctest::Approx(4.0 / 3.0));
  CHECK(p.d_tilde == doctest::Approx(1.5));
  CHECK(p.edge_count == 2);
}

TEST_CASE("degree statistics ordering holds on random graphs") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = gen_erdos_renyi(60, 0.05 + 0.04 * s, s);
    const DegreeStats d = degree_stats(g);
    CHECK(d.delta <= d.d_avg + 1e-12);
    CHECK(d.d_avg <= d.d_tilde + 1e-12);
    CHECK(d.d_tilde <= d.m + 1e-12);
    CHECK(d.m <= 59);
    const double total = std::accumulate(g.degrees().begin(), g.degrees().end(), 0.0);
    CHECK(d.edge_count * 2 == static_cast<std::size_t>(total));
  }
}

TEST_CASE("every generator produces a valid simple graph") {
  std::vector<Graph> graphs{gen_complete(30), gen_erdos_renyi(120, 0.1, 1), gen_two_cliques(4, 20, true),
                            gen_chung_lu(powerlaw_weights(400, 3.5, 8.0, 40.0), 2), complement(gen_erdos_renyi(50, 0.3, 3))};
  for (const Graph& g : graphs) {
    CHECK(oracle::check_graph(g).empty());
    CHECK(g.validate().empty());
  }
}

TEST_CASE("complement") {
  const Graph g = gen_erdos_renyi(40, 0.3, 8);
  const Graph c = complement(g);
  CHECK(g.num_edges() + c.num_edges() == 40 * 39 / 2);
  CHECK(complement(c) == g);
  CHECK(complement(gen_complete(9)).num_edges() == 0);
  CHECK(degree_stats(g).delta == 39 - degree_stats(c).m);
}

TEST_CASE("edge list round trip") {
  const Graph k5 = gen_complete(5);
  std::stringstream ss;
  write_edge_list(k5, ss);
  CHECK(read_edge_list(ss) == k5);

  const auto path = std::filesystem::temp_directory_path() / "graphmem_roundtrip.txt";
  const Graph g = gen_erdos_renyi(80, 0.1, 4);
  save_edge_list(g, path);
  CHECK(load_edge_list(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("edge list with only a header") {
  std::istringstream in("n 6\n");
  const Graph g = read_edge_list(in);
  CHECK(g.num_vertices() == 6);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("edge list parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("n 5\n0 1\n3 3\n") == 3);
  CHECK(line_of("n 5\n0 9\n") == 2);
  CHECK(line_of("n 5\n0 1\n1 2\n0 1\n") == 4);
  CHECK(line_of("n 5\n0 x\n") == 2);
  CHECK(line_of("n 5\n2 1\n") == 2);
  CHECK(line_of("") == 1);
  CHECK(line_of("5\n") == 1);
  CHECK(line_of("n 5\n# comment\n\n0 1\n") == 0);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graphmem.txt"), std::ios_base::failure);
}
