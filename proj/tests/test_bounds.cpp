#include <doctest.h>

#include <cmath>

#include "graphmem/bounds.hpp"
#include "graphmem/errors.hpp"
#include "graphmem/random.hpp"
#include "oracles.hpp"

using namespace graphmem;

namespace {

Graph single_edge() {
  const std::vector<Edge> e{{0, 1}};
  return Graph::from_edges(2, e);
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(entropy(0.0) == 0.0);
  CHECK(entropy(1.0) == 0.0);
  for (int k = 1; k <= 10000; ++k) {
    const double r = 0.5 * k / 10000.0;
    CHECK(entropy(r) <= -2.0 * r * std::log(r) + 1e-15);
    CHECK(entropy(r) == doctest::Approx(entropy(1.0 - r)).epsilon(1e-12));
    CHECK(entropy(r) == doctest::Approx(oracle::binary_entropy(r)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(entropy(-0.1), InvalidArgument);
  CHECK_THROWS_AS(entropy(1.1), InvalidArgument);
}

TEST_CASE("relative entropy") {
  CHECK(rel_entropy(0.3, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
  const long double a = 0.2L, p = 0.1L;
  const long double want = a * std::log(a / p) + (1 - a) * std::log((1 - a) / (1 - p));
  CHECK(rel_entropy(0.2, 0.1) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
  CHECK(rel_entropy(0.2, 0.1) == doctest::Approx(0.0444040).epsilon(1e-5));
  for (int i = 1; i < 40; ++i) {
    for (int j = 1; j < 40; ++j) {
      const double x = i / 40.0, q = j / 40.0;
      if (i != j) CHECK(rel_entropy(x, q) > 0.0);
      CHECK(rel_entropy(x, q) >= 2.0 * (x - q) * (x - q) - 1e-15);
    }
  }
  CHECK_THROWS_AS(rel_entropy(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(rel_entropy(0.5, 1.0), InvalidArgument);
}

TEST_CASE("tail of a single edge") {
  const Graph g = single_edge();
  const SpectralSummary s = spectrum_summary(g);
  const std::vector<double> ys{0.5};
  const TailReport r = quadratic_form_tail(g, s, ys, 0, 1);
  CHECK(r.exact);
  CHECK(r.empirical[0] == 0.5);
  CHECK(r.analytic[0] == doctest::Approx(std::exp(-1.0 / 12.0)));
  CHECK(r.violations == 0);
}

TEST_CASE("exhaustive tail of K4 matches enumeration") {
  const Graph g = gen_complete(4);
  const SpectralSummary s = spectrum_summary(g);
  std::vector<double> ys;
  for (int k = -2; k <= 12; ++k) ys.push_back(0.5 * k);
  const TailReport r = quadratic_form_tail(g, s, ys, 0, 1);
  const auto values = oracle::enumerate_quadratic_form(g);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    std::size_t above = 0;
    for (long long v : values) above += static_cast<std::size_t>(v > ys[k]);
    CHECK(r.empirical[k] == static_cast<double>(above) / values.size());
    const double bound = ys[k] > 0 ? std::exp(-ys[k] * ys[k] / (2 * (6 + 3 * ys[k]))) : 1.0;
    CHECK(r.analytic[k] == doctest::Approx(bound));
    CHECK(r.empirical[k] <= r.analytic[k]);
  }
  CHECK(r.violations == 0);
}

TEST_CASE("Monte-Carlo tail on G(200, 0.1)") {
  const Graph g = gen_erdos_renyi(200, 0.1, 3);
  const SpectralSummary s = spectrum_summary(g);
  const double root = std::sqrt(static_cast<double>(g.num_edges()));
  const std::vector<double> ys{0.5 * root, root, 2 * root, 4 * root};
  const TailReport r = quadratic_form_tail(g, s, ys, 100000, 7);
  CHECK_FALSE(r.exact);
  CHECK(r.samples == 100000);
  CHECK(r.violations == 0);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    CHECK(r.empirical[k] >= 0.0);
    CHECK(r.empirical[k] <= 1.0);
    CHECK(r.ci_lo[k] <= r.empirical[k]);
    CHECK(r.empirical[k] <= r.ci_hi[k]);
    CHECK(r.analytic[k] > 0.0);
    CHECK(r.analytic[k] <= 1.0);
  }
  const TailReport again = quadratic_form_tail(g, s, ys, 100000, 7, 3);
  CHECK(again.empirical == r.empirical);
  CHECK_THROWS_AS(quadratic_form_tail(g, s, ys, 999, 7), InvalidArgument);
}

TEST_CASE("moment generating function at t = 0") {
  const Graph g = gen_erdos_renyi(40, 0.2, 1);
  const SpectralSummary s = spectrum_summary(g);
  const std::vector<double> ts{0.0};
  const MgfReport r = mgf_check(g, s, ts, 2000, 2);
  CHECK(r.empirical[0] == doctest::Approx(1.0));
  CHECK(r.analytic[0] == 1.0);
  CHECK(r.violations == 0);
}

TEST_CASE("moment generating function of a single edge") {
  const Graph g = single_edge();
  const SpectralSummary s = spectrum_summary(g);
  const std::vector<double> ts{0.5};
  const MgfReport r = mgf_check(g, s, ts, 0, 1);
  CHECK(r.exact);
  CHECK(r.empirical[0] == doctest::Approx(std::cosh(0.5)));
  CHECK(r.analytic[0] == doctest::Approx(std::exp(0.25)));
  CHECK(r.violations == 0);
}

TEST_CASE("exhaustive moment generating function of K6") {
  const Graph g = gen_complete(6);
  const SpectralSummary s = spectrum_summary(g);
  std::vector<double> ts;
  for (int k = 0; k < 10; ++k) ts.push_back(0.1 * k / s.lambda1);
  const MgfReport r = mgf_check(g, s, ts, 0, 1);
  const auto values = oracle::enumerate_quadratic_form(g);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    double mean = 0.0;
    for (long long v : values) mean += std::exp(ts[k] * v);
    mean /= values.size();
    CHECK(r.empirical[k] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(r.analytic[k] == doctest::Approx(std::exp(15 * ts[k] * ts[k] / (2 * (1 - 5 * ts[k])))));
  }
  CHECK(r.violations == 0);
  const std::vector<double> bad{0.2};
  CHECK_THROWS_AS(mgf_check(g, s, bad, 0, 1), InvalidArgument);
  const std::vector<double> negative{-0.01};
  CHECK_THROWS_AS(mgf_check(g, s, negative, 0, 1), InvalidArgument);
}

TEST_CASE("Monte-Carlo moment generating function uses batch means") {
  const Graph g = gen_erdos_renyi(100, 0.1, 4);
  const SpectralSummary s = spectrum_summary(g);
  std::vector<double> ts;
  for (int k = 0; k < 5; ++k) ts.push_back(0.15 * k / s.lambda1);
  const MgfReport r = mgf_check(g, s, ts, 20000, 5);
  CHECK(r.batches == kMgfBatches);
  CHECK(r.samples == 20000);
  CHECK(r.violations == 0);
  for (std::size_t k = 0; k < ts.size(); ++k) CHECK(r.ci_lo[k] <= r.ci_hi[k]);
}

TEST_CASE("degree tails of G(2000, 0.1)") {
  const DegreeTailReport r = degree_tail_experiment(2000, 0.1, 200, 9, 50);
  CHECK(r.epsilon == doctest::Approx(2 * std::sqrt(std::log(2000.0) / 200.0)));
  CHECK(r.epsilon_valid);
  const double a = (1 + r.epsilon) * 0.1;
  CHECK(r.bound_max == doctest::Approx(2000 * std::exp(-2000 * (a * std::log(a / 0.1) + (1 - a) * std::log((1 - a) / 0.9)))));
  const double q = std::min(r.bound_max, 1.0);
  CHECK(r.freq_max <= q + 3 * std::sqrt(q * (1 - q) / 200));
  CHECK(r.complement_checks == 50);
  CHECK(r.complement_mismatches == 0);
  CHECK(r.violations == 0);
}

TEST_CASE("degree tails at p = 1") {
  const DegreeTailReport r = degree_tail_experiment(100, 1.0, 5, 1, 5);
  CHECK(r.max_exceed == 0);
  CHECK(r.freq_max == 0.0);
  CHECK(r.bound_max == 0.0);
  CHECK(r.violations == 0);
}

TEST_CASE("degree tail edge cases") {
  const DegreeTailReport r = degree_tail_experiment(50, 0.05, 10, 1);
  CHECK_FALSE(r.epsilon_valid);
  CHECK_THROWS_AS(degree_tail_experiment(50, 0.0, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(degree_tail_experiment(50, 1.5, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(degree_tail_experiment(50, 0.5, 0, 1), InvalidArgument);
}

TEST_CASE("exhaustive enumeration never violates either bound") {
  Rng rng(123);
  for (int instance = 0; instance < 20; ++instance) {
    const std::size_t n = 2 + uniform_below(rng, 11);
    const Graph g = gen_erdos_renyi(n, 0.2 + 0.7 * uniform01(rng), rng());
    if (g.num_edges() == 0) continue;
    const SpectralSummary s = spectrum_summary(g);
    std::vector<double> ys, ts;
    for (int k = 1; k <= 20; ++k) {
      ys.push_back(static_cast<double>(g.num_edges()) * k / 20.0);
      ts.push_back(0.95 * (k - 1) / (20.0 * s.lambda1));
    }
    CHECK(quadratic_form_tail(g, s, ys, 0, 1).violations == 0);
    CHECK(mgf_check(g, s, ts, 0, 1).violations == 0);
  }
}
