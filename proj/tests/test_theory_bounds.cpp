#include <doctest.h>

#include <cmath>

#include "rashomon/error.hpp"
#include "rashomon/theory_bounds.hpp"
#include "support.hpp"

using namespace rashomon;

TEST_SUITE("theory_bounds") {

TEST_CASE("noisy risk and variance examples") {
  CHECK(noisy_risk(0.3, 0.0) == 0.3);
  CHECK(noisy_risk(0.5, 0.37) == doctest::Approx(0.5));
  CHECK(noisy_risk(0.2, 0.25) == doctest::Approx(0.35));
  CHECK(loss_variance_under_noise(0.2, 0.0) == doctest::Approx(0.16));
  CHECK(loss_variance_under_noise(0.2, 0.1) == doctest::Approx(0.1924));
  CHECK(loss_variance_under_noise(0.2, 0.2) == doctest::Approx(0.2176));
}

TEST_CASE("noisy risk is affine, order preserving, fixed at one half") {
  for (double rho : {0.0, 0.1, 0.3, 0.49}) {
    double prev = -1;
    for (double L = 0; L <= 1.0; L += 0.05) {
      const double v = noisy_risk(L, rho);
      CHECK(v > prev);
      prev = v;
      CHECK(v - 0.5 == doctest::Approx((1 - 2 * rho) * (L - 0.5)));
    }
  }
}

TEST_CASE("variance strictly increases in rho unless L is one half") {
  for (double L : {0.0, 0.1, 0.3, 0.45, 0.5, 0.7}) {
    bool increasing = true;
    double prev = loss_variance_under_noise(L, 0.0);
    for (double rho = 0.01; rho < 0.5; rho += 0.01) {
      const double v = loss_variance_under_noise(L, rho);
      increasing = increasing && v > prev;
      prev = v;
    }
    CHECK(increasing == (L != 0.5));
  }
}

TEST_CASE("normal cdf and margin noise risk") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(2.0) == doctest::Approx(0.977249868).epsilon(1e-9));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.158655254).epsilon(1e-9));
  const Vector w = Vector::Constant(1, 1.0), mu = Vector::Constant(1, 2.0);
  CHECK(margin_noise_risk(w, 0.0, mu, 1.0) == doctest::Approx(0.5 * (0.5 + 1 - 0.977249868)).epsilon(1e-8));
  CHECK(margin_noise_risk(w, 0.0, mu, 1e-9) == doctest::Approx(0.5).epsilon(1e-6));
  double prev = 1.0;
  for (double k = 0.1; k <= 1.0; k += 0.1) {
    const double r = margin_noise_risk(w, -0.3, mu, k);
    CHECK(r < prev);
    prev = r;
  }
  CHECK_THROWS_AS(margin_noise_risk(w, 0.0, mu, 0.0), Error);
}

TEST_CASE("margin noise risk matches direct simulation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    testsupport::Gen g(seed, 50);
    Vector w(2), mu(2);
    w << g.normal(), g.normal();
    mu << g.normal() * 1.5, g.normal() * 1.5;
    const double b = 0.5 * g.normal();
    const double k = g.uniform(0.1, 1.0);
    const double p = margin_noise_risk(w, b, mu, k);
    const int draws = 100000;
    int wrong = 0;
    for (int t = 0; t < draws; ++t) {
      const bool pos = g.coin();
      Vector x(2);
      x << g.normal(), g.normal();
      if (pos) x += k * mu;
      const bool pred = x.dot(w) + b >= 0;
      wrong += pred != pos;
    }
    const double est = static_cast<double>(wrong) / draws;
    CHECK(std::abs(est - p) <= 3 * std::sqrt(p * (1 - p) / draws) + 1e-12);
  }
}

TEST_CASE("bernstein bound example and monotonicity") {
  BoundInputs b{100, 10, 0.05, 0.25, 1.0};
  const double l = std::log(200.0);
  CHECK(bernstein_generalization_bound(b) == doctest::Approx(2.0 / 300 * l + std::sqrt(0.005 * l)));
  CHECK(bernstein_generalization_bound(b) == doctest::Approx(0.1981).epsilon(1e-3));
  b.sigma_sq = 0.0;
  CHECK(bernstein_generalization_bound(b) == doctest::Approx(2.0 / 300 * l));

  for (double s : {0.0, 0.05, 0.2})
    for (double r : {1.0, 10.0, 1000.0})
      for (std::size_t n : {50, 500})
        for (double delta : {0.01, 0.1}) {
          const BoundInputs base{n, r, delta, s, 1.0};
          const double v = bernstein_generalization_bound(base);
          CHECK(bernstein_generalization_bound({n, r, delta, s + 0.01, 1.0}) > v);
          CHECK(bernstein_generalization_bound({n, r * 2, delta, s, 1.0}) > v);
          CHECK(bernstein_generalization_bound({n + 10, r, delta, s, 1.0}) < v);
          CHECK(bernstein_generalization_bound({n, r, delta * 1.5, s, 1.0}) < v);
        }
  CHECK_THROWS_AS(bernstein_generalization_bound({100, 10, 1.5, 0.1, 1.0}), Error);
}

TEST_CASE("least-squares bound sits where the tail equals delta") {
  for (double s : {0.01, 0.2, 1.0}) {
    const BoundInputs b{200, 50, 0.05, s, 4.0};
    const double eps = least_squares_generalization_bound(b);
    CHECK(least_squares_tail(b, eps) == doctest::Approx(0.05).epsilon(1e-9));
  }
}

TEST_CASE("bernstein against hoeffding") {
  CHECK(bernstein_beats_hoeffding(1.0 / 12, 0, 1));
  CHECK_FALSE(bernstein_beats_hoeffding(0.25, 0, 1));
  for (double eps = 0.1; eps < 0.95; eps += 0.1)
    CHECK(bernstein_exponent(100, eps, 0.02, 0, 1) <= hoeffding_exponent(100, eps, 0, 1));
  CHECK(exponent_dominance(1.0 / 12, 0, 1).dominates);
  CHECK(exponent_dominance(0.02, -1, 3).dominates);
  const auto bad = exponent_dominance(0.25, 0, 1);
  CHECK_FALSE(bad.dominates);
  REQUIRE(bad.counterexample.has_value());
  CHECK(bernstein_exponent(10, *bad.counterexample, 0.25, 0, 1) > hoeffding_exponent(10, *bad.counterexample, 0, 1));
}

TEST_CASE("erm in true set condition") {
  const auto c = erm_in_true_set_condition(0.02, 0.03, 0.05, 1000, 0.01);
  CHECK(c.holds);
  CHECK(c.probability_floor == doctest::Approx(1 - std::exp(-1.8) - 0.01));
  CHECK_FALSE(erm_in_true_set_condition(0.03, 0.03, 0.05, 1000, 0.0).holds);
  CHECK(erm_in_true_set_condition(0.0, 0.0, 0.05, 100000, 0.0).probability_floor <= 0.0);
}

TEST_CASE("monte carlo variance check") {
  testsupport::Gen g(1, 51);
  const std::size_t n = 100;
  const Dataset d(g.binary_matrix(n, 2), g.labels(n));
  Labels pred = d.labels();
  for (std::size_t i = 0; i < 20; ++i) pred[i] ^= 1;  // clean risk 0.2
  VarianceCheckInput in;
  in.kind = NoiseKind::kUniformFlip;
  in.data = d;
  in.model = Pattern(pred);
  in.levels = {0.0, 0.1, 0.2};
  in.draws = 10000;
  in.seed = 3;
  const auto r = monte_carlo_variance_check(in);
  CHECK(r.passed);
  const std::vector<double> expect{0.16, 0.1924, 0.2176};
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.empirical[i] - expect[i]) < 0.01);

  in.levels = {0.1};
  CHECK_THROWS_AS(monte_carlo_variance_check(in), Error);

  VarianceCheckInput m;
  m.kind = NoiseKind::kMarginShift;
  GaussianPairSpec s;
  s.dims = 2;
  s.mu_neg = {0, 0};
  s.mu_pos = {2, 1};
  s.n_per_class = 200;
  m.gaussian = s;
  m.model = LinearModel{(Vector(2) << 1.0, 0.5).finished(), -1.0};
  m.levels = {1.0, 0.5};
  m.draws = 2000;
  m.seed = 4;
  const auto mr = monte_carlo_variance_check(m);
  CHECK(mr.empirical[1] > mr.empirical[0]);
  CHECK(mr.passed);

  m.model = Pattern(Labels(400, 0));
  CHECK_THROWS_AS(monte_carlo_variance_check(m), Error);
}

}  // TEST_SUITE
