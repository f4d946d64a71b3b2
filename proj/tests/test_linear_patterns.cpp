#include <doctest.h>

#include <algorithm>

#include "rashomon/error.hpp"
#include "rashomon/linear_patterns.hpp"
#include "rashomon/reference.hpp"
#include "rashomon/rset_metrics.hpp"
#include "support.hpp"

using namespace rashomon;

namespace {

Dataset line(std::vector<double> xs, Labels y) {
  Matrix x(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Eigen::Index>(i), 0) = xs[i];
  return Dataset(x, std::move(y));
}

Dataset appendix_example() { return line({1, 2, 3, 4}, Labels{0, 0, 1, 1}); }

}  // namespace

TEST_SUITE("linear_patterns") {

TEST_CASE("achievability examples") {
  const Dataset d = appendix_example();
  CHECK(achievable(d.features(), Labels{0, 0, 1, 1}));
  CHECK_FALSE(achievable(d.features(), Labels{0, 1, 0, 1}));
  CHECK(achievable(d.features(), Labels{1, 1, 1, 1}));
  CHECK(achievable(d.features(), Labels{0, 0, 0, 0}));
  const auto w = separating_model(d.features(), Labels{1, 1, 0, 0});
  REQUIRE(w.has_value());
  CHECK(w->predict(d.features()) == Labels{1, 1, 0, 0});
}

TEST_CASE("one-dimensional achievability equals the threshold rules") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    testsupport::Gen g(seed, 20);
    const std::size_t n = g.size(2, 10);
    std::vector<double> xs(n);
    for (auto& v : xs) v = g.uniform(-3, 3);
    const auto thresholds = testsupport::threshold_patterns(xs);
    Matrix x(static_cast<Eigen::Index>(n), 1);
    for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i), 0) = xs[i];
    std::size_t count = 0;
    for (std::uint64_t ones = 0; ones < (std::uint64_t{1} << n); ++ones) {
      const Labels y = testsupport::bits_to_labels(ones, n);
      const bool expect = thresholds.count(Pattern(y).to_string()) > 0;
      CHECK(achievable(x, y) == expect);
      count += expect;
    }
    CHECK(count == 2 * n);
  }
}

TEST_CASE("achievability equals the Radon-partition criterion in 2 and 3 dimensions") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    testsupport::Gen g(seed, 21);
    const std::size_t m = g.size(2, 3);
    const std::size_t n = g.size(m + 2, 9);
    const Matrix x = g.gaussian_matrix(n, m);
    const testsupport::RadonOracle radon(x);
    REQUIRE_FALSE(radon.degenerate());
    std::size_t separable = 0;
    for (std::uint64_t ones = 0; ones < (std::uint64_t{1} << n); ++ones) {
      const Labels y = testsupport::bits_to_labels(ones, n);
      const bool expect = radon.separable(ones);
      CHECK(achievable(x, y) == expect);
      CHECK(lp_separating_model(x, y).has_value() == expect);
      separable += expect;
    }
    CHECK(BigInt(separable) == cover_pattern_count(n, m));
  }
}

TEST_CASE("cover count examples") {
  CHECK(cover_pattern_count(4, 2) == 14);
  CHECK(cover_pattern_count(3, 1) == 6);
  CHECK(cover_pattern_count(5, 4) == 32);
  CHECK(cover_pattern_count(5, 9) == 32);
  CHECK(cover_pattern_count(4, 2, true) == 8);
}

TEST_CASE("appendix example") {
  const auto r = branch_and_bound_patterns(appendix_example(), 0.25);
  CHECK(testsupport::as_strings(r.patterns) == std::set<std::string>{"0001", "0011", "0111"});
  CHECK(r.discard.fixed_samples == std::vector<std::size_t>{0, 3});
  CHECK(r.discard.free_samples == std::vector<std::size_t>{1, 2});
  CHECK(r.denominator == 8);
  CHECK(r.pattern_ratio == BigRational(3, 8));
}

TEST_CASE("discard pass examples") {
  const Dataset d = appendix_example();
  const auto erm = linear_erm(d);
  CHECK(erm.mistakes == 0);
  const auto tight = discard_points(d, 0.0, erm);
  CHECK(std::find(tight.fixed_samples.begin(), tight.fixed_samples.end(), 0) != tight.fixed_samples.end());
  const auto loose = discard_points(d, 1.0, erm);
  CHECK(loose.fixed_samples.empty());
  CHECK(loose.free_samples.size() == 4);
}

TEST_CASE("theta zero on separable data returns the label pattern") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    testsupport::Gen g(seed, 22);
    const Dataset d = g.gaussian_dataset(g.size(4, 12), 2, 0.0);
    const auto r = branch_and_bound_patterns(d, 0.0);
    REQUIRE(r.patterns.size() == 1);
    CHECK(r.patterns[0].to_labels() == d.labels());
  }
}

TEST_CASE("sample ordering cycles over prediction categories") {
  Matrix x(3, 1);
  x << 0.5, 0.1, -0.3;
  const Dataset d(x, Labels{1, 1, 1});
  const LinearModel model{Eigen::VectorXd::Constant(1, 1.0), 0.0};
  // TP at 0.5 and 0.1, FN at 0.3.
  CHECK(order_samples({0, 1, 2}, model, d) == std::vector<std::size_t>{1, 2, 0});

  Matrix y(4, 1);
  y << 1.0, 2.0, -1.0, -2.0;
  const Dataset e(y, Labels{1, 0, 0, 1});
  // TP, FP, TN, FN, one of each.
  CHECK(order_samples({0, 1, 2, 3}, model, e) == std::vector<std::size_t>{0, 1, 2, 3});

  const Dataset all_tp(y.topRows(2), Labels{1, 1});
  CHECK(order_samples({1, 0}, model, all_tp) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("branch and bound equals the exhaustive labeling filter") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    testsupport::Gen g(seed, 23);
    const std::size_t m = g.size(1, 3);
    const std::size_t n = g.size(m + 2, 11);
    const Dataset d = g.gaussian_dataset(n, m, 0.2);
    const double theta = std::vector<double>{0.0, 0.1, 0.2, 0.3}[g.size(0, 3)];
    const auto oracle = testsupport::linear_oracle(d, theta);
    const auto r = branch_and_bound_patterns(d, theta);
    CAPTURE(seed);
    CHECK(r.erm_mistakes == oracle.min_mistakes);
    CHECK(r.budget == oracle.budget);
    CHECK(testsupport::as_strings(r.patterns) == oracle.patterns);

    for (const auto& p : r.patterns) {
      CHECK(mistakes(p, d.labels()) <= r.budget);
      for (std::size_t k = 0; k < r.discard.fixed_samples.size(); ++k)
        CHECK(p[r.discard.fixed_samples[k]] == (r.discard.fixed_labels[k] == 1));
    }
    CHECK(BigInt(r.patterns.size()) <= pattern_count_bound(n, r.erm_loss, theta) + 1);
  }
}

TEST_CASE("serial reference search agrees with the parallel one") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    testsupport::Gen g(seed, 24);
    const Dataset d = g.gaussian_dataset(g.size(6, 14), 2, 0.2);
    const auto fast = branch_and_bound_patterns(d, 0.15);
    const auto slow = reference::branch_and_bound_patterns(d, 0.15);
    CHECK(fast.patterns == slow.patterns);
  }
}

TEST_CASE("pattern sets are nested in theta") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    testsupport::Gen g(seed, 25);
    const Dataset d = g.gaussian_dataset(g.size(5, 10), 2, 0.2);
    std::set<std::string> prev;
    for (double theta : {0.0, 0.1, 0.2, 0.4}) {
      const auto now = testsupport::as_strings(branch_and_bound_patterns(d, theta).patterns);
      CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
      prev = now;
    }
  }
}

TEST_CASE("exact ERM matches the smallest achievable mistake count") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    testsupport::Gen g(seed, 26);
    const Dataset d = g.gaussian_dataset(g.size(4, 11), g.size(1, 2), 0.3);
    const auto oracle = testsupport::linear_oracle(d, 0.0);
    const auto erm = linear_erm(d);
    CHECK(erm.mistakes == oracle.min_mistakes);
    CHECK(mistakes(erm.predictions, d.labels()) == erm.mistakes);
  }
}

TEST_CASE("limits") {
  testsupport::Gen g(1, 27);
  LinearConfig cfg;
  cfg.max_n = 5;
  CHECK_THROWS_AS(branch_and_bound_patterns(g.gaussian_dataset(8, 1), 0.1, cfg), Error);
  CHECK_THROWS_AS(branch_and_bound_patterns(appendix_example(), -0.1), Error);
}

}  // TEST_SUITE
