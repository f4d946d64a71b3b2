#include <doctest.h>

#include "rashomon/error.hpp"
#include "rashomon/losses.hpp"
#include "rashomon/noise.hpp"
#include "support.hpp"

using namespace rashomon;

namespace {

double flip_fraction(const Labels& a, const Labels& b) {
  return static_cast<double>(testsupport::count_mistakes(a, b)) / static_cast<double>(a.size());
}

Dataset zeros(std::size_t n, std::size_t m = 1) {
  return Dataset(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)), Labels(n, 0));
}

}  // namespace

TEST_SUITE("noise_lab") {

TEST_CASE("uniform flip: identity, rate and determinism") {
  const Dataset d = zeros(10000, 2);
  const Dataset same = flip_labels_uniform(d, 0.0, 5);
  CHECK(same.labels() == d.labels());
  CHECK(same.features() == d.features());

  const Dataset a = flip_labels_uniform(d, 0.25, 5);
  CHECK(std::abs(flip_fraction(a.labels(), d.labels()) - 0.25) < 0.02);
  CHECK(flip_labels_uniform(d, 0.25, 5).labels() == a.labels());
  CHECK(flip_labels_uniform(d, 0.25, 6).labels() != a.labels());
  CHECK(a.features() == d.features());
  CHECK_THROWS_AS(flip_labels_uniform(d, 0.5, 1), Error);
  CHECK_THROWS_AS(flip_labels_uniform(d, -0.1, 1), Error);
}

TEST_CASE("uniform flip twice has rate 2 rho (1 - rho)") {
  const Dataset d = zeros(10000);
  const double rho = 0.2;
  const Dataset twice = flip_labels_uniform(flip_labels_uniform(d, rho, 1), rho, 2);
  CHECK(std::abs(flip_fraction(twice.labels(), d.labels()) - 2 * rho * (1 - rho)) < 0.02);
}

TEST_CASE("uniform flip moves empirical risk to (1 - 2 rho) L + rho") {
  testsupport::Gen g(3);
  const std::size_t n = 500;
  const Dataset d(g.binary_matrix(n, 2), g.labels(n));
  Labels pred = d.labels();
  for (std::size_t i = 0; i < n / 5; ++i) pred[i] ^= 1;  // clean risk 0.2
  const double L = zero_one_risk(pred, d.labels());
  REQUIRE(L == doctest::Approx(0.2));
  for (double rho : {0.1, 0.25}) {
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) mean += zero_one_risk(pred, flip_labels_uniform(d, rho, s).labels());
    mean /= 200;
    CHECK(std::abs(mean - ((1 - 2 * rho) * L + rho)) < 0.01);
  }
}

TEST_CASE("per-sample flips respect each rate") {
  const std::size_t n = 10000;
  const Dataset d = zeros(n);
  CHECK(flip_labels_per_sample(d, std::vector<double>(n, 0.0), 9).labels() == d.labels());
  const Dataset near_half = flip_labels_per_sample(d, std::vector<double>(n, 0.5 - 1e-6), 9);
  CHECK(std::abs(flip_fraction(near_half.labels(), d.labels()) - 0.5) < 0.02);

  std::vector<double> rho(n, 0.0);
  for (std::size_t i = n / 2; i < n; ++i) rho[i] = 0.4;
  const Dataset mixed = flip_labels_per_sample(d, rho, 11);
  std::size_t first = 0, second = 0;
  for (std::size_t i = 0; i < n; ++i) (i < n / 2 ? first : second) += mixed.y(i);
  CHECK(first == 0);
  CHECK(std::abs(static_cast<double>(second) / (n / 2) - 0.4) < 0.02);
  CHECK_THROWS_AS(flip_labels_per_sample(d, std::vector<double>(n - 1, 0.1), 1), Error);
}

TEST_CASE("per-sample streams do not depend on the other samples' rates") {
  const std::size_t n = 300;
  const Dataset d = zeros(n);
  std::vector<double> a(n, 0.3), b(n, 0.3);
  for (std::size_t i = 0; i < n; i += 2) b[i] = 0.0;
  const Dataset da = flip_labels_per_sample(d, a, 4), db = flip_labels_per_sample(d, b, 4);
  for (std::size_t i = 1; i < n; i += 2) CHECK(da.y(i) == db.y(i));
}

TEST_CASE("gaussian pair and margin shift") {
  GaussianPairSpec s;
  s.dims = 1;
  s.mu_neg = {0.0};
  s.mu_pos = {2.0};
  s.n_per_class = 5;
  const auto same = margin_shift(s, 1.0);
  CHECK(same.mu_pos == s.mu_pos);
  CHECK(same.mu_neg == s.mu_neg);
  CHECK(margin_shift(s, 0.5).mu_pos == std::vector<double>{1.0});
  CHECK_THROWS_AS(margin_shift(s, 0.0), Error);

  GaussianPairSpec big;
  big.dims = 3;
  big.mu_neg = {0.0, 0.0, 0.0};
  big.mu_pos = {1.0, 1.0, 1.0};
  big.n_per_class = 10000;
  big.seed = 8;
  const Dataset d = gen_gaussian_pair(big);
  REQUIRE(d.n() == 20000);
  const auto neg = d.features().topRows(10000).colwise().mean();
  const auto pos = d.features().bottomRows(10000).colwise().mean();
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(std::abs(neg(j) - 0.0) < 0.05);
    CHECK(std::abs(pos(j) - 1.0) < 0.05);
  }
  CHECK(d.y(0) == 0);
  CHECK(d.y(19999) == 1);
  CHECK(gen_gaussian_pair(big) == d);
}

TEST_CASE("additive attribute noise has variance lambda and leaves labels alone") {
  testsupport::Gen g(5);
  const Dataset d(g.gaussian_matrix(20000, 5), g.labels(20000));
  CHECK(add_attribute_noise(d, 0.0, 3).features() == d.features());
  const Dataset noisy = add_attribute_noise(d, 1.0, 3);
  CHECK(noisy.labels() == d.labels());
  const Matrix diff = noisy.features() - d.features();
  const double mean = diff.mean();
  const double var = (diff.array() - mean).square().mean();
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("attribute negation") {
  testsupport::Gen g(6);
  const Dataset d(g.binary_matrix(1000, 10), g.labels(1000));
  CHECK(negate_attributes(d, {}, 0.0, 1).features() == d.features());
  const Dataset all = negate_attributes(d, {1, 3}, 1.0, 1);
  for (std::size_t i = 0; i < d.n(); ++i) {
    CHECK(all.x(i, 1) == 1.0 - d.x(i, 1));
    CHECK(all.x(i, 3) == 1.0 - d.x(i, 3));
    CHECK(all.x(i, 0) == d.x(i, 0));
  }
  const Dataset part = negate_attributes(d, {}, 0.3, 2);
  const double frac = (part.features() - d.features()).cwiseAbs().sum() / 10000.0;
  CHECK(std::abs(frac - 0.3) < 0.02);
  CHECK(part.labels() == d.labels());
  CHECK_THROWS_AS(negate_attributes(Dataset(g.gaussian_matrix(3, 1), Labels{0, 1, 0}), {}, 0.1, 1), Error);
}

TEST_CASE("noise spec serialization carries only the active fields") {
  const auto s = NoiseSpec::uniform_flip(0.1, 42);
  const auto back = NoiseSpec::from_json(s.to_json());
  CHECK(back.kind == NoiseKind::kUniformFlip);
  CHECK(back.rho == 0.1);
  CHECK(back.seed == 42);
  CHECK(s.to_json().find("lambda") == std::string::npos);

  const auto neg = NoiseSpec::from_json(NoiseSpec::attribute_negation(0.3, 1, {2, 4}).to_json());
  CHECK(neg.feature_indices == std::vector<std::size_t>{2, 4});

  auto code = [](const std::string& text) {
    try {
      NoiseSpec::from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code(R"({"kind":"uniform_flip","rho":0.1,"lambda":2})") == ErrorCode::kConfig);
  CHECK(code(R"({"kind":"uniform_flip"})") == ErrorCode::kConfig);
  CHECK(code("not json") == ErrorCode::kConfig);
  CHECK(code(R"({"kind":"uniform_flip","rho":0.7})") == ErrorCode::kOutOfRange);
}

TEST_CASE("apply_noise dispatches and records provenance") {
  const Dataset d = zeros(50, 2);
  const Dataset a = apply_noise(d, NoiseSpec::uniform_flip(0.2, 3));
  CHECK(a.labels() == flip_labels_uniform(d, 0.2, 3).labels());
  CHECK(a.provenance().noise.find("uniform_flip") != std::string::npos);
  CHECK_THROWS_AS(apply_noise(d, NoiseSpec::margin_shift(0.5, 1)), Error);
}

}  // TEST_SUITE
