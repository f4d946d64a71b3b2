#include "rashomon/ridge_rashomon.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/losses.hpp"
#include "rashomon/rng.hpp"

namespace rashomon {

void RidgeSpace::validate() const {
  require(!singular_values_sq.empty(), ErrorCode::kInvalidArgument, "ridge space needs m >= 1");
  require(C > 0.0, ErrorCode::kOutOfRange, "C must be positive");
  require(L_max > 0.0, ErrorCode::kOutOfRange, "L_max must be positive");
  bool nonzero = false;
  for (double s : singular_values_sq) {
    require(s >= 0.0, ErrorCode::kOutOfRange, "squared singular values must be non-negative");
    nonzero = nonzero || s > 0.0;
  }
  require(nonzero, ErrorCode::kInvalidArgument, "design matrix must be non-zero");
}

Vector labels_as_targets(const Dataset& d) {
  Vector y(static_cast<Eigen::Index>(d.n()));
  for (std::size_t i = 0; i < d.n(); ++i) y(static_cast<Eigen::Index>(i)) = d.y(i);
  return y;
}

RidgeSpace ridge_space_from_data(const Matrix& x, const Vector& y, double C, std::optional<double> L_max) {
  require(x.rows() == y.size(), ErrorCode::kLengthMismatch, "targets length differs from rows");
  const double n = static_cast<double>(x.rows());
  const Eigen::MatrixXd gram = (x.transpose() * x) / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  RidgeSpace space;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    space.singular_values_sq.push_back(std::max(0.0, eig.eigenvalues()(i)));
  }
  space.C = C;
  space.L_max = L_max.value_or(y.squaredNorm() / n);
  space.validate();
  return space;
}

RidgeSpace ridge_space_from_data(const Dataset& d, double C, std::optional<double> L_max) {
  return ridge_space_from_data(d.features(), labels_as_targets(d), C, L_max);
}

double log_ball_volume(std::size_t m, double R) {
  require(R > 0.0, ErrorCode::kOutOfRange, "radius must be positive");
  const double half = static_cast<double>(m) / 2.0;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0) + static_cast<double>(m) * std::log(R);
}

double ball_volume(std::size_t m, double R) { return std::exp(log_ball_volume(m, R)); }

double log_rashomon_volume(const RidgeSpace& space, double theta, double lambda) {
  space.validate();
  require(theta > 0.0, ErrorCode::kOutOfRange, "theta must be positive");
  require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
  const double half = static_cast<double>(space.m()) / 2.0;
  double log_v = half * std::log(std::numbers::pi * theta) - std::lgamma(half + 1.0);
  for (double s : space.singular_values_sq) log_v -= 0.5 * std::log(s + space.C + lambda);
  return log_v;
}

double rashomon_volume(const RidgeSpace& space, double theta, double lambda) {
  return std::exp(log_rashomon_volume(space, theta, lambda));
}

double log_ridge_rashomon_ratio(const RidgeSpace& space, double theta, double lambda) {
  space.validate();
  require(theta > 0.0, ErrorCode::kOutOfRange, "theta must be positive");
  require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
  const double c = space.C + lambda;
  double log_r = static_cast<double>(space.m()) / 2.0 * std::log(theta / space.L_max);
  for (double s : space.singular_values_sq) log_r += 0.5 * (std::log(c) - std::log(s + c));
  return log_r;
}

double ridge_rashomon_ratio(const RidgeSpace& space, double theta, double lambda) {
  return std::exp(log_ridge_rashomon_ratio(space, theta, lambda));
}

double ridge_ratio_from_volumes(const RidgeSpace& space, double theta, double lambda) {
  const double radius = std::sqrt(space.L_max / (space.C + lambda));
  return std::exp(log_rashomon_volume(space, theta, lambda) - log_ball_volume(space.m(), radius));
}

NoiseEquivalenceReport noise_regularization_equivalence(const Matrix& x, const Vector& y, double C, double lambda,
                                                        std::size_t draws, std::uint64_t seed) {
  require(draws >= 1, ErrorCode::kInvalidArgument, "draws must be at least 1");
  require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  NoiseEquivalenceReport report;
  report.omega_grid.push_back(Vector::Zero(m));
  report.omega_grid.push_back(Vector::Ones(m) / std::sqrt(static_cast<double>(m)));
  for (Eigen::Index j = 0; j < m; ++j) report.omega_grid.push_back(Vector::Unit(m, j));
  {
    StreamRng rng(seed, StreamTag::kExperiment, 0);
    for (int g = 0; g < 2; ++g) {
      Vector w(m);
      for (Eigen::Index j = 0; j < m; ++j) w(j) = rng.normal();
      report.omega_grid.push_back(w);
    }
  }
  const std::size_t grid = report.omega_grid.size();
  Matrix omegas(m, static_cast<Eigen::Index>(grid));
  for (std::size_t g = 0; g < grid; ++g) omegas.col(static_cast<Eigen::Index>(g)) = report.omega_grid[g];
  const Matrix residual = (x * omegas).colwise() - y;  // n x grid

  std::vector<double> per_draw(draws * grid);
  const double sd = std::sqrt(lambda);
  const auto total_draws = static_cast<std::ptrdiff_t>(draws);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < total_draws; ++t) {
    StreamRng rng(seed, StreamTag::kAttributeNoise, static_cast<std::uint64_t>(t) + 1);
    Matrix eps(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) eps(i, j) = sd * rng.normal();
    }
    const Matrix noisy = residual + eps * omegas;
    for (std::size_t g = 0; g < grid; ++g) {
      per_draw[static_cast<std::size_t>(t) * grid + g] =
          noisy.col(static_cast<Eigen::Index>(g)).squaredNorm() / static_cast<double>(n);
    }
  }
  for (std::size_t g = 0; g < grid; ++g) {
    double sum = 0.0;
    for (std::size_t t = 0; t < draws; ++t) sum += per_draw[t * grid + g];
    const Vector& w = report.omega_grid[g];
    const double penalty = C * w.squaredNorm();
    const double mc = sum / static_cast<double>(draws) + penalty;
    const double closed = squared_risk(w, x, y) + (C + lambda) * w.squaredNorm();
    report.monte_carlo.push_back(mc);
    report.closed_form.push_back(closed);
    report.max_deviation = std::max(report.max_deviation, std::abs(mc - closed));
  }
  return report;
}

NoiseEquivalenceReport noise_regularization_equivalence(const Dataset& d, double C, double lambda,
                                                        std::size_t draws, std::uint64_t seed) {
  return noise_regularization_equivalence(d.features(), labels_as_targets(d), C, lambda, draws, seed);
}

double least_squares_loss_variance(const Matrix& x, const Vector& y, const Vector& omega, double lambda) {
  require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
  const Vector r = x * omega - y;
  const double er2 = r.array().square().mean();
  const double er4 = r.array().square().square().mean();
  const double s = lambda * omega.squaredNorm();
  return 2.0 * (s + er2) * (s + er2) + er4 - 3.0 * er2 * er2;
}

VarianceEstimate monte_carlo_least_squares_variance(const Matrix& x, const Vector& y, const Vector& omega,
                                                    double lambda, std::size_t draws, std::uint64_t seed) {
  require(draws >= 2, ErrorCode::kInvalidArgument, "need at least 2 draws");
  const Vector r = x * omega - y;
  const double sd = std::sqrt(lambda);
  std::vector<double> losses(draws);
  const auto total = static_cast<std::ptrdiff_t>(draws);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < total; ++t) {
    StreamRng rng(seed, StreamTag::kAttributeNoise, static_cast<std::uint64_t>(t));
    const auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(x.rows())));
    double noise = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) noise += sd * rng.normal() * omega(j);
    const double v = r(i) + noise;
    losses[static_cast<std::size_t>(t)] = v * v;
  }
  double mean = 0.0;
  for (double l : losses) mean += l;
  mean /= static_cast<double>(draws);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double l : losses) {
    const double c = (l - mean) * (l - mean);
    m2 += c;
    m4 += c * c;
  }
  m2 /= static_cast<double>(draws);
  m4 /= static_cast<double>(draws);
  return {m2 * static_cast<double>(draws) / static_cast<double>(draws - 1),
          std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(draws))};
}

RidgeReport ridge_report(const RidgeSpace& space, double theta, const std::vector<double>& lambda_grid,
                         double mc_deviation) {
  RidgeReport r;
  r.lambda_grid = lambda_grid;
  for (double lambda : lambda_grid) {
    r.ratios.push_back(ridge_rashomon_ratio(space, theta, lambda));
    r.volumes.push_back(rashomon_volume(space, theta, lambda));
  }
  r.mc_deviation = mc_deviation;
  return r;
}

std::string RidgeReport::to_json() const {
  nlohmann::json j;
  j["lambda_grid"] = lambda_grid;
  j["ratios"] = ratios;
  j["volumes"] = volumes;
  j["mc_deviation"] = mc_deviation;
  return j.dump(2);
}

}  // namespace rashomon
