#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rashomon/dataset.hpp"

namespace rashomon {

struct RidgeSpace {
  std::vector<double> singular_values_sq;
  double C = 1.0;
  double L_max = 1.0;

  std::size_t m() const noexcept { return singular_values_sq.size(); }
  void validate() const;
};

// sigma_i^2 are the eigenvalues of X^T X / n, matching the 1/n in the
// least-squares loss. L_max defaults to the loss of omega = 0, (1/n) sum y^2.
RidgeSpace ridge_space_from_data(const Matrix& x, const Vector& y, double C,
                                 std::optional<double> L_max = std::nullopt);
RidgeSpace ridge_space_from_data(const Dataset& d, double C, std::optional<double> L_max = std::nullopt);

double log_ball_volume(std::size_t m, double R);
double ball_volume(std::size_t m, double R);

double log_rashomon_volume(const RidgeSpace& space, double theta, double lambda);
double rashomon_volume(const RidgeSpace& space, double theta, double lambda);

// (theta / L_max)^{m/2} prod sqrt((C + lambda) / (sigma_i^2 + C + lambda)).
double log_ridge_rashomon_ratio(const RidgeSpace& space, double theta, double lambda);
double ridge_rashomon_ratio(const RidgeSpace& space, double theta, double lambda);
// Same quantity as volume / ball_volume(m, sqrt(L_max / (C + lambda))).
double ridge_ratio_from_volumes(const RidgeSpace& space, double theta, double lambda);

struct NoiseEquivalenceReport {
  std::vector<Vector> omega_grid;
  std::vector<double> monte_carlo;
  std::vector<double> closed_form;
  double max_deviation = 0.0;
};

// Monte Carlo mean of the noisy regularized least-squares loss against
// L_LS(omega) + (C + lambda) omega.omega, over a fixed grid of omega.
NoiseEquivalenceReport noise_regularization_equivalence(const Dataset& d, double C, double lambda,
                                                        std::size_t draws, std::uint64_t seed);
NoiseEquivalenceReport noise_regularization_equivalence(const Matrix& x, const Vector& y, double C, double lambda,
                                                        std::size_t draws, std::uint64_t seed);

// Variance of the per-sample squared residual with N(0, lambda I) attribute
// noise, from empirical moments of the clean residuals.
double least_squares_loss_variance(const Matrix& x, const Vector& y, const Vector& omega, double lambda);

struct VarianceEstimate {
  double variance = 0.0;
  double standard_error = 0.0;
};

VarianceEstimate monte_carlo_least_squares_variance(const Matrix& x, const Vector& y, const Vector& omega,
                                                    double lambda, std::size_t draws, std::uint64_t seed);

struct RidgeReport {
  std::vector<double> lambda_grid;
  std::vector<double> ratios;
  std::vector<double> volumes;
  double mc_deviation = 0.0;

  std::string to_json() const;
};

RidgeReport ridge_report(const RidgeSpace& space, double theta, const std::vector<double>& lambda_grid,
                         double mc_deviation);

Vector labels_as_targets(const Dataset& d);

}  // namespace rashomon
