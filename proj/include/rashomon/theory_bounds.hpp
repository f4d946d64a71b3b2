#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rashomon/dataset.hpp"
#include "rashomon/losses.hpp"
#include "rashomon/noise.hpp"
#include "rashomon/pattern.hpp"

namespace rashomon {

double noisy_risk(double L, double rho);
double loss_variance_under_noise(double L, double rho);
// Per-sample flip rates: mean of (1 - 2 rho_i) l_i + rho_i, l_i the clean 0-1 losses.
double noisy_risk_per_sample(const Labels& clean_losses, const std::vector<double>& rho);

double normal_cdf(double x);

// Risk of sign(w.x + b) on an equal mix of N(0, I) and N(k mu, I).
double margin_noise_risk(const Vector& w, double b, const Vector& mu, double k);

struct BoundInputs {
  std::size_t n = 1;
  double rset_size = 1.0;  // |R_set| or a covering number
  double delta = 0.05;
  double sigma_sq = 0.0;
  double C_loss = 1.0;

  void validate() const;
};

// (2 C / 3n) ln(|R|/delta) + sqrt((2 sigma^2 / n) ln(|R|/delta)).
double bernstein_generalization_bound(const BoundInputs& b);

// Least-squares loss bounded by C^2: the epsilon at which
// N exp(-n (eps/2)^2 / (2 sigma^2 + C^2 eps / 3)) equals delta. C_loss holds C^2.
double least_squares_generalization_bound(const BoundInputs& b);
double least_squares_tail(const BoundInputs& b, double eps);

// Tail exponents for a loss in [a, b_hi]; larger (less negative) is weaker.
double bernstein_exponent(std::size_t n, double eps, double sigma_sq, double a, double b_hi);
double hoeffding_exponent(std::size_t n, double eps, double a, double b_hi);

bool bernstein_beats_hoeffding(double sigma_sq, double a, double b_hi);

struct DominanceCheck {
  bool dominates = true;          // Bernstein exponent <= Hoeffding exponent at every probe
  std::optional<double> counterexample;
  std::size_t probes = 0;
};

// Probes a uniform grid on (0, b_hi - a) plus the crossing region
// (eps*, b_hi - a) whenever it is non-empty.
DominanceCheck exponent_dominance(double sigma_sq, double a, double b_hi, std::size_t grid = 999);

struct ErmTrueSetCondition {
  bool holds = false;
  double probability_floor = 0.0;
};

ErmTrueSetCondition erm_in_true_set_condition(double xi, double eps, double gamma, std::size_t n, double eps_xi);

struct VarianceCheckInput {
  NoiseKind kind = NoiseKind::kUniformFlip;
  std::optional<Dataset> data;                // label noise
  std::optional<GaussianPairSpec> gaussian;   // margin noise
  std::variant<Pattern, LinearModel> model;
  std::vector<double> levels;                 // rho, rho scale, or k; ordered by increasing noise
  std::vector<double> base_rho;               // per-sample flip rates scaled by the level
  std::size_t draws = 1000;
  std::uint64_t seed = 0;
};

struct VarianceCheckReport {
  std::vector<double> levels;
  std::vector<double> empirical;
  std::vector<double> closed_form;
  std::vector<double> standard_error;
  std::vector<bool> agrees;
  bool increasing = false;
  bool passed = false;

  std::string to_json() const;
};

VarianceCheckReport monte_carlo_variance_check(const VarianceCheckInput& input);

}  // namespace rashomon
