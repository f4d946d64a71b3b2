#pragma once

#include <vector>

#include "rashomon/dataset.hpp"

namespace rashomon {

// Linear classifier sign(w.x + b); a score of exactly zero predicts class 1.
struct LinearModel {
  Vector weights;
  double bias = 0.0;

  double score(const Matrix& x, Eigen::Index row) const { return x.row(row).dot(weights) + bias; }
  std::uint8_t predict(const Matrix& x, Eigen::Index row) const { return score(x, row) >= 0.0 ? 1 : 0; }
  Labels predict(const Matrix& x) const;
  // Augmented (w, b) of length m + 1.
  Vector augmented() const;
  static LinearModel from_augmented(const Vector& wb);
};

double zero_one_risk(const std::vector<double>& pred, const Labels& labels);
double zero_one_risk(const Labels& pred, const Labels& labels);

// Variance of the per-sample 0-1 loss, L(1 - L).
double empirical_loss_variance(const std::vector<double>& pred, const Labels& labels);
double empirical_loss_variance(const Labels& pred, const Labels& labels);

// Mean of exp(-y_i (w.x_i + b)) with labels read as -1/+1; weights has length m + 1, bias last.
double exponential_risk(const Vector& weights, const Dataset& d);
double exponential_risk(const Vector& weights, const Matrix& x, const Labels& labels);

// (1/n) sum (x_i.w - y_i)^2 + C w.w, no intercept.
double squared_risk(const Vector& omega, const Matrix& x, const Vector& y, double C = 0.0);
double squared_risk(const Vector& omega, const Dataset& d, double C = 0.0);

inline double signed_label(std::uint8_t y) { return y ? 1.0 : -1.0; }

}  // namespace rashomon
