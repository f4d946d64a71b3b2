#include "rashomon/losses.hpp"

#include <cmath>

#include "rashomon/error.hpp"

namespace rashomon {

Labels LinearModel::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = predict(x, i);
  return out;
}

Vector LinearModel::augmented() const {
  Vector wb(weights.size() + 1);
  wb.head(weights.size()) = weights;
  wb(weights.size()) = bias;
  return wb;
}

LinearModel LinearModel::from_augmented(const Vector& wb) {
  return LinearModel{wb.head(wb.size() - 1), wb(wb.size() - 1)};
}

double zero_one_risk(const std::vector<double>& pred, const Labels& labels) {
  require(pred.size() == labels.size(), ErrorCode::kLengthMismatch, "prediction and label lengths differ");
  require(!labels.empty(), ErrorCode::kInvalidArgument, "empty prediction vector");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    require(pred[i] == 0.0 || pred[i] == 1.0, ErrorCode::kNonBinaryPrediction,
            "prediction " + std::to_string(i) + " is not 0 or 1");
    wrong += static_cast<std::uint8_t>(pred[i]) != labels[i];
  }
  return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

double zero_one_risk(const Labels& pred, const Labels& labels) {
  return zero_one_risk(std::vector<double>(pred.begin(), pred.end()), labels);
}

double empirical_loss_variance(const std::vector<double>& pred, const Labels& labels) {
  const double l = zero_one_risk(pred, labels);
  return l * (1.0 - l);
}

double empirical_loss_variance(const Labels& pred, const Labels& labels) {
  const double l = zero_one_risk(pred, labels);
  return l * (1.0 - l);
}

double exponential_risk(const Vector& weights, const Matrix& x, const Labels& labels) {
  require(weights.size() == x.cols() + 1, ErrorCode::kLengthMismatch, "weights must have length m + 1");
  require(static_cast<std::size_t>(x.rows()) == labels.size(), ErrorCode::kLengthMismatch,
          "labels length differs from rows");
  const auto w = weights.head(x.cols());
  const double b = weights(x.cols());
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    total += std::exp(-signed_label(labels[static_cast<std::size_t>(i)]) * (x.row(i).dot(w) + b));
  }
  return total / static_cast<double>(x.rows());
}

double exponential_risk(const Vector& weights, const Dataset& d) {
  return exponential_risk(weights, d.features(), d.labels());
}

double squared_risk(const Vector& omega, const Matrix& x, const Vector& y, double C) {
  require(omega.size() == x.cols(), ErrorCode::kLengthMismatch, "omega must have length m");
  require(y.size() == x.rows(), ErrorCode::kLengthMismatch, "targets length differs from rows");
  const Vector r = x * omega - y;
  return r.squaredNorm() / static_cast<double>(x.rows()) + C * omega.squaredNorm();
}

double squared_risk(const Vector& omega, const Dataset& d, double C) {
  Vector y(static_cast<Eigen::Index>(d.n()));
  for (std::size_t i = 0; i < d.n(); ++i) y(static_cast<Eigen::Index>(i)) = d.y(i);
  return squared_risk(omega, d.features(), y, C);
}

}  // namespace rashomon
