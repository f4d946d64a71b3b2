#include <algorithm>
#include <cmath>

#include "rashomon/error.hpp"
#include "rashomon/linear_patterns.hpp"

namespace rashomon {
namespace {

Matrix augment(const Matrix& x) {
  Matrix a(x.rows(), x.cols() + 1);
  a.leftCols(x.cols()) = x;
  a.col(x.cols()).setOnes();
  return a;
}

Vector signs(const Labels& y) {
  Vector s(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) s(static_cast<Eigen::Index>(i)) = signed_label(y[i]);
  return s;
}

double sigmoid_neg(double t) {
  // 1 / (1 + e^t), stable for both signs
  if (t >= 0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

bool all_positive(const Vector& margins) { return (margins.array() > 0.0).all(); }

std::optional<LinearModel> constant_model(const Labels& y) {
  if (y.empty()) return LinearModel{Vector(), 1.0};
  const bool all_one = std::all_of(y.begin(), y.end(), [](auto v) { return v == 1; });
  const bool all_zero = std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
  if (all_one) return LinearModel{Vector(), 1.0};
  if (all_zero) return LinearModel{Vector(), -1.0};
  return std::nullopt;
}

// Gradient descent on mean logistic loss over augmented rows a with signs s.
// Returns true as soon as every margin is positive when stop_when_separated.
bool logistic_descent(const Matrix& a, const Vector& s, std::size_t iterations, double step_scale,
                      bool stop_when_separated, Vector& z) {
  const double lipschitz = 0.25 * a.rowwise().squaredNorm().maxCoeff();
  const double step = step_scale / std::max(lipschitz, 1e-300);
  const double inv_k = 1.0 / static_cast<double>(a.rows());
  Vector margins = s.cwiseProduct(a * z);
  for (std::size_t it = 0; it < iterations; ++it) {
    if (stop_when_separated && all_positive(margins)) return true;
    Vector coef(margins.size());
    for (Eigen::Index i = 0; i < margins.size(); ++i) coef(i) = s(i) * sigmoid_neg(margins(i));
    z += step * inv_k * (a.transpose() * coef);
    margins = s.cwiseProduct(a * z);
  }
  return all_positive(margins);
}

}  // namespace

LinearModel fit_logistic(const Matrix& x, const Labels& y, std::size_t iterations) {
  require(static_cast<std::size_t>(x.rows()) == y.size(), ErrorCode::kLengthMismatch, "labels length differs from rows");
  const Matrix a = augment(x);
  Vector z = Vector::Zero(a.cols());
  logistic_descent(a, signs(y), iterations, 1.0, false, z);
  return LinearModel::from_augmented(z);
}

std::optional<LinearModel> lp_separating_model(const Matrix& x, const Labels& y) {
  if (auto c = constant_model(y)) {
    c->weights = Vector::Zero(x.cols());
    return c;
  }
  const Matrix a = augment(x);
  const Vector s = signs(y);
  const Eigen::Index k = a.rows();
  const Eigen::Index p = a.cols();
  // Columns: z+ (p), z- (p), surplus (k), artificial (k), rhs.
  const Eigen::Index art = 2 * p + k;
  const Eigen::Index cols = 2 * p + 2 * k;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, cols + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto row = s(i) * a.row(i);
    t.block(i, 0, 1, p) = row;
    t.block(i, p, 1, p) = -row;
    t(i, 2 * p + i) = -1.0;
    t(i, art + i) = 1.0;
    t(i, cols) = 1.0;
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) basis[static_cast<std::size_t>(i)] = art + i;
  Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(cols + 1);
  for (Eigen::Index j = 0; j <= cols; ++j) {
    if (j >= art && j < cols) continue;
    obj(j) = -t.col(j).sum();
  }

  constexpr double eps = 1e-9;
  const std::size_t max_pivots = 50'000;
  for (std::size_t pivots = 0; pivots < max_pivots; ++pivots) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {  // Bland: lowest improving index
      if (obj(j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, cols) / t(i, enter);
      if (leave < 0 || ratio < best - eps ||
          (ratio <= best + eps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    obj -= obj(enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  if (-obj(cols) > 1e-7) return std::nullopt;

  Vector z = Vector::Zero(p);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b < p) z(b) += t(i, cols);
    else if (b < 2 * p) z(b - p) -= t(i, cols);
  }
  if (!all_positive(s.cwiseProduct(a * z))) return std::nullopt;
  return LinearModel::from_augmented(z);
}

std::optional<LinearModel> separating_model(const Matrix& x, const Labels& y, const LinearConfig& config) {
  require(static_cast<std::size_t>(x.rows()) == y.size(), ErrorCode::kLengthMismatch, "labels length differs from rows");
  if (auto c = constant_model(y)) {
    c->weights = Vector::Zero(x.cols());
    return c;
  }
  const Matrix a = augment(x);
  Vector z = Vector::Zero(a.cols());
  if (logistic_descent(a, signs(y), config.max_iterations, config.step_scale, true, z)) {
    return LinearModel::from_augmented(z);
  }
  if (config.exact_fallback) return lp_separating_model(x, y);
  return std::nullopt;
}

bool achievable(const Matrix& x, const Labels& y, const LinearConfig& config) {
  return separating_model(x, y, config).has_value();
}

}  // namespace rashomon
