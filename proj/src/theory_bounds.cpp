#include "rashomon/theory_bounds.hpp"

#include <cmath>

#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/rng.hpp"

namespace rashomon {

double noisy_risk(double L, double rho) { return (1.0 - 2.0 * rho) * L + rho; }

double loss_variance_under_noise(double L, double rho) {
  const double s = 1.0 - 2.0 * rho;
  return s * s * L * (1.0 - L) + rho * (1.0 - rho);
}

double noisy_risk_per_sample(const Labels& clean_losses, const std::vector<double>& rho) {
  require(clean_losses.size() == rho.size(), ErrorCode::kLengthMismatch, "one flip rate per sample required");
  require(!rho.empty(), ErrorCode::kInvalidArgument, "empty sample");
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) total += (1.0 - 2.0 * rho[i]) * clean_losses[i] + rho[i];
  return total / static_cast<double>(rho.size());
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double margin_noise_risk(const Vector& w, double b, const Vector& mu, double k) {
  require(w.size() == mu.size(), ErrorCode::kLengthMismatch, "w and mu differ in length");
  const double norm = w.norm();
  require(norm > 0.0, ErrorCode::kInvalidArgument, "weight vector must be non-zero");
  require(k > 0.0 && k <= 1.0, ErrorCode::kOutOfRange, "k must lie in (0, 1]");
  const double r1 = b / norm;
  const double r2 = (k * w.dot(mu) + b) / norm;
  return 0.5 * (normal_cdf(r1) + 1.0 - normal_cdf(r2));
}

void BoundInputs::validate() const {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
  require(rset_size >= 1.0, ErrorCode::kInvalidArgument, "rset_size must be a positive count");
  require(delta > 0.0 && delta < 1.0, ErrorCode::kOutOfRange, "delta must lie in (0, 1)");
  require(sigma_sq >= 0.0, ErrorCode::kOutOfRange, "sigma_sq must be non-negative");
  require(C_loss > 0.0, ErrorCode::kOutOfRange, "C_loss must be positive");
}

double bernstein_generalization_bound(const BoundInputs& b) {
  b.validate();
  const double n = static_cast<double>(b.n);
  const double l = std::log(b.rset_size / b.delta);
  return 2.0 * b.C_loss / (3.0 * n) * l + std::sqrt(2.0 * b.sigma_sq / n * l);
}

double least_squares_generalization_bound(const BoundInputs& b) {
  b.validate();
  const double n = static_cast<double>(b.n);
  const double l = std::log(b.rset_size / b.delta);
  const double lin = b.C_loss * l / 3.0;
  return (lin + std::sqrt(lin * lin + 2.0 * n * b.sigma_sq * l)) / (n / 2.0);
}

double least_squares_tail(const BoundInputs& b, double eps) {
  b.validate();
  const double n = static_cast<double>(b.n);
  return b.rset_size * std::exp(-n * (eps / 2.0) * (eps / 2.0) / (2.0 * b.sigma_sq + b.C_loss * eps / 3.0));
}

double bernstein_exponent(std::size_t n, double eps, double sigma_sq, double a, double b_hi) {
  return -2.0 * static_cast<double>(n) * eps * eps / (4.0 * sigma_sq + 2.0 * (b_hi - a) * eps / 3.0);
}

double hoeffding_exponent(std::size_t n, double eps, double a, double b_hi) {
  return -2.0 * static_cast<double>(n) * eps * eps / ((b_hi - a) * (b_hi - a));
}

bool bernstein_beats_hoeffding(double sigma_sq, double a, double b_hi) {
  require(a < b_hi, ErrorCode::kInvalidArgument, "need a < b");
  return sigma_sq <= (b_hi - a) * (b_hi - a) / 12.0;
}

DominanceCheck exponent_dominance(double sigma_sq, double a, double b_hi, std::size_t grid) {
  require(a < b_hi, ErrorCode::kInvalidArgument, "need a < b");
  require(grid >= 1, ErrorCode::kInvalidArgument, "grid must be non-empty");
  const double width = b_hi - a;
  DominanceCheck check;
  // Exponents share the numerator, so compare denominators: Bernstein is at
  // least as strong iff 4 sigma^2 + 2 w eps / 3 <= w^2.
  auto probe = [&](double eps) {
    ++check.probes;
    if (!(eps > 0.0 && eps < width)) return;
    if (4.0 * sigma_sq + 2.0 * width * eps / 3.0 > width * width && check.dominates) {
      check.dominates = false;
      check.counterexample = eps;
    }
  };
  for (std::size_t g = 1; g <= grid; ++g) probe(width * static_cast<double>(g) / static_cast<double>(grid + 1));
  const double crossing = 3.0 * (width * width - 4.0 * sigma_sq) / (2.0 * width);
  if (crossing < width) {
    const double lo = std::max(crossing, 0.0);
    probe(lo + 0.5 * (width - lo));
    probe(std::nextafter(width, 0.0));
  }
  return check;
}

ErmTrueSetCondition erm_in_true_set_condition(double xi, double eps, double gamma, std::size_t n, double eps_xi) {
  require(xi >= 0.0 && eps >= 0.0 && gamma >= 0.0, ErrorCode::kOutOfRange, "arguments must be non-negative");
  require(eps_xi >= 0.0 && eps_xi <= 1.0, ErrorCode::kOutOfRange, "eps_xi must lie in [0, 1]");
  ErmTrueSetCondition c;
  c.holds = xi + eps <= gamma;
  c.probability_floor = std::max(0.0, 1.0 - std::exp(-2.0 * static_cast<double>(n) * eps * eps) - eps_xi);
  return c;
}

namespace {

struct LevelDraws {
  std::vector<double> risks;  // per-draw empirical 0-1 risk
};

double pooled_variance(const LevelDraws& l, double& standard_error) {
  const double d = static_cast<double>(l.risks.size());
  double mean = 0.0;
  for (double r : l.risks) mean += r;
  mean /= d;
  double ss = 0.0;
  for (double r : l.risks) ss += (r - mean) * (r - mean);
  const double sd = std::sqrt(ss / (d - 1.0));
  standard_error = std::abs(1.0 - 2.0 * mean) * sd / std::sqrt(d);
  return mean * (1.0 - mean);
}

}  // namespace

VarianceCheckReport monte_carlo_variance_check(const VarianceCheckInput& in) {
  require(in.levels.size() >= 2, ErrorCode::kInvalidArgument, "need at least 2 noise levels");
  require(in.draws >= 100, ErrorCode::kInvalidArgument, "need at least 100 draws");
  VarianceCheckReport report;
  report.levels = in.levels;

  for (std::size_t li = 0; li < in.levels.size(); ++li) {
    const double level = in.levels[li];
    LevelDraws draws;
    draws.risks.resize(in.draws);
    double closed = 0.0;
    switch (in.kind) {
      case NoiseKind::kUniformFlip:
      case NoiseKind::kPerSampleFlip: {
        require(in.data.has_value(), ErrorCode::kGeneratorMismatch, "label noise needs a dataset");
        const Dataset& d = *in.data;
        const Labels pred = std::holds_alternative<Pattern>(in.model)
                                ? std::get<Pattern>(in.model).to_labels()
                                : std::get<LinearModel>(in.model).predict(d.features());
        require(pred.size() == d.n(), ErrorCode::kLengthMismatch, "model predictions do not match dataset");
        Labels clean_loss(d.n());
        for (std::size_t i = 0; i < d.n(); ++i) clean_loss[i] = pred[i] != d.y(i);
        std::vector<double> rho;
        if (in.kind == NoiseKind::kPerSampleFlip) {
          require(in.base_rho.size() == d.n(), ErrorCode::kLengthMismatch, "base_rho must have length n");
          for (double r : in.base_rho) rho.push_back(level * r);
          const double p = noisy_risk_per_sample(clean_loss, rho);
          closed = p * (1.0 - p);
        } else {
          closed = loss_variance_under_noise(zero_one_risk(pred, d.labels()), level);
        }
        const auto total = static_cast<std::ptrdiff_t>(in.draws);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t t = 0; t < total; ++t) {
          const std::uint64_t seed = derive_seed(in.seed, li, static_cast<std::uint64_t>(t));
          const Dataset noisy = in.kind == NoiseKind::kUniformFlip ? flip_labels_uniform(d, level, seed)
                                                                   : flip_labels_per_sample(d, rho, seed);
          draws.risks[static_cast<std::size_t>(t)] = zero_one_risk(pred, noisy.labels());
        }
        break;
      }
      case NoiseKind::kMarginShift: {
        require(std::holds_alternative<LinearModel>(in.model), ErrorCode::kGeneratorMismatch,
                "margin noise needs a linear model");
        require(in.gaussian.has_value(), ErrorCode::kGeneratorMismatch, "margin noise needs a Gaussian-pair spec");
        const auto& model = std::get<LinearModel>(in.model);
        const auto& spec = *in.gaussian;
        for (double v : spec.mu_neg) {
          require(v == 0.0, ErrorCode::kGeneratorMismatch, "margin-noise closed form assumes mu_neg at the origin");
        }
        const Vector mu = Eigen::Map<const Vector>(spec.mu_pos.data(), static_cast<Eigen::Index>(spec.mu_pos.size()));
        const double p = margin_noise_risk(model.weights, model.bias, mu, level);
        closed = p * (1.0 - p);
        const GaussianPairSpec shifted = margin_shift(spec, level);
        const auto total = static_cast<std::ptrdiff_t>(in.draws);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t t = 0; t < total; ++t) {
          GaussianPairSpec s = shifted;
          s.seed = derive_seed(in.seed, li, static_cast<std::uint64_t>(t));
          const Dataset d = gen_gaussian_pair(s);
          draws.risks[static_cast<std::size_t>(t)] = zero_one_risk(model.predict(d.features()), d.labels());
        }
        break;
      }
      default:
        throw Error(ErrorCode::kGeneratorMismatch,
                    "no closed-form 0-1 variance for " + to_string(in.kind) + " noise");
    }
    double se = 0.0;
    const double v = pooled_variance(draws, se);
    report.empirical.push_back(v);
    report.closed_form.push_back(closed);
    report.standard_error.push_back(se);
    report.agrees.push_back(std::abs(v - closed) <= 3.0 * se + 1e-12);
  }
  report.increasing = true;
  for (std::size_t i = 1; i < report.empirical.size(); ++i) {
    report.increasing = report.increasing && report.empirical[i] > report.empirical[i - 1];
  }
  report.passed = report.increasing;
  for (bool a : report.agrees) report.passed = report.passed && a;
  return report;
}

std::string VarianceCheckReport::to_json() const {
  nlohmann::json j;
  j["levels"] = levels;
  j["empirical_variance"] = empirical;
  j["closed_form_variance"] = closed_form;
  j["standard_error"] = standard_error;
  j["agrees"] = agrees;
  j["increasing"] = increasing;
  j["passed"] = passed;
  return j.dump(2);
}

}  // namespace rashomon
