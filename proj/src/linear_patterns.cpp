#include "rashomon/linear_patterns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "rashomon/error.hpp"

namespace rashomon {
namespace detail {
namespace {

SearchSetup make_setup(const Dataset& d, std::vector<std::size_t> order, std::size_t budget) {
  SearchSetup s;
  s.order = std::move(order);
  s.ordered_x.resize(static_cast<Eigen::Index>(s.order.size()), d.features().cols());
  s.ordered_y.resize(s.order.size());
  for (std::size_t t = 0; t < s.order.size(); ++t) {
    s.ordered_x.row(static_cast<Eigen::Index>(t)) = d.features().row(static_cast<Eigen::Index>(s.order[t]));
    s.ordered_y[t] = d.y(s.order[t]);
  }
  s.budget = budget;
  s.root.witness = LinearModel{Vector::Zero(d.features().cols()), 1.0};
  return s;
}

bool dfs_exists(const SearchSetup& s, const Prefix& node, const LinearConfig& config,
                std::optional<std::uint8_t> forced_first, Prefix& found) {
  const std::size_t t = node.labels.size();
  if (t == s.order.size()) {
    found = node;
    return true;
  }
  const std::uint8_t truth = s.ordered_y[t];
  std::array<std::uint8_t, 2> choices{truth, static_cast<std::uint8_t>(1 - truth)};
  for (auto label : choices) {
    if (t == 0 && forced_first && label != *forced_first) continue;
    if (auto child = extend(node, label, s, config)) {
      if (dfs_exists(s, *child, config, forced_first, found)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Prefix> extend(const Prefix& parent, std::uint8_t label, const SearchSetup& setup,
                             const LinearConfig& config) {
  const std::size_t t = parent.labels.size();
  const std::size_t mistakes = parent.mistakes + (label != setup.ordered_y[t] ? 1 : 0);
  if (mistakes > setup.budget) return std::nullopt;
  Prefix child;
  child.labels = parent.labels;
  child.labels.push_back(label);
  child.mistakes = mistakes;
  if (parent.witness.predict(setup.ordered_x, static_cast<Eigen::Index>(t)) == label) {
    child.witness = parent.witness;
    return child;
  }
  auto model = separating_model(setup.ordered_x.topRows(static_cast<Eigen::Index>(t + 1)), child.labels, config);
  if (!model) return std::nullopt;
  child.witness = std::move(*model);
  return child;
}

std::optional<Labels> find_labeling_within(const Dataset& d, std::size_t budget, const LinearConfig& config,
                                           std::optional<std::pair<std::size_t, std::uint8_t>> forced) {
  std::vector<std::size_t> order(d.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::optional<std::uint8_t> forced_label;
  if (forced) {
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(forced->first),
                order.begin() + static_cast<std::ptrdiff_t>(forced->first) + 1);
    forced_label = forced->second;
  }
  const SearchSetup s = make_setup(d, std::move(order), budget);
  Prefix found;
  if (!dfs_exists(s, s.root, config, forced_label, found)) return std::nullopt;
  Labels out(d.n());
  for (std::size_t t = 0; t < s.order.size(); ++t) out[s.order[t]] = found.labels[t];
  return out;
}

SearchSetup prepare_search(const Dataset& d, double theta, const LinearConfig& config, PatternSetResult& result) {
  require(theta >= 0.0, ErrorCode::kOutOfRange, "theta must be non-negative");
  require(d.n() <= config.max_n, ErrorCode::kCapExceeded,
          "n = " + std::to_string(d.n()) + " exceeds the linear enumeration cap " + std::to_string(config.max_n));
  const ErmResult erm = linear_erm(d, config);
  result.theta = theta;
  result.erm_mistakes = erm.mistakes;
  result.erm_loss = erm.loss;
  result.budget = linear_budget(erm.mistakes, d.n(), theta);
  result.discard = discard_points(d, theta, erm, config);

  std::vector<std::size_t> order = result.discard.fixed_samples;
  const auto rest = order_samples(result.discard.free_samples, erm.model, d);
  order.insert(order.end(), rest.begin(), rest.end());
  result.search_order = order;

  SearchSetup s = make_setup(d, std::move(order), result.budget);
  s.root.labels = result.discard.fixed_labels;
  for (std::size_t t = 0; t < s.root.labels.size(); ++t) s.root.mistakes += s.root.labels[t] != s.ordered_y[t];
  s.root.witness = erm.model;
  return s;
}

void finish_search(const Dataset& d, const SearchSetup& setup, const std::vector<Prefix>& finals,
                   const LinearConfig& config, PatternSetResult& result) {
  result.patterns.clear();
  for (const auto& f : finals) {
    Labels original(d.n());
    for (std::size_t t = 0; t < setup.order.size(); ++t) original[setup.order[t]] = f.labels[t];
    Pattern p(original);
    if (mistakes(p, d.labels()) > result.budget) continue;
    if (!achievable(d.features(), original, config)) continue;
    result.patterns.push_back(std::move(p));
  }
  std::sort(result.patterns.begin(), result.patterns.end());
  result.patterns.erase(std::unique(result.patterns.begin(), result.patterns.end()), result.patterns.end());
  result.denominator = cover_pattern_count(d.n(), d.m(), config.includes_intercept);
  result.pattern_ratio = BigRational(BigInt(result.patterns.size()), result.denominator);
}

}  // namespace detail

std::size_t linear_budget(std::size_t erm_mistakes, std::size_t n, double theta) {
  require(theta >= 0.0, ErrorCode::kOutOfRange, "theta must be non-negative");
  const double raw = static_cast<double>(erm_mistakes) + static_cast<double>(n) * theta;
  if (!(raw < static_cast<double>(n))) return n;
  return static_cast<std::size_t>(std::floor(raw + 1e-9));
}

ErmResult linear_erm(const Dataset& d, const LinearConfig& config) {
  ErmResult erm;
  erm.model = fit_logistic(d.features(), d.labels(), std::max<std::size_t>(config.max_iterations, 2000));
  Pattern pred(erm.model.predict(d.features()));
  erm.mistakes = mistakes(pred, d.labels());
  erm.predictions = std::move(pred);
  for (std::size_t b = 0; b < erm.mistakes; ++b) {
    if (auto labels = detail::find_labeling_within(d, b, config)) {
      auto model = separating_model(d.features(), *labels, config);
      require(model.has_value(), ErrorCode::kOptimizerDivergence, "ERM labeling lost its witness");
      erm.model = std::move(*model);
      erm.predictions = Pattern(*labels);
      erm.mistakes = b;
      break;
    }
  }
  erm.loss = static_cast<double>(erm.mistakes) / static_cast<double>(d.n());
  return erm;
}

namespace {

enum class DiscardOutcome { kFree, kCandidate, kDivergent };

// Minimizes exponential risk with sample k's label flipped, adding a squared
// hinge on k's original margin until the model misclassifies k.
DiscardOutcome flip_and_fit(const Dataset& d, std::size_t k, std::size_t budget, const LinearConfig& config) {
  const Eigen::Index n = static_cast<Eigen::Index>(d.n());
  const Eigen::Index p = static_cast<Eigen::Index>(d.m()) + 1;
  Matrix a(n, p);
  a.leftCols(p - 1) = d.features();
  a.col(p - 1).setOnes();
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = signed_label(d.y(static_cast<std::size_t>(i)));
  const double s_k = s(static_cast<Eigen::Index>(k));
  Vector flipped = s;
  flipped(static_cast<Eigen::Index>(k)) = -s_k;
  const auto a_k = a.row(static_cast<Eigen::Index>(k));

  auto objective = [&](const Vector& z, double mu) {
    const Vector m = flipped.cwiseProduct(a * z);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += std::exp(std::min(-m(i), 700.0));
    const double h = std::max(0.0, s_k * a_k.dot(z));
    return total / static_cast<double>(n) + mu * h * h;
  };
  auto gradient = [&](const Vector& z, double mu) {
    const Vector m = flipped.cwiseProduct(a * z);
    Vector coef(n);
    for (Eigen::Index i = 0; i < n; ++i) coef(i) = -flipped(i) * std::exp(std::min(-m(i), 700.0));
    Vector g = a.transpose() * coef / static_cast<double>(n);
    const double h = std::max(0.0, s_k * a_k.dot(z));
    if (h > 0.0) g += 2.0 * mu * h * s_k * a_k.transpose();
    return g;
  };

  Vector z = Vector::Zero(p);
  double mu = 1.0;
  for (int round = 0; round < config.penalty_rounds; ++round, mu *= 10.0) {
    double f = objective(z, mu);
    for (std::size_t it = 0; it < config.discard_iterations; ++it) {
      const Vector g = gradient(z, mu);
      const double gg = g.squaredNorm();
      if (!std::isfinite(f) || !std::isfinite(gg)) return DiscardOutcome::kDivergent;
      if (gg < 1e-20) break;
      double step = 1.0;
      Vector next = z - step * g;
      double fn = objective(next, mu);
      while (fn > f - 0.5 * step * gg && step > 1e-12) {
        step *= 0.5;
        next = z - step * g;
        fn = objective(next, mu);
      }
      if (!(fn < f)) break;
      z = std::move(next);
      f = fn;
    }
    if (!std::isfinite(f)) return DiscardOutcome::kDivergent;
    const LinearModel model = LinearModel::from_augmented(z);
    if (model.predict(d.features(), static_cast<Eigen::Index>(k)) != d.y(k)) {
      const std::size_t wrong = mistakes(Pattern(model.predict(d.features())), d.labels());
      return wrong <= budget ? DiscardOutcome::kFree : DiscardOutcome::kCandidate;
    }
  }
  return DiscardOutcome::kCandidate;
}

}  // namespace

DiscardResult discard_points(const Dataset& d, double theta, const ErmResult& erm, const LinearConfig& config) {
  require(theta >= 0.0, ErrorCode::kOutOfRange, "theta must be non-negative");
  require(erm.predictions.size() == d.n(), ErrorCode::kLengthMismatch, "ERM predictions do not match dataset");
  const std::size_t budget = linear_budget(erm.mistakes, d.n(), theta);
  const std::size_t n = d.n();
  std::vector<std::uint8_t> fixed(n, 0);
  std::vector<std::uint8_t> divergent(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint8_t erm_label = erm.predictions[k] ? 1 : 0;
    if (erm_label != d.y(k)) continue;  // the ERM itself misclassifies k
    const DiscardOutcome outcome = flip_and_fit(d, k, budget, config);
    if (outcome == DiscardOutcome::kDivergent) {
      divergent[k] = 1;
      continue;
    }
    if (outcome == DiscardOutcome::kFree) continue;
    if (config.certify_discards &&
        detail::find_labeling_within(d, budget, config, std::make_pair(k, static_cast<std::uint8_t>(1 - erm_label)))) {
      continue;
    }
    fixed[k] = 1;
  }
  DiscardResult r;
  for (std::size_t k = 0; k < n; ++k) {
    if (fixed[k]) {
      r.fixed_samples.push_back(k);
      r.fixed_labels.push_back(erm.predictions[k] ? 1 : 0);
    } else {
      r.free_samples.push_back(k);
    }
    r.divergent += divergent[k];
  }
  return r;
}

std::vector<std::size_t> order_samples(const std::vector<std::size_t>& free, const LinearModel& erm_model,
                                       const Dataset& d) {
  const double norm = erm_model.weights.norm();
  std::array<std::vector<std::pair<double, std::size_t>>, 4> buckets;  // TP, FP, TN, FN
  for (auto i : free) {
    const double score = erm_model.score(d.features(), static_cast<Eigen::Index>(i));
    const bool pred = score >= 0.0;
    const bool truth = d.y(i) == 1;
    const int bucket = pred ? (truth ? 0 : 1) : (truth ? 3 : 2);
    const double dist = norm > 0.0 ? std::abs(score) / norm : 0.0;
    buckets[static_cast<std::size_t>(bucket)].emplace_back(dist, i);
  }
  for (auto& b : buckets) std::stable_sort(b.begin(), b.end());
  std::vector<std::size_t> out;
  out.reserve(free.size());
  for (std::size_t round = 0; out.size() < free.size(); ++round) {
    for (const auto& b : buckets) {
      if (round < b.size()) out.push_back(b[round].second);
    }
  }
  return out;
}

PatternSetResult branch_and_bound_patterns(const Dataset& d, double theta, const LinearConfig& config) {
  PatternSetResult result;
  const detail::SearchSetup setup = detail::prepare_search(d, theta, config, result);
  std::vector<detail::Prefix> level{setup.root};
  std::vector<std::optional<detail::Prefix>> slots;
  for (std::size_t t = setup.root.labels.size(); t < setup.order.size(); ++t) {
    slots.assign(2 * level.size(), std::nullopt);
    const auto width = static_cast<std::ptrdiff_t>(slots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < width; ++s) {
      const auto& parent = level[static_cast<std::size_t>(s / 2)];
      slots[static_cast<std::size_t>(s)] = detail::extend(parent, static_cast<std::uint8_t>(s % 2), setup, config);
    }
    level.clear();
    for (auto& slot : slots) {
      if (slot) level.push_back(std::move(*slot));
    }
    require(level.size() <= config.max_queue, ErrorCode::kCapExceeded,
            "search queue exceeded " + std::to_string(config.max_queue) + " prefixes");
  }
  detail::finish_search(d, setup, level, config, result);
  return result;
}

BigInt cover_pattern_count(std::size_t n, std::size_t m, bool includes_intercept) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
  require(m >= 1, ErrorCode::kInvalidArgument, "m must be at least 1");
  const std::size_t dims = includes_intercept ? m - 1 : m;
  BigInt total = 0;
  for (std::size_t i = 0; i <= dims && i <= n - 1; ++i) {
    total += binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(i));
  }
  return 2 * total;
}

std::string PatternSetResult::to_json() const {
  nlohmann::json j;
  std::vector<std::string> bits;
  for (const auto& p : patterns) bits.push_back(p.to_string());
  j["patterns"] = bits;
  j["pattern_count"] = patterns.size();
  j["erm_loss"] = erm_loss;
  j["erm_mistakes"] = erm_mistakes;
  j["theta"] = theta;
  j["mistake_budget"] = budget;
  j["denominator"] = denominator.str();
  j["pattern_ratio"] = to_double(pattern_ratio);
  j["fixed_samples"] = discard.fixed_samples;
  j["free_samples"] = discard.free_samples;
  j["search_order"] = search_order;
  return j.dump(2);
}

}  // namespace rashomon
