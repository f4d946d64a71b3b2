#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rashomon/bigint.hpp"
#include "rashomon/dataset.hpp"
#include "rashomon/losses.hpp"
#include "rashomon/pattern.hpp"

namespace rashomon {

struct LinearConfig {
  // Achievability: logistic descent with step step_scale / L, L the gradient Lipschitz constant.
  std::size_t max_iterations = 400;
  double step_scale = 1.0;
  double tolerance = 1e-12;
  // Resolve cap hits with an exact phase-1 simplex instead of answering "unachievable".
  bool exact_fallback = true;
  // Discard pre-pass.
  std::size_t discard_iterations = 300;
  int penalty_rounds = 6;
  bool certify_discards = true;
  // Enumeration limits.
  std::size_t max_n = 40;
  std::size_t max_queue = std::size_t{1} << 22;
  bool includes_intercept = false;
};

// A linear model with intercept reaching training accuracy 1 on (x, y), if one exists.
std::optional<LinearModel> separating_model(const Matrix& x, const Labels& y, const LinearConfig& config = {});
bool achievable(const Matrix& x, const Labels& y, const LinearConfig& config = {});

// Exact strict-separability test: phase-1 simplex on s_i (w.x_i + b) >= 1.
std::optional<LinearModel> lp_separating_model(const Matrix& x, const Labels& y);

// Unregularized logistic regression by gradient descent.
LinearModel fit_logistic(const Matrix& x, const Labels& y, std::size_t iterations);

struct ErmResult {
  LinearModel model;
  std::size_t mistakes = 0;
  double loss = 0.0;
  Pattern predictions;
};

// Exact 0-1 ERM over linear models: the logistic fit bounds the optimum from
// above, a budgeted existence search closes the gap.
ErmResult linear_erm(const Dataset& d, const LinearConfig& config = {});

// Mistake budget floor(n (L + theta)), shared by the search and the discard test.
std::size_t linear_budget(std::size_t erm_mistakes, std::size_t n, double theta);

struct DiscardResult {
  std::vector<std::size_t> fixed_samples;
  std::vector<std::size_t> free_samples;
  Labels fixed_labels;
  std::size_t divergent = 0;  // samples left free after a non-finite optimizer run
};

DiscardResult discard_points(const Dataset& d, double theta, const ErmResult& erm, const LinearConfig& config = {});

std::vector<std::size_t> order_samples(const std::vector<std::size_t>& free, const LinearModel& erm_model,
                                       const Dataset& d);

struct PatternSetResult {
  std::vector<Pattern> patterns;  // sorted, in original sample order
  double erm_loss = 0.0;
  std::size_t erm_mistakes = 0;
  double theta = 0.0;
  std::size_t budget = 0;
  BigInt denominator;
  BigRational pattern_ratio;
  DiscardResult discard;
  std::vector<std::size_t> search_order;

  std::string to_json() const;
};

PatternSetResult branch_and_bound_patterns(const Dataset& d, double theta, const LinearConfig& config = {});

// Cover's count of dichotomies of n points in general position by affine
// separators in R^m: 2 sum_{i=0}^{m} C(n-1, i).
BigInt cover_pattern_count(std::size_t n, std::size_t m, bool includes_intercept = false);

namespace detail {

// Budgeted existence search used by the ERM pre-pass and discard certification.
// forced: optional (sample, label) that every candidate must carry.
std::optional<Labels> find_labeling_within(const Dataset& d, std::size_t budget, const LinearConfig& config,
                                           std::optional<std::pair<std::size_t, std::uint8_t>> forced = {});

// A labeled prefix of the search order plus a model realizing it.
struct Prefix {
  Labels labels;
  std::size_t mistakes = 0;
  LinearModel witness;
};

struct SearchSetup {
  std::vector<std::size_t> order;
  Matrix ordered_x;  // rows of d permuted into search order
  Labels ordered_y;
  Prefix root;       // the fixed samples with their fixed labels
  std::size_t budget = 0;
};

SearchSetup prepare_search(const Dataset& d, double theta, const LinearConfig& config, PatternSetResult& result);

// Appends `label` for the next sample in order; empty if over budget or unachievable.
std::optional<Prefix> extend(const Prefix& parent, std::uint8_t label, const SearchSetup& setup,
                             const LinearConfig& config);

void finish_search(const Dataset& d, const SearchSetup& setup, const std::vector<Prefix>& finals,
                   const LinearConfig& config, PatternSetResult& result);

}  // namespace detail

}  // namespace rashomon
