#include "rashomon/rset_metrics.hpp"

#include <cmath>

#include "rashomon/error.hpp"

namespace rashomon {
namespace {

void check_lengths(const std::vector<Pattern>& patterns) {
  for (const auto& p : patterns) {
    require(p.size() == patterns.front().size(), ErrorCode::kLengthMismatch, "patterns differ in length");
  }
}

}  // namespace

double pattern_diversity(const std::vector<Pattern>& patterns) {
  if (patterns.size() <= 1) return 0.0;
  check_lengths(patterns);
  const std::size_t count = patterns.size();
  const auto pairs = static_cast<std::ptrdiff_t>(count);
  unsigned long long total = 0;
  // Only j < k is computed; ordered pairs double it and self-pairs add nothing.
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::ptrdiff_t j = 0; j < pairs; ++j) {
    for (std::size_t k = static_cast<std::size_t>(j) + 1; k < count; ++k) {
      total += patterns[static_cast<std::size_t>(j)].hamming(patterns[k]);
    }
  }
  const double n = static_cast<double>(patterns.front().size());
  const double pi = static_cast<double>(count);
  return 2.0 * static_cast<double>(total) / (n * pi * pi);
}

double pattern_diversity_from_agreement(const AgreementVector& a) {
  require(!a.empty(), ErrorCode::kInvalidArgument, "agreement vector is empty");
  double total = 0.0;
  for (double v : a) {
    require(v >= 0.0 && v <= 1.0, ErrorCode::kOutOfRange, "agreement entries must lie in [0, 1]");
    total += v * (1.0 - v);
  }
  return 2.0 * total / static_cast<double>(a.size());
}

AgreementVector sample_agreement(const std::vector<Pattern>& patterns, const Labels& labels) {
  require(!patterns.empty(), ErrorCode::kInvalidArgument, "sample agreement needs at least one pattern");
  check_lengths(patterns);
  require(patterns.front().size() == labels.size(), ErrorCode::kLengthMismatch, "patterns and labels differ in length");
  std::vector<std::size_t> correct(labels.size(), 0);
  for (const auto& p : patterns) {
    for (std::size_t i = 0; i < labels.size(); ++i) correct[i] += (p[i] ? 1u : 0u) == labels[i];
  }
  AgreementVector a(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    a[i] = static_cast<double>(correct[i]) / static_cast<double>(patterns.size());
  }
  return a;
}

double diversity_upper_bound(double erm_loss, double theta) {
  const double l = erm_loss + theta;
  return 2.0 * l * (1.0 - l) + 2.0 * theta;
}

BigInt pattern_count_bound(std::size_t n, double erm_loss, double theta) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
  const double raw = static_cast<double>(n) * (erm_loss + theta);
  const std::size_t top = raw >= static_cast<double>(n) ? n : static_cast<std::size_t>(std::ceil(raw - 1e-9));
  BigInt total = 0;
  for (std::size_t k = 1; k <= top; ++k) total += binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
  return total;
}

double expected_pairwise_disagreement(const std::vector<Pattern>& patterns, const std::vector<double>& weights) {
  require(patterns.size() == weights.size(), ErrorCode::kLengthMismatch, "one weight per pattern required");
  if (patterns.empty()) return 0.0;
  check_lengths(patterns);
  double sum = 0.0;
  for (double w : weights) {
    require(w >= 0.0, ErrorCode::kOutOfRange, "weights must be non-negative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::kInvalidArgument, "weights must sum to 1");
  double total = 0.0;
  for (std::size_t j = 0; j < patterns.size(); ++j) {
    for (std::size_t k = j + 1; k < patterns.size(); ++k) {
      total += 2.0 * weights[j] * weights[k] * static_cast<double>(patterns[j].hamming(patterns[k]));
    }
  }
  return total / static_cast<double>(patterns.front().size());
}

}  // namespace rashomon
