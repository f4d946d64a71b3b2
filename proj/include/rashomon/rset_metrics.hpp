#pragma once

#include <cstddef>
#include <vector>

#include "rashomon/bigint.hpp"
#include "rashomon/dataset.hpp"
#include "rashomon/pattern.hpp"

namespace rashomon {

using AgreementVector = std::vector<double>;

// Mean Hamming distance over ordered pairs (self-pairs included), divided by n.
double pattern_diversity(const std::vector<Pattern>& patterns);
double pattern_diversity_from_agreement(const AgreementVector& a);
AgreementVector sample_agreement(const std::vector<Pattern>& patterns, const Labels& labels);

double diversity_upper_bound(double erm_loss, double theta);
// sum_{k=1}^{ceil(n (L + theta))} C(n, k), the upper index capped at n.
BigInt pattern_count_bound(std::size_t n, double erm_loss, double theta);

double expected_pairwise_disagreement(const std::vector<Pattern>& patterns, const std::vector<double>& weights);

}  // namespace rashomon
