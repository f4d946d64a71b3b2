#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rashomon/dataset.hpp"

namespace rashomon {

enum class NoiseKind { kUniformFlip, kPerSampleFlip, kMarginShift, kAdditiveAttribute, kAttributeNegation };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kUniformFlip;
  double rho = 0.0;
  std::vector<double> rho_vector;
  double k = 1.0;
  double lambda = 0.0;
  double rho_a = 0.0;
  std::vector<std::size_t> feature_indices;  // AttributeNegation; empty means all
  std::uint64_t seed = 0;

  static NoiseSpec uniform_flip(double rho, std::uint64_t seed);
  static NoiseSpec per_sample_flip(std::vector<double> rho_vector, std::uint64_t seed);
  static NoiseSpec margin_shift(double k, std::uint64_t seed);
  static NoiseSpec additive_attribute(double lambda, std::uint64_t seed);
  static NoiseSpec attribute_negation(double rho_a, std::uint64_t seed,
                                      std::vector<std::size_t> feature_indices = {});

  void validate() const;
  bool is_label_noise() const noexcept {
    return kind == NoiseKind::kUniformFlip || kind == NoiseKind::kPerSampleFlip;
  }
  // Serialized form carries only the active kind's fields.
  std::string to_json() const;
  static NoiseSpec from_json(const std::string& text);
};

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

struct GaussianPairSpec {
  std::size_t dims = 1;
  std::vector<double> mu_neg;
  std::vector<double> mu_pos;
  std::size_t n_per_class = 1;
  std::uint64_t seed = 0;
};

Dataset flip_labels_uniform(const Dataset& d, double rho, std::uint64_t seed);
Dataset flip_labels_per_sample(const Dataset& d, const std::vector<double>& rho_vector, std::uint64_t seed);
Dataset add_attribute_noise(const Dataset& d, double lambda, std::uint64_t seed);
// Empty feature_indices selects every feature.
Dataset negate_attributes(const Dataset& d, const std::vector<std::size_t>& feature_indices, double rho_a,
                          std::uint64_t seed);

// Rows 0..n_per_class-1 are the negative class, the rest positive.
Dataset gen_gaussian_pair(const GaussianPairSpec& spec);
// Contracts the positive mean toward the negative one: mu_pos <- mu_neg + k (mu_pos - mu_neg).
GaussianPairSpec margin_shift(const GaussianPairSpec& spec, double k);

// Dispatches on spec.kind for dataset-level noise; MarginShift lives on the generator.
Dataset apply_noise(const Dataset& d, const NoiseSpec& spec);

}  // namespace rashomon
