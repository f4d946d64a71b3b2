#include "rashomon/noise.hpp"

#include <cmath>

#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/rng.hpp"

namespace rashomon {
namespace {

using nlohmann::json;

void check_rho(double rho, const char* what) {
  require(rho >= 0.0 && rho < 0.5, ErrorCode::kOutOfRange,
          std::string(what) + " must lie in [0, 0.5), got " + std::to_string(rho));
}

Provenance noted(const Dataset& d, const NoiseSpec& spec) {
  return Provenance{spec.seed, d.provenance().noise.empty() ? spec.to_json()
                                                            : d.provenance().noise + ";" + spec.to_json()};
}

}  // namespace

NoiseSpec NoiseSpec::uniform_flip(double rho, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::kUniformFlip;
  s.rho = rho;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::per_sample_flip(std::vector<double> rho_vector, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::kPerSampleFlip;
  s.rho_vector = std::move(rho_vector);
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::margin_shift(double k, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::kMarginShift;
  s.k = k;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::additive_attribute(double lambda, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = NoiseKind::kAdditiveAttribute;
  s.lambda = lambda;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::attribute_negation(double rho_a, std::uint64_t seed,
                                        std::vector<std::size_t> feature_indices) {
  NoiseSpec s;
  s.kind = NoiseKind::kAttributeNegation;
  s.rho_a = rho_a;
  s.seed = seed;
  s.feature_indices = std::move(feature_indices);
  return s;
}

void NoiseSpec::validate() const {
  switch (kind) {
    case NoiseKind::kUniformFlip:
      check_rho(rho, "rho");
      break;
    case NoiseKind::kPerSampleFlip:
      for (double r : rho_vector) check_rho(r, "rho_vector entry");
      break;
    case NoiseKind::kMarginShift:
      require(k > 0.0 && k <= 1.0, ErrorCode::kOutOfRange, "k must lie in (0, 1]");
      break;
    case NoiseKind::kAdditiveAttribute:
      require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
      break;
    case NoiseKind::kAttributeNegation:
      require(rho_a >= 0.0 && rho_a <= 1.0, ErrorCode::kOutOfRange, "rho_a must lie in [0, 1]");
      break;
  }
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kUniformFlip: return "uniform_flip";
    case NoiseKind::kPerSampleFlip: return "per_sample_flip";
    case NoiseKind::kMarginShift: return "margin_shift";
    case NoiseKind::kAdditiveAttribute: return "additive_attribute";
    case NoiseKind::kAttributeNegation: return "attribute_negation";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  for (auto k : {NoiseKind::kUniformFlip, NoiseKind::kPerSampleFlip, NoiseKind::kMarginShift,
                 NoiseKind::kAdditiveAttribute, NoiseKind::kAttributeNegation}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kConfig, "unknown noise kind '" + name + "'");
}

std::string NoiseSpec::to_json() const {
  json j;
  j["kind"] = to_string(kind);
  switch (kind) {
    case NoiseKind::kUniformFlip: j["rho"] = rho; break;
    case NoiseKind::kPerSampleFlip: j["rho_vector"] = rho_vector; break;
    case NoiseKind::kMarginShift: j["k"] = k; break;
    case NoiseKind::kAdditiveAttribute: j["lambda"] = lambda; break;
    case NoiseKind::kAttributeNegation:
      j["rho_a"] = rho_a;
      if (!feature_indices.empty()) j["feature_indices"] = feature_indices;
      break;
  }
  j["seed"] = seed;
  return j.dump();
}

NoiseSpec NoiseSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("noise spec is not valid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("kind"), ErrorCode::kConfig, "noise spec needs a 'kind'");
  NoiseSpec s;
  s.kind = noise_kind_from_string(j.at("kind").get<std::string>());
  s.seed = j.value("seed", std::uint64_t{0});
  const char* active = nullptr;
  switch (s.kind) {
    case NoiseKind::kUniformFlip: active = "rho"; break;
    case NoiseKind::kPerSampleFlip: active = "rho_vector"; break;
    case NoiseKind::kMarginShift: active = "k"; break;
    case NoiseKind::kAdditiveAttribute: active = "lambda"; break;
    case NoiseKind::kAttributeNegation: active = "rho_a"; break;
  }
  for (const char* key : {"rho", "rho_vector", "k", "lambda", "rho_a"}) {
    const bool is_active = std::string(key) == active;
    require(j.contains(key) == is_active, ErrorCode::kConfig,
            is_active ? std::string("noise spec missing '") + key + "'"
                      : std::string("noise spec field '") + key + "' does not belong to kind " + to_string(s.kind));
  }
  try {
    switch (s.kind) {
      case NoiseKind::kUniformFlip: s.rho = j.at("rho").get<double>(); break;
      case NoiseKind::kPerSampleFlip: s.rho_vector = j.at("rho_vector").get<std::vector<double>>(); break;
      case NoiseKind::kMarginShift: s.k = j.at("k").get<double>(); break;
      case NoiseKind::kAdditiveAttribute: s.lambda = j.at("lambda").get<double>(); break;
      case NoiseKind::kAttributeNegation:
        s.rho_a = j.at("rho_a").get<double>();
        if (j.contains("feature_indices")) s.feature_indices = j["feature_indices"].get<std::vector<std::size_t>>();
        break;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("noise spec field has wrong type: ") + e.what());
  }
  s.validate();
  return s;
}

Dataset flip_labels_uniform(const Dataset& d, double rho, std::uint64_t seed) {
  check_rho(rho, "rho");
  const std::size_t n = d.n();
  Labels y = d.labels();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    StreamRng rng(seed, StreamTag::kLabelFlip, i);
    if (rng.bernoulli(rho)) y[i] ^= 1u;
  }
  return d.with_labels(std::move(y), noted(d, NoiseSpec::uniform_flip(rho, seed)));
}

Dataset flip_labels_per_sample(const Dataset& d, const std::vector<double>& rho_vector, std::uint64_t seed) {
  require(rho_vector.size() == d.n(), ErrorCode::kLengthMismatch,
          "rho_vector has " + std::to_string(rho_vector.size()) + " entries, n = " + std::to_string(d.n()));
  for (double r : rho_vector) check_rho(r, "rho_vector entry");
  const std::size_t n = d.n();
  Labels y = d.labels();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    StreamRng rng(seed, StreamTag::kPerSampleFlip, i);
    if (rng.bernoulli(rho_vector[i])) y[i] ^= 1u;
  }
  return d.with_labels(std::move(y), noted(d, NoiseSpec::per_sample_flip(rho_vector, seed)));
}

Dataset add_attribute_noise(const Dataset& d, double lambda, std::uint64_t seed) {
  require(lambda >= 0.0, ErrorCode::kOutOfRange, "lambda must be non-negative");
  Matrix x = d.features();
  const double sd = std::sqrt(lambda);
  const auto n = x.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    StreamRng rng(seed, StreamTag::kAttributeNoise, static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) += sd * rng.normal();
  }
  return d.with_features(std::move(x), noted(d, NoiseSpec::additive_attribute(lambda, seed)));
}

Dataset negate_attributes(const Dataset& d, const std::vector<std::size_t>& feature_indices, double rho_a,
                          std::uint64_t seed) {
  require(d.binary_flag(), ErrorCode::kNonBinaryData, "attribute negation needs binary features");
  require(rho_a >= 0.0 && rho_a <= 1.0, ErrorCode::kOutOfRange, "rho_a must lie in [0, 1]");
  std::vector<bool> selected(d.m(), feature_indices.empty());
  for (auto j : feature_indices) {
    require(j < d.m(), ErrorCode::kOutOfRange, "feature index " + std::to_string(j) + " out of range");
    selected[j] = true;
  }
  Matrix x = d.features();
  const auto n = x.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    StreamRng rng(seed, StreamTag::kAttributeNegation, static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double u = rng.uniform();  // drawn for every column so selection does not shift streams
      if (selected[static_cast<std::size_t>(j)] && u < rho_a) x(i, j) = 1.0 - x(i, j);
    }
  }
  return d.with_features(std::move(x), noted(d, NoiseSpec::attribute_negation(rho_a, seed, feature_indices)));
}

Dataset gen_gaussian_pair(const GaussianPairSpec& spec) {
  require(spec.dims >= 1, ErrorCode::kInvalidArgument, "dims must be at least 1");
  require(spec.n_per_class >= 1, ErrorCode::kInvalidArgument, "n_per_class must be positive");
  require(spec.mu_neg.size() == spec.dims && spec.mu_pos.size() == spec.dims, ErrorCode::kLengthMismatch,
          "mean vectors must have length dims");
  const std::size_t n = 2 * spec.n_per_class;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(spec.dims));
  Labels y(n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i >= spec.n_per_class;
    const auto& mu = positive ? spec.mu_pos : spec.mu_neg;
    StreamRng rng(spec.seed, StreamTag::kGaussianPair, i);
    for (std::size_t j = 0; j < spec.dims; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mu[j] + rng.normal();
    }
    y[i] = positive ? 1 : 0;
  }
  return Dataset(std::move(x), std::move(y), {}, Provenance{spec.seed, ""});
}

GaussianPairSpec margin_shift(const GaussianPairSpec& spec, double k) {
  require(k > 0.0 && k <= 1.0, ErrorCode::kOutOfRange, "k must lie in (0, 1]");
  require(spec.mu_neg.size() == spec.mu_pos.size(), ErrorCode::kLengthMismatch, "mean vectors differ in length");
  GaussianPairSpec out = spec;
  for (std::size_t j = 0; j < spec.mu_pos.size(); ++j) {
    out.mu_pos[j] = spec.mu_neg[j] + k * (spec.mu_pos[j] - spec.mu_neg[j]);
  }
  return out;
}

Dataset apply_noise(const Dataset& d, const NoiseSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::kUniformFlip: return flip_labels_uniform(d, spec.rho, spec.seed);
    case NoiseKind::kPerSampleFlip: return flip_labels_per_sample(d, spec.rho_vector, spec.seed);
    case NoiseKind::kAdditiveAttribute: return add_attribute_noise(d, spec.lambda, spec.seed);
    case NoiseKind::kAttributeNegation:
      return negate_attributes(d, spec.feature_indices, spec.rho_a, spec.seed);
    case NoiseKind::kMarginShift: break;
  }
  throw Error(ErrorCode::kGeneratorMismatch, "margin_shift acts on a Gaussian-pair generator, not a dataset");
}

}  // namespace rashomon
