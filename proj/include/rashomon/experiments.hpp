#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rashomon/dataset.hpp"
#include "rashomon/linear_patterns.hpp"
#include "rashomon/noise.hpp"
#include "rashomon/tree_space.hpp"

namespace rashomon {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMaxExactTreeDepth = 3;

// Tidy table; cells compare numerically when both parse as numbers.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row);
  void sort();
  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  std::size_t column(const std::string& name) const;
  std::string csv(bool deterministic) const;
  void write(const std::string& path, bool deterministic) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt(double v);
std::string fmt(std::size_t v);

struct SyntheticSpec {
  std::string kind = "planted_tree";  // planted_tree | majority | linear_threshold | gaussian_pair
  std::size_t n = 200;
  std::size_t m = 6;
  int depth = 3;
  double label_noise = 0.0;
  double separation = 2.0;  // gaussian_pair: mu_pos = separation * 1, mu_neg = 0
  std::uint64_t seed = 0;
};

struct DatasetSource {
  std::string name;
  std::optional<SyntheticSpec> synthetic;
  std::string path;
  std::string label_column = "label";
  std::string binarize;  // "", "median"
  bool min_max = false;
  std::optional<std::size_t> max_rows;
};

// The fixed depth-3 tree used for the practitioner-path simulation.
FittedTree planted_tree(int depth);
Dataset make_synthetic(const SyntheticSpec& spec);
Dataset load_source(const DatasetSource& source, const std::string& base_dir = "");

struct CvSpec {
  std::size_t folds = 5;
  std::size_t splits = 5;
  double validation_fraction = 0.2;
  std::optional<int> fixed_depth;  // defaults to the deepest depth in the list
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::vector<DatasetSource> datasets;
  std::string space = "trees";              // trees | linear
  std::vector<int> depths{1, 2, 3};
  std::vector<std::size_t> feature_subsets; // linear: leading-feature counts
  double theta = 0.05;
  ThetaMode theta_mode = ThetaMode::kAdditive;
  NoiseKind noise_kind = NoiseKind::kUniformFlip;
  std::vector<double> levels{0.0};
  std::size_t draws_per_level = 25;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  CvSpec cv;
  std::size_t pattern_cap = 1'000'000;
  LinearConfig linear;

  void validate() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

Table run_complexity_sweep(const ExperimentConfig& config, const std::string& base_dir = "");
Table run_noise_sweep(const ExperimentConfig& config, const std::string& base_dir = "");
Table run_path_sim(const ExperimentConfig& config, const std::string& base_dir = "");

// Refuses label-noise grids above min(0.25, accuracy - 0.5) of the clean ERM.
void check_noise_cap(const std::vector<double>& levels, double erm_accuracy);

struct MetricsRow {
  std::string dataset;
  double theta = 0.0;
  std::uint64_t draw_seed = 0;
  std::size_t n = 0;
  std::size_t pi = 0;
  double diversity = 0.0;
  double u_div = 0.0;
  double erm_loss = 0.0;
  double agreement_mean = 0.0;
};

MetricsRow summarize_patterns(const std::string& dataset, double theta, std::uint64_t draw_seed,
                              const std::vector<Pattern>& patterns, const Labels& labels, double erm_loss);
Table metrics_table(const std::vector<MetricsRow>& rows);

}  // namespace rashomon
