#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace rashomon {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Labels = std::vector<std::uint8_t>;

struct Provenance {
  std::uint64_t seed = 0;
  std::string noise;  // JSON of the last NoiseSpec applied, empty if clean
};

class Dataset {
 public:
  Dataset(Matrix features, Labels labels, std::vector<std::string> feature_names = {},
          Provenance provenance = {});

  std::size_t n() const noexcept { return static_cast<std::size_t>(features_.rows()); }
  std::size_t m() const noexcept { return static_cast<std::size_t>(features_.cols()); }
  const Matrix& features() const noexcept { return features_; }
  const Labels& labels() const noexcept { return labels_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  bool binary_flag() const noexcept { return binary_; }

  double x(std::size_t i, std::size_t j) const { return features_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  std::uint8_t y(std::size_t i) const { return labels_[i]; }

  Dataset with_labels(Labels labels, Provenance provenance) const;
  Dataset with_features(Matrix features, Provenance provenance) const;
  Dataset subset(const std::vector<std::size_t>& rows) const;
  Dataset select_features(const std::vector<std::size_t>& columns) const;

  bool operator==(const Dataset& other) const;

 private:
  Matrix features_;
  Labels labels_;
  std::vector<std::string> names_;
  Provenance provenance_;
  bool binary_ = false;
};

Dataset load_csv(const std::string& path, const std::string& label_column);
void write_csv(const Dataset& d, const std::string& path, const std::string& label_column = "label");

struct MedianThreshold {};
using Thresholds = std::variant<std::vector<double>, MedianThreshold>;

// Feature j becomes 1[x_ij > t_j]. Median uses the mean of the middle two for even n.
Dataset binarize(const Dataset& d, const Thresholds& thresholds);
std::vector<double> column_medians(const Dataset& d);

// Optional normalization of real-valued columns to [0, 1]; constant columns map to 0.
Dataset min_max_scale(const Dataset& d);

struct SplitSpec {
  double validation_fraction = 0.2;
  std::size_t fold_count = 5;
  std::uint64_t seed = 0;
};

struct IndexSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

IndexSplit split_indices(std::size_t n, const SplitSpec& s);
std::vector<IndexSplit> fold_indices(std::size_t n, const SplitSpec& s);

std::pair<Dataset, Dataset> split(const Dataset& d, const SplitSpec& s);
std::vector<std::pair<Dataset, Dataset>> k_folds(const Dataset& d, const SplitSpec& s);

}  // namespace rashomon
