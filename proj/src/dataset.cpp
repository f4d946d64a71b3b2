#include "rashomon/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "rashomon/error.hpp"
#include "rashomon/rng.hpp"

namespace rashomon {
namespace {

bool all_binary(const Matrix& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x.data()[i];
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  s = s.substr(b, e - b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  if (*first == '+') ++first;
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed, StreamTag tag) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  StreamRng rng(seed, tag, 0);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace

Dataset::Dataset(Matrix features, Labels labels, std::vector<std::string> feature_names,
                 Provenance provenance)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      names_(std::move(feature_names)),
      provenance_(std::move(provenance)) {
  require(features_.rows() >= 1, ErrorCode::kInvalidArgument, "dataset needs n >= 1");
  require(features_.cols() >= 1, ErrorCode::kInvalidArgument, "dataset needs m >= 1");
  require(labels_.size() == n(), ErrorCode::kLengthMismatch, "labels length differs from rows");
  for (auto y : labels_) require(y <= 1, ErrorCode::kInvalidArgument, "labels must be 0 or 1");
  if (names_.empty()) {
    for (std::size_t j = 0; j < m(); ++j) names_.push_back("x" + std::to_string(j));
  }
  require(names_.size() == m(), ErrorCode::kLengthMismatch, "feature_names length differs from m");
  binary_ = all_binary(features_);
}

Dataset Dataset::with_labels(Labels labels, Provenance provenance) const {
  return Dataset(features_, std::move(labels), names_, std::move(provenance));
}

Dataset Dataset::with_features(Matrix features, Provenance provenance) const {
  return Dataset(std::move(features), labels_, names_, std::move(provenance));
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  Labels y(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r] < n(), ErrorCode::kOutOfRange, "row index out of range");
    x.row(static_cast<Eigen::Index>(r)) = features_.row(static_cast<Eigen::Index>(rows[r]));
    y[r] = labels_[rows[r]];
  }
  return Dataset(std::move(x), std::move(y), names_, provenance_);
}

Dataset Dataset::select_features(const std::vector<std::size_t>& columns) const {
  Matrix x(features_.rows(), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> names;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require(columns[c] < m(), ErrorCode::kOutOfRange, "feature index out of range");
    x.col(static_cast<Eigen::Index>(c)) = features_.col(static_cast<Eigen::Index>(columns[c]));
    names.push_back(names_[columns[c]]);
  }
  return Dataset(std::move(x), labels_, std::move(names), provenance_);
}

bool Dataset::operator==(const Dataset& other) const {
  return features_.rows() == other.features_.rows() && features_.cols() == other.features_.cols() &&
         features_ == other.features_ && labels_ == other.labels_ && names_ == other.names_;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  require(std::filesystem::exists(path), ErrorCode::kMissingFile, "no such file: " + path);
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_row(line);
      break;
    }
  }
  require(!header.empty(), ErrorCode::kEmptyFile, path + " has no header row");

  const auto label_it = std::find(header.begin(), header.end(), label_column);
  require(label_it != header.end(), ErrorCode::kMissingColumn,
          "label column '" + label_column + "' not in header");
  const auto label_pos = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_pos) names.push_back(header[c]);
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    require(cells.size() == header.size(), ErrorCode::kLengthMismatch,
            "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                " cells, header has " + std::to_string(header.size()));
    std::vector<double> row;
    row.reserve(names.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_pos) continue;
      double v = 0.0;
      require(parse_double(cells[c], v), ErrorCode::kNonNumericCell,
              "line " + std::to_string(line_no) + " column '" + header[c] + "': '" + cells[c] + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
    raw_labels.push_back(cells[label_pos]);
  }
  require(!rows.empty(), ErrorCode::kEmptyFile, path + " has no data rows");
  require(!names.empty(), ErrorCode::kInvalidArgument, path + " has no feature columns");

  const std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  require(distinct.size() == 2, ErrorCode::kLabelCardinality,
          "label column has " + std::to_string(distinct.size()) + " distinct values, need 2");
  const std::string& zero = *distinct.begin();

  Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  Labels y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    y[i] = raw_labels[i] == zero ? 0 : 1;
  }
  return Dataset(std::move(x), std::move(y), std::move(names));
}

void write_csv(const Dataset& d, const std::string& path, const std::string& label_column) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  for (const auto& name : d.feature_names()) out << name << ',';
  out << label_column << '\n';
  char buf[32];
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.m(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d.x(i, j));
      out << buf << ',';
    }
    out << static_cast<int>(d.y(i)) << '\n';
  }
  require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + path);
}

std::vector<double> column_medians(const Dataset& d) {
  std::vector<double> medians(d.m());
  std::vector<double> column(d.n());
  for (std::size_t j = 0; j < d.m(); ++j) {
    for (std::size_t i = 0; i < d.n(); ++i) column[i] = d.x(i, j);
    std::sort(column.begin(), column.end());
    const std::size_t h = column.size() / 2;
    medians[j] = column.size() % 2 ? column[h] : 0.5 * (column[h - 1] + column[h]);
  }
  return medians;
}

Dataset binarize(const Dataset& d, const Thresholds& thresholds) {
  const std::vector<double> t = std::holds_alternative<MedianThreshold>(thresholds)
                                    ? column_medians(d)
                                    : std::get<std::vector<double>>(thresholds);
  require(t.size() == d.m(), ErrorCode::kLengthMismatch,
          "threshold vector has " + std::to_string(t.size()) + " entries, m = " + std::to_string(d.m()));
  Matrix x(d.features().rows(), d.features().cols());
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.m(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d.x(i, j) > t[j] ? 1.0 : 0.0;
    }
  }
  return d.with_features(std::move(x), d.provenance());
}

Dataset min_max_scale(const Dataset& d) {
  Matrix x = d.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double lo = x.col(j).minCoeff();
    const double hi = x.col(j).maxCoeff();
    if (hi > lo) {
      x.col(j) = (x.col(j).array() - lo) / (hi - lo);
    } else {
      x.col(j).setZero();
    }
  }
  return d.with_features(std::move(x), d.provenance());
}

IndexSplit split_indices(std::size_t n, const SplitSpec& s) {
  require(s.validation_fraction > 0.0 && s.validation_fraction < 1.0, ErrorCode::kInvalidArgument,
          "validation_fraction must lie in (0, 1)");
  require(s.validation_fraction * static_cast<double>(n) >= 1.0, ErrorCode::kInvalidArgument,
          "validation_fraction * n must be at least 1");
  auto perm = permutation(n, s.seed, StreamTag::kSplit);
  auto n_val = static_cast<std::size_t>(std::llround(s.validation_fraction * static_cast<double>(n)));
  n_val = std::clamp<std::size_t>(n_val, 1, n > 1 ? n - 1 : 1);
  IndexSplit out;
  out.validation.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_val));
  out.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_val), perm.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.train.begin(), out.train.end());
  return out;
}

std::vector<IndexSplit> fold_indices(std::size_t n, const SplitSpec& s) {
  require(s.fold_count >= 2, ErrorCode::kInvalidArgument, "fold_count must be at least 2");
  require(s.fold_count <= n, ErrorCode::kInvalidArgument,
          "fold_count " + std::to_string(s.fold_count) + " exceeds n = " + std::to_string(n));
  const auto perm = permutation(n, s.seed, StreamTag::kFolds);
  const std::size_t k = s.fold_count;
  std::vector<IndexSplit> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    std::vector<bool> in_fold(n, false);
    for (std::size_t p = start; p < start + size; ++p) in_fold[perm[p]] = true;
    for (std::size_t i = 0; i < n; ++i) (in_fold[i] ? folds[f].validation : folds[f].train).push_back(i);
    start += size;
  }
  return folds;
}

std::pair<Dataset, Dataset> split(const Dataset& d, const SplitSpec& s) {
  const auto idx = split_indices(d.n(), s);
  return {d.subset(idx.train), d.subset(idx.validation)};
}

std::vector<std::pair<Dataset, Dataset>> k_folds(const Dataset& d, const SplitSpec& s) {
  std::vector<std::pair<Dataset, Dataset>> out;
  for (const auto& f : fold_indices(d.n(), s)) out.emplace_back(d.subset(f.train), d.subset(f.validation));
  return out;
}

}  // namespace rashomon
