#pragma once
// Generators and brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls into the library's search code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rashomon/dataset.hpp"
#include "rashomon/pattern.hpp"
#include "rashomon/rng.hpp"

namespace testsupport {

using rashomon::Dataset;
using rashomon::Labels;
using rashomon::Matrix;
using rashomon::Pattern;

class Gen {
 public:
  explicit Gen(std::uint64_t seed, std::uint64_t stream = 0) : rng_(seed, rashomon::StreamTag::kTest, stream) {}
  std::size_t size(std::size_t lo, std::size_t hi) { return lo + rng_.below(hi - lo + 1); }
  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * rng_.uniform(); }
  double normal() { return rng_.normal(); }
  bool coin(double p = 0.5) { return rng_.bernoulli(p); }

  Labels labels(std::size_t n, double p = 0.5) {
    Labels y(n);
    for (auto& v : y) v = coin(p) ? 1 : 0;
    return y;
  }
  Matrix binary_matrix(std::size_t n, std::size_t m, double p = 0.5) {
    Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = coin(p) ? 1.0 : 0.0;
    return x;
  }
  Matrix gaussian_matrix(std::size_t n, std::size_t m) {
    Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal();
    return x;
  }
  Dataset binary_dataset(std::size_t n, std::size_t m) { return Dataset(binary_matrix(n, m), labels(n)); }
  // Labels from a random hyperplane with some flips, so ERM loss is small but nonzero.
  Dataset gaussian_dataset(std::size_t n, std::size_t m, double flip = 0.15) {
    Matrix x = gaussian_matrix(n, m);
    Eigen::VectorXd w(static_cast<Eigen::Index>(m));
    for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = normal();
    const double b = 0.3 * normal();
    Labels y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool side = x.row(static_cast<Eigen::Index>(i)).dot(w) + b >= 0.0;
      y[i] = (side != coin(flip)) ? 1 : 0;
    }
    return Dataset(std::move(x), std::move(y));
  }
  Pattern pattern(std::size_t n) { return Pattern(labels(n)); }
  std::vector<Pattern> pattern_set(std::size_t n, std::size_t count) {
    std::set<std::string> seen;
    std::vector<Pattern> out;
    for (std::size_t t = 0; t < 4 * count && out.size() < count; ++t) {
      Pattern p = pattern(n);
      if (seen.insert(p.to_string()).second) out.push_back(p);
    }
    return out;
  }

 private:
  rashomon::StreamRng rng_;
};

inline std::size_t count_mistakes(const Labels& a, const Labels& b) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) k += a[i] != b[i];
  return k;
}

inline std::size_t budget_for(std::size_t min_mistakes, std::size_t n, double theta) {
  const double raw = std::floor(static_cast<double>(min_mistakes) + static_cast<double>(n) * theta + 1e-9);
  return std::min<std::size_t>(n, static_cast<std::size_t>(raw));
}

// ---------------------------------------------------------------------------
// Trees: explicit structure list and explicit labelings.

struct TreeOracleResult {
  unsigned long long total = 0;
  unsigned long long in_set = 0;
  std::size_t min_mistakes = 0;
  std::set<std::string> patterns;
};

// Every feature assignment to heap-ordered internal nodes with distinct features per path.
inline std::vector<std::vector<int>> tree_structures(int depth, int m) {
  const int internal = (1 << depth) - 1;
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(internal), -1);
  std::function<void(int)> rec = [&](int node) {
    if (node == internal) {
      out.push_back(f);
      return;
    }
    for (int v = 0; v < m; ++v) {
      bool clash = false;
      for (int a = node; a > 0 && !clash;) {
        a = (a - 1) / 2;
        clash = f[static_cast<std::size_t>(a)] == v;
      }
      if (clash) continue;
      f[static_cast<std::size_t>(node)] = v;
      rec(node + 1);
    }
  };
  rec(0);
  return out;
}

inline std::size_t leaf_index(const std::vector<int>& f, int depth, const Dataset& d, std::size_t row) {
  std::size_t node = 0;
  for (int level = 0; level < depth; ++level) {
    const bool right = d.x(row, static_cast<std::size_t>(f[node])) > 0.5;
    node = 2 * node + 1 + (right ? 1 : 0);
  }
  return node - ((std::size_t{1} << depth) - 1);
}

// Exhaustive over structures x all 2^(2^depth) leaf labelings; two passes
// (minimum, then filter) exactly as the set is defined.
inline TreeOracleResult tree_oracle(const Dataset& d, int depth, double theta, bool multiplicative = false) {
  const auto structures = tree_structures(depth, static_cast<int>(d.m()));
  const std::size_t leaves = std::size_t{1} << depth;
  std::vector<std::vector<std::size_t>> leaf_of(structures.size(), std::vector<std::size_t>(d.n()));
  for (std::size_t s = 0; s < structures.size(); ++s)
    for (std::size_t i = 0; i < d.n(); ++i) leaf_of[s][i] = leaf_index(structures[s], depth, d, i);

  auto each = [&](auto&& visit) {
    for (std::size_t s = 0; s < structures.size(); ++s) {
      for (std::size_t lab = 0; lab < (std::size_t{1} << leaves); ++lab) {
        Labels pred(d.n());
        for (std::size_t i = 0; i < d.n(); ++i) pred[i] = (lab >> leaf_of[s][i]) & 1u;
        visit(pred);
      }
    }
  };
  TreeOracleResult r;
  r.min_mistakes = d.n();
  each([&](const Labels& pred) {
    ++r.total;
    r.min_mistakes = std::min(r.min_mistakes, count_mistakes(pred, d.labels()));
  });
  std::size_t budget = 0;
  if (multiplicative) {
    const double raw = std::floor(static_cast<double>(r.min_mistakes) * (1.0 + theta) + 1e-9);
    budget = std::min<std::size_t>(d.n(), static_cast<std::size_t>(raw));
  } else {
    budget = budget_for(r.min_mistakes, d.n(), theta);
  }
  each([&](const Labels& pred) {
    if (count_mistakes(pred, d.labels()) <= budget) {
      ++r.in_set;
      r.patterns.insert(Pattern(pred).to_string());
    }
  });
  return r;
}

// Trees of depth at most d built explicitly, as strings; used to count the
// nested space without the closed-form recursion.
inline std::vector<std::string> trees_up_to(int depth, unsigned used_mask, int m) {
  std::vector<std::string> out{"0", "1"};
  if (depth == 0) return out;
  for (int f = 0; f < m; ++f) {
    if (used_mask >> f & 1u) continue;
    const auto sub = trees_up_to(depth - 1, used_mask | (1u << f), m);
    for (const auto& l : sub)
      for (const auto& r : sub) out.push_back("(" + std::to_string(f) + " " + l + " " + r + ")");
  }
  return out;
}

// Same space counted by pairing explicit subtree lists under each root
// feature; reaches depth 3 without materialising every tree.
inline unsigned long long count_trees_by_pairs(int depth, int m) {
  if (depth == 0) return 2;
  unsigned long long total = 2;
  for (int f = 0; f < m; ++f) {
    const auto sub = trees_up_to(depth - 1, 1u << f, m);
    for (std::size_t l = 0; l < sub.size(); ++l)
      for (std::size_t r = 0; r < sub.size(); ++r) ++total;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Linear separability in general position, via Radon partitions.
//
// A labeling of generic points in R^m is strictly separable by an affine
// hyperplane iff no (m+2)-subset is labeled by its Radon partition. The
// partition of a subset is the sign pattern of its one-dimensional affine
// dependence {c : sum c_i x_i = 0, sum c_i = 0}.

class RadonOracle {
 public:
  explicit RadonOracle(const Matrix& x) : n_(static_cast<std::size_t>(x.rows())) {
    const std::size_t m = static_cast<std::size_t>(x.cols());
    const std::size_t k = m + 2;
    if (n_ < k) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Eigen::MatrixXd a(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(k));
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < m; ++j)
          a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
              x(static_cast<Eigen::Index>(idx[c]), static_cast<Eigen::Index>(j));
        a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = 1.0;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      const Eigen::MatrixXd ker = lu.kernel();
      Entry e;
      if (ker.cols() == 1) {
        const double scale = ker.col(0).cwiseAbs().maxCoeff();
        for (std::size_t c = 0; c < k; ++c) {
          const double v = ker(static_cast<Eigen::Index>(c), 0) / scale;
          if (std::abs(v) < 1e-9) {
            degenerate_ = true;
          } else if (v > 0) {
            e.pos |= std::uint64_t{1} << idx[c];
          } else {
            e.neg |= std::uint64_t{1} << idx[c];
          }
        }
      } else {
        degenerate_ = true;
      }
      subsets_.push_back(e);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n_ - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  bool degenerate() const noexcept { return degenerate_; }

  bool separable(std::uint64_t ones) const {
    for (const auto& e : subsets_) {
      const bool pos_one = (ones & e.pos) == e.pos;
      const bool pos_zero = (ones & e.pos) == 0;
      const bool neg_one = (ones & e.neg) == e.neg;
      const bool neg_zero = (ones & e.neg) == 0;
      if ((pos_one && neg_zero) || (pos_zero && neg_one)) return false;
    }
    return true;
  }

 private:
  struct Entry {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
  };
  std::size_t n_;
  std::vector<Entry> subsets_;
  bool degenerate_ = false;
};

inline Labels bits_to_labels(std::uint64_t ones, std::size_t n) {
  Labels y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (ones >> i) & 1u;
  return y;
}

struct LinearOracleResult {
  std::size_t min_mistakes = 0;
  std::size_t budget = 0;
  std::set<std::string> patterns;
};

// Exhaustive filter over all 2^n labelings.
inline LinearOracleResult linear_oracle(const Dataset& d, double theta) {
  const std::size_t n = d.n();
  RadonOracle radon(d.features());
  std::vector<std::uint64_t> separable;
  for (std::uint64_t ones = 0; ones < (std::uint64_t{1} << n); ++ones)
    if (radon.separable(ones)) separable.push_back(ones);
  LinearOracleResult r;
  r.min_mistakes = n;
  for (auto s : separable) r.min_mistakes = std::min(r.min_mistakes, count_mistakes(bits_to_labels(s, n), d.labels()));
  r.budget = budget_for(r.min_mistakes, n, theta);
  for (auto s : separable) {
    const Labels y = bits_to_labels(s, n);
    if (count_mistakes(y, d.labels()) <= r.budget) r.patterns.insert(Pattern(y).to_string());
  }
  return r;
}

// 1-D: achievable labelings of distinct points are exactly the threshold rules
// 1[x >= t] and 1[x < t], constants included.
inline std::set<std::string> threshold_patterns(const std::vector<double>& x) {
  std::vector<double> cuts{-1e300, 1e300};
  for (double v : x) cuts.push_back(v);
  std::set<std::string> out;
  for (double t : cuts) {
    Labels up(x.size()), down(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      up[i] = x[i] >= t ? 1 : 0;
      down[i] = 1 - up[i];
    }
    out.insert(Pattern(up).to_string());
    out.insert(Pattern(down).to_string());
  }
  return out;
}

inline std::set<std::string> as_strings(const std::vector<Pattern>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.to_string());
  return out;
}

}  // namespace testsupport
