#include "rashomon/tree_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "rashomon/error.hpp"
#include "rashomon/losses.hpp"

namespace rashomon {
namespace {

using Count = unsigned __int128;
using Poly = std::vector<Count>;
using Indices = std::vector<std::uint32_t>;

BigInt to_big(Count c) {
  BigInt r = static_cast<std::uint64_t>(c >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(c);
  return r;
}

void check_space(const Dataset& d, int depth) {
  require(d.binary_flag(), ErrorCode::kNonBinaryData, "tree enumeration needs binary features");
  require(depth >= 1, ErrorCode::kInvalidArgument, "depth must be at least 1");
  require(static_cast<std::size_t>(depth) <= d.m(), ErrorCode::kInvalidArgument,
          "depth " + std::to_string(depth) + " exceeds m = " + std::to_string(d.m()));
  require(d.m() <= 64, ErrorCode::kTractability, "tree enumeration supports at most 64 features");
}

struct Splitter {
  const Matrix& x;
  const Labels& y;

  void partition(const Indices& in, int f, Indices& left, Indices& right) const {
    left.clear();
    right.clear();
    for (auto i : in) (x(i, f) != 0.0 ? right : left).push_back(i);
  }

  std::array<std::size_t, 2> tally(const Indices& in) const {
    std::array<std::size_t, 2> c{0, 0};
    for (auto i : in) ++c[y[i]];
    return c;
  }
};

std::size_t min_mistakes_rec(const Splitter& s, const Indices& samples, int levels, std::uint64_t used, int m) {
  if (levels == 0) {
    const auto c = s.tally(samples);
    return std::min(c[0], c[1]);
  }
  std::size_t best = samples.size();
  Indices left;
  Indices right;
  for (int f = 0; f < m; ++f) {
    if (used >> f & 1u) continue;
    s.partition(samples, f, left, right);
    const Indices l = left;
    const Indices r = right;
    const std::size_t cost = min_mistakes_rec(s, l, levels - 1, used | (std::uint64_t{1} << f), m);
    if (cost >= best) continue;
    best = std::min(best, cost + min_mistakes_rec(s, r, levels - 1, used | (std::uint64_t{1} << f), m));
  }
  return best;
}

void add_convolution(Poly& acc, const Poly& a, const Poly& b) {
  const std::size_t cap = acc.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < cap && j < b.size(); ++j) {
      if (b[j] != 0) acc[i + j] += a[i] * b[j];
    }
  }
}

// Coefficient k counts (subtree, labeling) pairs making exactly k mistakes on `samples`.
Poly mistake_poly(const Splitter& s, const Indices& samples, int levels, std::uint64_t used, int m,
                  std::size_t budget) {
  Poly p(budget + 1, 0);
  if (levels == 0) {
    const auto c = s.tally(samples);
    if (c[1] <= budget) p[c[1]] += 1;  // leaf predicts 0
    if (c[0] <= budget) p[c[0]] += 1;  // leaf predicts 1
    return p;
  }
  Indices left;
  Indices right;
  for (int f = 0; f < m; ++f) {
    if (used >> f & 1u) continue;
    s.partition(samples, f, left, right);
    const std::uint64_t next = used | (std::uint64_t{1} << f);
    const Poly pl = mistake_poly(s, Indices(left), levels - 1, next, m, budget);
    const Poly pr = mistake_poly(s, Indices(right), levels - 1, next, m, budget);
    add_convolution(p, pl, pr);
  }
  return p;
}

void collect_for_root(const Dataset& d, int depth, int root, std::size_t budget,
                      std::unordered_set<Pattern, PatternHash>& out) {
  const std::size_t leaves = std::size_t{1} << depth;
  TreeStructure t;
  t.depth = depth;
  std::vector<Pattern> leaf_masks(leaves, Pattern(d.n()));
  std::vector<std::size_t> low(leaves);
  std::vector<std::size_t> high(leaves);
  for_each_structure(
      depth, static_cast<int>(d.m()),
      [&](const std::vector<int>& features) {
        t.internal_features = features;
        for (auto& mask : leaf_masks) mask = Pattern(d.n());
        std::vector<std::array<std::size_t, 2>> tallies(leaves, {0, 0});
        for (std::size_t i = 0; i < d.n(); ++i) {
          const std::size_t leaf = t.leaf_of(d.features(), static_cast<Eigen::Index>(i));
          leaf_masks[leaf].set(i, true);
          ++tallies[leaf][d.y(i)];
        }
        std::size_t base = 0;
        for (std::size_t l = 0; l < leaves; ++l) {
          low[l] = std::min(tallies[l][0], tallies[l][1]);
          high[l] = std::max(tallies[l][0], tallies[l][1]);
          base += low[l];
        }
        if (base > budget) return;
        // Leaf label 1 costs tallies[l][0] mistakes, label 0 costs tallies[l][1].
        std::vector<std::uint8_t> labels(leaves, 0);
        std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t l, std::size_t spent) {
          if (l == leaves) {
            Pattern p(d.n());
            auto words = p.words();
            for (std::size_t k = 0; k < leaves; ++k) {
              if (!labels[k]) continue;
              for (std::size_t w = 0; w < words.size(); ++w) words[w] |= leaf_masks[k].words()[w];
            }
            for (std::size_t i = 0; i < d.n(); ++i) p.set(i, (words[i >> 6] >> (i & 63)) & 1u);
            out.insert(std::move(p));
            return;
          }
          const std::size_t rest = spent - low[l];
          for (std::uint8_t label : {std::uint8_t{0}, std::uint8_t{1}}) {
            const std::size_t cost = tallies[l][label ? 0 : 1];
            if (rest + cost > budget) continue;
            labels[l] = label;
            dfs(l + 1, rest + cost);
          }
        };
        dfs(0, base);
      },
      root);
}

}  // namespace

std::string to_string(ThetaMode mode) { return mode == ThetaMode::kAdditive ? "additive" : "multiplicative"; }

ThetaMode theta_mode_from_string(const std::string& name) {
  if (name == "additive") return ThetaMode::kAdditive;
  if (name == "multiplicative") return ThetaMode::kMultiplicative;
  throw Error(ErrorCode::kConfig, "theta_mode must be 'additive' or 'multiplicative', got '" + name + "'");
}

std::size_t mistake_budget(std::size_t min_mistakes, std::size_t n, double theta, ThetaMode mode) {
  require(theta >= 0.0, ErrorCode::kOutOfRange, "theta must be non-negative");
  const double k = static_cast<double>(min_mistakes);
  const double raw = mode == ThetaMode::kAdditive ? k + static_cast<double>(n) * theta : k * (1.0 + theta);
  if (!(raw < static_cast<double>(n))) return n;
  return static_cast<std::size_t>(std::floor(raw + 1e-9));
}

std::size_t TreeStructure::leaf_of(const Matrix& x, Eigen::Index row) const {
  std::size_t node = 0;
  for (int level = 0; level < depth; ++level) {
    node = 2 * node + 1 + (x(row, internal_features[node]) != 0.0 ? 1 : 0);
  }
  return node - ((std::size_t{1} << depth) - 1);
}

void TreeStructure::bind(const Dataset& d) {
  leaf_tallies.assign(leaf_count(), {0, 0});
  for (std::size_t i = 0; i < d.n(); ++i) ++leaf_tallies[leaf_of(d.features(), static_cast<Eigen::Index>(i))][d.y(i)];
}

Pattern TreeStructure::predict(const Dataset& d) const {
  require(leaf_labels.size() == leaf_count(), ErrorCode::kInvalidArgument, "tree has no leaf labels");
  Pattern p(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) p.set(i, leaf_labels[leaf_of(d.features(), static_cast<Eigen::Index>(i))] != 0);
  return p;
}

bool TreeStructure::paths_distinct() const {
  for (std::size_t node = 1; node < internal_features.size(); ++node) {
    for (std::size_t a = (node - 1) / 2;; a = (a - 1) / 2) {
      if (internal_features[a] == internal_features[node]) return false;
      if (a == 0) break;
    }
  }
  return true;
}

BigInt count_full_trees(int depth, int m) {
  require(depth >= 0, ErrorCode::kInvalidArgument, "depth must be non-negative");
  require(depth <= m, ErrorCode::kInvalidArgument,
          "depth " + std::to_string(depth) + " exceeds m = " + std::to_string(m));
  BigInt total = BigInt(1) << (std::size_t{1} << depth);
  for (int k = 1; k <= depth; ++k) total *= boost::multiprecision::pow(BigInt(m - k + 1), 1u << (k - 1));
  return total;
}

BigInt count_trees_up_to_depth(int depth, int m) {
  require(depth >= 0, ErrorCode::kInvalidArgument, "depth must be non-negative");
  require(m >= depth, ErrorCode::kInvalidArgument,
          "m = " + std::to_string(m) + " is smaller than depth " + std::to_string(depth));
  static std::mutex mu;
  static std::map<std::pair<int, int>, BigInt> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find({depth, m}); it != memo.end()) return it->second;
  }
  BigInt value = 2;
  if (depth > 0) {
    const BigInt sub = count_trees_up_to_depth(depth - 1, m - 1);
    value = 2 + BigInt(m) * sub * sub;
  }
  std::lock_guard lock(mu);
  memo.emplace(std::make_pair(depth, m), value);
  return value;
}

void for_each_structure(int depth, int m, const std::function<void(const std::vector<int>&)>& visit,
                        int root_feature) {
  const std::size_t internal = (std::size_t{1} << depth) - 1;
  std::vector<int> features(internal, -1);
  std::function<void(std::size_t)> assign = [&](std::size_t node) {
    if (node == internal) {
      visit(features);
      return;
    }
    for (int f = 0; f < m; ++f) {
      if (node == 0 && root_feature >= 0 && f != root_feature) continue;
      bool clash = false;
      for (std::size_t a = node; a > 0 && !clash;) {
        a = (a - 1) / 2;
        clash = features[a] == f;
      }
      if (clash) continue;
      features[node] = f;
      assign(node + 1);
    }
  };
  assign(0);
}

std::size_t min_tree_mistakes(const Dataset& d, int depth) {
  check_space(d, depth);
  const Splitter s{d.features(), d.labels()};
  const int m = static_cast<int>(d.m());
  Indices all(d.n());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<std::size_t> per_root(static_cast<std::size_t>(m), d.n());
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < m; ++f) {
    Indices left;
    Indices right;
    s.partition(all, f, left, right);
    const std::uint64_t used = std::uint64_t{1} << f;
    per_root[static_cast<std::size_t>(f)] =
        min_mistakes_rec(s, left, depth - 1, used, m) + min_mistakes_rec(s, right, depth - 1, used, m);
  }
  return *std::min_element(per_root.begin(), per_root.end());
}

TreeRashomonResult enumerate_rashomon_trees(const Dataset& d, int depth, double theta, ThetaMode mode,
                                            const TreeRashomonConfig& config) {
  check_space(d, depth);
  TreeRashomonResult result;
  result.total_models = count_full_trees(depth, static_cast<int>(d.m()));
  require(boost::multiprecision::msb(result.total_models) < 126, ErrorCode::kTractability,
          "hypothesis space too large for 128-bit counting");
  result.theta = theta;
  result.mode = mode;
  result.min_mistakes = min_tree_mistakes(d, depth);
  result.min_loss = static_cast<double>(result.min_mistakes) / static_cast<double>(d.n());
  result.budget = mistake_budget(result.min_mistakes, d.n(), theta, mode);

  const Splitter s{d.features(), d.labels()};
  const int m = static_cast<int>(d.m());
  Indices all(d.n());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<Poly> per_root(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < m; ++f) {
    Indices left;
    Indices right;
    s.partition(all, f, left, right);
    const std::uint64_t used = std::uint64_t{1} << f;
    Poly acc(result.budget + 1, 0);
    add_convolution(acc, mistake_poly(s, left, depth - 1, used, m, result.budget),
                    mistake_poly(s, right, depth - 1, used, m, result.budget));
    per_root[static_cast<std::size_t>(f)] = std::move(acc);
  }
  Count total = 0;
  for (const auto& p : per_root) total = std::accumulate(p.begin(), p.end(), total);
  result.rashomon_count = to_big(total);
  result.ratio = BigRational(result.rashomon_count, result.total_models);

  if (config.collect_patterns) {
    require(result.rashomon_count <= config.pattern_cap, ErrorCode::kCapExceeded,
            "Rashomon set has " + result.rashomon_count.str() + " trees, pattern cap is " +
                std::to_string(config.pattern_cap));
    std::vector<std::unordered_set<Pattern, PatternHash>> found(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(dynamic)
    for (int f = 0; f < m; ++f) collect_for_root(d, depth, f, result.budget, found[static_cast<std::size_t>(f)]);
    std::unordered_set<Pattern, PatternHash> merged;
    for (auto& set : found) merged.insert(set.begin(), set.end());
    result.patterns.assign(merged.begin(), merged.end());
    std::sort(result.patterns.begin(), result.patterns.end());
  }
  return result;
}

std::string TreeRashomonResult::to_json() const {
  nlohmann::json j;
  j["total_models"] = total_models.str();
  j["rashomon_count"] = rashomon_count.str();
  j["ratio"] = ratio_value();
  j["log10_ratio"] = log10_ratio();
  j["min_loss"] = min_loss;
  j["min_mistakes"] = min_mistakes;
  j["mistake_budget"] = budget;
  j["theta"] = theta;
  j["theta_mode"] = to_string(mode);
  j["pattern_count"] = patterns.size();
  std::vector<std::string> bits;
  for (const auto& p : patterns) bits.push_back(p.to_string());
  j["patterns"] = bits;
  return j.dump(2);
}

std::uint8_t FittedTree::predict(const Matrix& x, Eigen::Index row) const {
  int node = 0;
  while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(node)];
    node = x(row, n.feature) != 0.0 ? n.right : n.left;
  }
  return nodes[static_cast<std::size_t>(node)].label;
}

Labels FittedTree::predict(const Matrix& x) const {
  Labels out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = predict(x, i);
  return out;
}

int FittedTree::depth() const {
  std::function<int(int)> rec = [&](int node) -> int {
    const auto& n = nodes[static_cast<std::size_t>(node)];
    if (n.feature < 0) return 0;
    return 1 + std::max(rec(n.left), rec(n.right));
  };
  return rec(0);
}

FittedTree greedy_tree_fit(const Dataset& d, int max_depth) {
  require(max_depth >= 1, ErrorCode::kInvalidArgument, "depth cap must be at least 1");
  require(d.binary_flag(), ErrorCode::kNonBinaryData, "greedy tree needs binary features");
  const Splitter s{d.features(), d.labels()};
  const int m = static_cast<int>(d.m());
  FittedTree tree;
  auto gini_mass = [](std::array<std::size_t, 2> c) {
    const double t = static_cast<double>(c[0] + c[1]);
    if (t == 0.0) return 0.0;
    const double p = static_cast<double>(c[1]) / t;
    return t * 2.0 * p * (1.0 - p);
  };
  std::function<int(const Indices&, int)> grow = [&](const Indices& samples, int levels) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const auto c = s.tally(samples);
    tree.nodes[static_cast<std::size_t>(id)].label = c[1] >= c[0] ? 1 : 0;
    if (levels == 0 || c[0] == 0 || c[1] == 0) return id;
    const double parent = gini_mass(c);
    int best_f = -1;
    double best_gain = 0.0;
    Indices left;
    Indices right;
    for (int f = 0; f < m; ++f) {
      s.partition(samples, f, left, right);
      if (left.empty() || right.empty()) continue;
      const double gain = parent - gini_mass(s.tally(left)) - gini_mass(s.tally(right));
      if (best_f < 0 || gain > best_gain + 1e-12) {
        best_f = f;
        best_gain = gain;
      }
    }
    if (best_f < 0) return id;
    s.partition(samples, best_f, left, right);
    const Indices l = left;
    const Indices r = right;
    const int left_id = grow(l, levels - 1);
    const int right_id = grow(r, levels - 1);
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    node.feature = best_f;
    node.left = left_id;
    node.right = right_id;
    return id;
  };
  Indices all(d.n());
  std::iota(all.begin(), all.end(), 0u);
  grow(all, max_depth);
  return tree;
}

CrossValidation cross_validate_depth(const Dataset& d, const std::vector<int>& depths, std::size_t folds,
                                     std::uint64_t seed) {
  require(!depths.empty(), ErrorCode::kInvalidArgument, "depth list is empty");
  require(folds >= 2, ErrorCode::kInvalidArgument, "need at least 2 folds");
  require(folds <= d.n(), ErrorCode::kInvalidArgument,
          "folds " + std::to_string(folds) + " exceed n = " + std::to_string(d.n()));
  const auto parts = k_folds(d, SplitSpec{0.2, folds, seed});
  CrossValidation cv;
  for (int depth : depths) {
    DepthRisk row{depth, 0.0, 0.0};
    for (const auto& [train, validation] : parts) {
      const FittedTree tree = greedy_tree_fit(train, depth);
      row.train_risk += zero_one_risk(tree.predict(train.features()), train.labels());
      row.validation_risk += zero_one_risk(tree.predict(validation.features()), validation.labels());
    }
    row.train_risk /= static_cast<double>(parts.size());
    row.validation_risk /= static_cast<double>(parts.size());
    cv.table.push_back(row);
  }
  const DepthRisk* best = &cv.table.front();
  for (const auto& row : cv.table) {
    const bool lower = row.validation_risk < best->validation_risk - 1e-12;
    const bool tie = std::abs(row.validation_risk - best->validation_risk) <= 1e-12;
    if (lower || (tie && row.depth < best->depth)) best = &row;
  }
  cv.best_depth = best->depth;
  return cv;
}

}  // namespace rashomon
