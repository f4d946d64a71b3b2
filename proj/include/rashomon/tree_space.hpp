#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rashomon/bigint.hpp"
#include "rashomon/dataset.hpp"
#include "rashomon/pattern.hpp"

namespace rashomon {

enum class ThetaMode { kAdditive, kMultiplicative };

std::string to_string(ThetaMode mode);
ThetaMode theta_mode_from_string(const std::string& name);

// Largest mistake count admitted into the Rashomon set given the in-space minimum.
std::size_t mistake_budget(std::size_t min_mistakes, std::size_t n, double theta, ThetaMode mode);

// Complete binary tree in heap order: node i has children 2i+1 (feature = 0)
// and 2i+2 (feature = 1). Leaves are numbered 0..2^depth-1 left to right.
struct TreeStructure {
  int depth = 1;
  std::vector<int> internal_features;
  std::vector<std::array<std::uint32_t, 2>> leaf_tallies;
  std::vector<std::uint8_t> leaf_labels;

  std::size_t leaf_count() const noexcept { return std::size_t{1} << depth; }
  std::size_t leaf_of(const Matrix& x, Eigen::Index row) const;
  void bind(const Dataset& d);
  Pattern predict(const Dataset& d) const;
  bool paths_distinct() const;
};

BigInt count_full_trees(int depth, int m);
BigInt count_trees_up_to_depth(int depth, int m);

// Calls visit(features) for every path-distinct assignment of features to the
// 2^depth - 1 internal nodes. root_feature >= 0 restricts the root.
void for_each_structure(int depth, int m, const std::function<void(const std::vector<int>&)>& visit,
                        int root_feature = -1);

struct TreeRashomonConfig {
  bool collect_patterns = false;
  std::size_t pattern_cap = 1'000'000;
};

struct TreeRashomonResult {
  BigInt total_models;
  BigInt rashomon_count;
  BigRational ratio;
  std::vector<Pattern> patterns;  // sorted; empty unless collected
  double min_loss = 0.0;
  std::size_t min_mistakes = 0;
  std::size_t budget = 0;
  double theta = 0.0;
  ThetaMode mode = ThetaMode::kAdditive;

  double ratio_value() const { return to_double(ratio); }
  double log10_ratio() const { return rashomon::log10_ratio(rashomon_count, total_models); }
  std::string to_json() const;
};

// Counts via a generating function in mistakes over the tree recursion, in
// parallel over the root feature.
TreeRashomonResult enumerate_rashomon_trees(const Dataset& d, int depth, double theta,
                                            ThetaMode mode = ThetaMode::kAdditive,
                                            const TreeRashomonConfig& config = {});

// Smallest mistake count over all complete depth-d trees.
std::size_t min_tree_mistakes(const Dataset& d, int depth);

// Greedy CART-style tree; may be shallower than max_depth where nodes are pure.
struct FittedTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf
    int left = -1;
    int right = -1;
    std::uint8_t label = 1;
  };
  std::vector<Node> nodes;

  std::uint8_t predict(const Matrix& x, Eigen::Index row) const;
  Labels predict(const Matrix& x) const;
  int depth() const;
};

FittedTree greedy_tree_fit(const Dataset& d, int max_depth);

struct DepthRisk {
  int depth = 0;
  double train_risk = 0.0;
  double validation_risk = 0.0;
};

struct CrossValidation {
  int best_depth = 0;
  std::vector<DepthRisk> table;
};

CrossValidation cross_validate_depth(const Dataset& d, const std::vector<int>& depths, std::size_t folds,
                                     std::uint64_t seed);

}  // namespace rashomon
