#include <algorithm>
#include <cstdlib>

#include "rashomon/error.hpp"
#include "rashomon/reference.hpp"

namespace rashomon::reference {

TreeRashomonResult enumerate_rashomon_trees(const Dataset& d, int depth, double theta, ThetaMode mode) {
  require(d.binary_flag(), ErrorCode::kNonBinaryData, "tree enumeration needs binary features");
  require(depth >= 1 && static_cast<std::size_t>(depth) <= d.m(), ErrorCode::kInvalidArgument,
          "depth must lie in [1, m]");
  const int m = static_cast<int>(d.m());
  TreeStructure t;
  t.depth = depth;

  std::size_t best = d.n();
  for_each_structure(depth, m, [&](const std::vector<int>& features) {
    t.internal_features = features;
    t.bind(d);
    std::size_t base = 0;
    for (const auto& c : t.leaf_tallies) base += std::min(c[0], c[1]);
    best = std::min(best, base);
  });

  TreeRashomonResult result;
  result.total_models = count_full_trees(depth, m);
  result.theta = theta;
  result.mode = mode;
  result.min_mistakes = best;
  result.min_loss = static_cast<double>(best) / static_cast<double>(d.n());
  result.budget = mistake_budget(best, d.n(), theta, mode);

  std::vector<BigInt> ways;
  for_each_structure(depth, m, [&](const std::vector<int>& features) {
    t.internal_features = features;
    t.bind(d);
    std::size_t base = 0;
    for (const auto& c : t.leaf_tallies) base += std::min(c[0], c[1]);
    if (base > result.budget) return;
    const std::size_t slack = result.budget - base;
    ways.assign(slack + 1, 0);
    ways[0] = 1;
    for (const auto& c : t.leaf_tallies) {
      const std::size_t regret = c[0] > c[1] ? c[0] - c[1] : c[1] - c[0];
      for (std::size_t s = slack + 1; s-- > 0;) {
        if (regret == 0) {
          ways[s] *= 2;
        } else if (s >= regret) {
          ways[s] += ways[s - regret];
        }
      }
    }
    for (const auto& w : ways) result.rashomon_count += w;
  });
  result.ratio = BigRational(result.rashomon_count, result.total_models);
  return result;
}

}  // namespace rashomon::reference
