#pragma once

// Serial reference implementations. They follow the textbook formulation
// directly and exist so the parallel kernels can be checked and benchmarked
// against them.

#include "rashomon/linear_patterns.hpp"
#include "rashomon/tree_space.hpp"

namespace rashomon::reference {

// Enumerates every structure, tallies its leaves, then counts labelings with
// a subset-sum DP over per-leaf regrets |count0 - count1|.
TreeRashomonResult enumerate_rashomon_trees(const Dataset& d, int depth, double theta,
                                            ThetaMode mode = ThetaMode::kAdditive);

// Algorithm-identical breadth-first search without the per-level OpenMP fan-out.
PatternSetResult branch_and_bound_patterns(const Dataset& d, double theta, const LinearConfig& config = {});

}  // namespace rashomon::reference
