#pragma once

#include <optional>
#include <vector>

#include "iscp/constraints.hpp"
#include "iscp/greedy.hpp"
#include "iscp/instance.hpp"

namespace iscp {

// One branch of the greedy decision tree that ended in a cover.
struct LeafInfo {
  Interval cost;             // range of the cover cost over the leaf region
  double branch_probability;  // product of per-step win probabilities
  Scenario witness;
};

// A member of the united approximate solution set.
struct ApproxSolutionRecord {
  CoverSolution solution;
  // Hull over all leaves of the cost range restricted to scenarios for which
  // greedy outputs this cover.
  Interval refined_cost;
  std::size_t branch_count = 0;
  // Filled by scenario analysis (Monte Carlo) or by the branch estimator.
  std::optional<double> probability;
  // Sum over leaves of the per-step product probabilities.
  double branch_probability = 0.0;
  // Scenario for which greedy returns this solution.
  Scenario witness;
  // Per-leaf details in depth-first order (lowest set index explored first).
  std::vector<LeafInfo> leaves;
};

struct UnitedApproxSet {
  // Sorted by bit vector.
  std::vector<ApproxSolutionRecord> records;
  std::size_t nodes_explored = 0;
  // Set when the node limit cut the search short.
  bool partial = false;

  const ApproxSolutionRecord* find(const CoverSolution& x) const;
};

struct EnumerationOptions {
  SampleDomain domain = SampleDomain::kContinuous;
  std::size_t node_limit = 1'000'000;
  bool keep_leaf_systems = false;
};

struct EnumerationResult {
  UnitedApproxSet united;
  // Leaf constraint systems per record (same order), when requested.
  std::vector<std::vector<ConstraintSystem>> leaf_systems;
};

// Depth-first branching over every set the greedy can pick at each step for
// some scenario. Exact-rational ratio mode only; throws for floor mode.
EnumerationResult enumerate_approx(const IscpInstance& instance,
                                   GreedyConfig cfg,
                                   const EnumerationOptions& options = {});

// Hull over the leaf regions of min/max of the cost of solution.
Interval refine_cost_interval(const IscpInstance& instance,
                              const CoverSolution& solution,
                              const std::vector<ConstraintSystem>& leaf_systems,
                              SampleDomain domain = SampleDomain::kContinuous);

struct OptimalSolutionRecord {
  CoverSolution solution;
  // Cost range over the scenarios where this cover is optimal.
  Interval refined_cost;
  Scenario witness;
};

// United solution set: every minimal cover that is optimal for some
// scenario in the box (ties count). Sorted by bit vector. n <= 25.
std::vector<OptimalSolutionRecord> enumerate_optimal(const IscpInstance& instance);

}  // namespace iscp
