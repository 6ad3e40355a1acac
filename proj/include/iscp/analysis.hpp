#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iscp/enumerator.hpp"
#include "iscp/greedy.hpp"
#include "iscp/instance.hpp"

namespace iscp {

// How scenarios are drawn and split across workers. The worker count is
// part of the plan: worker w always gets the same contiguous slice of
// samples and its own stream (seed, w), whatever the hardware.
struct SamplingPlan {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  SampleDomain domain = SampleDomain::kInteger;
  std::size_t workers = 1;
};

struct ProbabilityEstimate {
  CoverSolution solution;
  std::uint64_t tally = 0;
  std::uint64_t sample_count = 0;
  double frequency() const {
    return sample_count == 0 ? 0.0
                             : static_cast<double>(tally) /
                                   static_cast<double>(sample_count);
  }
};

// Greedy output tallies over sampled scenarios, sorted by bit vector.
std::vector<ProbabilityEstimate> estimate_probabilities(
    const IscpInstance& instance, GreedyConfig cfg, const SamplingPlan& plan);

// Tallies of the brute-force optimum per scenario (n <= 25).
std::vector<ProbabilityEstimate> estimate_optimal_probabilities(
    const IscpInstance& instance, const SamplingPlan& plan);

struct RepresentativenessPolicy {
  double boundary = 0.5;
};

enum class Representativeness { kRepresentative, kUnrepresentative };

// Unrepresentative iff probability < boundary.
Representativeness classify(double probability,
                            const RepresentativenessPolicy& policy);
std::string to_string(Representativeness r);

enum class ProbabilitySource {
  kMonteCarlo,  // frequencies of sampled greedy outputs
  kBranch,      // per-step win probabilities multiplied along each branch
};
std::string to_string(ProbabilitySource source);
ProbabilitySource parse_probability_source(const std::string& text);

// Copies Monte Carlo frequencies into the records (0 for members never
// sampled). Returns the sampled solutions missing from the set.
std::vector<CoverSolution> attach_probabilities(
    UnitedApproxSet& united, const std::vector<ProbabilityEstimate>& estimates);
// Uses each record's branch probability.
void attach_branch_probabilities(UnitedApproxSet& united);

// Greedy and exact solutions at the midpoint scenario.
struct MeanSolutions {
  CoverSolution approx;
  double approx_cost = 0.0;
  CoverSolution optimal;
  double optimal_cost = 0.0;
};
MeanSolutions mean_solutions(const IscpInstance& instance, GreedyConfig cfg);

struct InstanceStats {
  double p_mean = 0.0;
  double p_max = 0.0;
  std::size_t solution_count = 0;
  // sum over records of P * midpoint(refined cost)
  double expected_mid_cost = 0.0;
  // max |f(mean optimal, c_mu) - f(x, c)| over possible optimal x and the
  // scenarios where x is optimal.
  double deviation_opt = 0.0;
  // same for the possible approximate solutions, against the mean greedy cost.
  double deviation_approx = 0.0;
};

// Needs probabilities attached to every record. Throws for an empty set.
InstanceStats instance_stats(const UnitedApproxSet& united,
                             const std::vector<OptimalSolutionRecord>& optimal,
                             const MeanSolutions& mean);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
  double frequency = 0.0;
};

// Greedy cost per sampled scenario, binned on multiples of bin_width. Empty
// bins between the smallest and largest occupied bin are kept.
std::vector<HistogramBin> cost_histogram(const IscpInstance& instance,
                                         GreedyConfig cfg,
                                         const SamplingPlan& plan,
                                         double bin_width);

// Maximal runs of empty bins strictly inside the histogram support.
std::vector<Interval> histogram_gaps(const std::vector<HistogramBin>& bins);

}  // namespace iscp
