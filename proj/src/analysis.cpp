#include "iscp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "iscp/rng.hpp"

namespace iscp {

namespace {

using Tally = std::map<std::vector<bool>, std::uint64_t>;

void check_plan(const SamplingPlan& plan) {
  if (plan.samples < 1) throw std::invalid_argument("need at least one sample");
  if (plan.workers < 1) throw std::invalid_argument("need at least one worker");
}

// Runs body(worker, first, last, tally) for every slice of the plan on its
// own thread and merges the tallies in worker order.
template <typename Body>
Tally run_partitioned(const SamplingPlan& plan, Body body) {
  check_plan(plan);
  const std::size_t workers = std::min(plan.workers, plan.samples);
  std::vector<Tally> partial(workers);
  auto slice = [&](std::size_t w) {
    const std::size_t first = plan.samples * w / workers;
    const std::size_t last = plan.samples * (w + 1) / workers;
    body(w, last - first, partial[w]);
  };
  if (workers == 1) {
    slice(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(slice, w);
    for (auto& t : threads) t.join();
  }
  Tally merged;
  for (auto& tally : partial) {
    for (auto& [bits, count] : tally) merged[bits] += count;
  }
  return merged;
}

std::vector<ProbabilityEstimate> to_estimates(const Tally& tally,
                                              std::uint64_t total) {
  std::vector<ProbabilityEstimate> out;
  out.reserve(tally.size());
  for (const auto& [bits, count] : tally) {
    out.push_back({CoverSolution(bits), count, total});
  }
  return out;
}

}  // namespace

std::vector<ProbabilityEstimate> estimate_probabilities(
    const IscpInstance& instance, GreedyConfig cfg, const SamplingPlan& plan) {
  const Tally tally = run_partitioned(
      plan, [&](std::size_t worker, std::size_t count, Tally& out) {
        Rng rng(plan.seed, worker);
        GreedyRunner runner(instance, cfg);
        Scenario c(instance.n());
        std::vector<bool> bits;
        for (std::size_t s = 0; s < count; ++s) {
          sample_scenario_into(instance.cost_box(), plan.domain, rng, c);
          runner.run(c);
          runner.write_solution(bits);
          ++out[bits];
        }
      });
  return to_estimates(tally, plan.samples);
}

std::vector<ProbabilityEstimate> estimate_optimal_probabilities(
    const IscpInstance& instance, const SamplingPlan& plan) {
  const OptimumSolver solver(instance);
  const Tally tally = run_partitioned(
      plan, [&](std::size_t worker, std::size_t count, Tally& out) {
        Rng rng(plan.seed, worker);
        Scenario c(instance.n());
        std::vector<std::uint64_t> per_cover(solver.covers().size(), 0);
        for (std::size_t s = 0; s < count; ++s) {
          sample_scenario_into(instance.cost_box(), plan.domain, rng, c);
          ++per_cover[solver.solve(c)];
        }
        for (std::size_t k = 0; k < per_cover.size(); ++k) {
          if (per_cover[k] > 0) out[solver.covers()[k].bits()] += per_cover[k];
        }
      });
  return to_estimates(tally, plan.samples);
}

Representativeness classify(double probability,
                            const RepresentativenessPolicy& policy) {
  return probability < policy.boundary ? Representativeness::kUnrepresentative
                                       : Representativeness::kRepresentative;
}

std::string to_string(Representativeness r) {
  return r == Representativeness::kRepresentative ? "representative"
                                                  : "unrepresentative";
}

std::string to_string(ProbabilitySource source) {
  return source == ProbabilitySource::kMonteCarlo ? "montecarlo" : "branch";
}

ProbabilitySource parse_probability_source(const std::string& text) {
  if (text == "montecarlo" || text == "mc") return ProbabilitySource::kMonteCarlo;
  if (text == "branch") return ProbabilitySource::kBranch;
  throw std::invalid_argument("unknown probability source: " + text);
}

std::vector<CoverSolution> attach_probabilities(
    UnitedApproxSet& united, const std::vector<ProbabilityEstimate>& estimates) {
  for (auto& record : united.records) record.probability = 0.0;
  std::vector<CoverSolution> unknown;
  for (const auto& estimate : estimates) {
    auto it = std::lower_bound(
        united.records.begin(), united.records.end(), estimate.solution,
        [](const ApproxSolutionRecord& r, const CoverSolution& s) {
          return r.solution < s;
        });
    if (it == united.records.end() || !(it->solution == estimate.solution)) {
      unknown.push_back(estimate.solution);
      continue;
    }
    it->probability = estimate.frequency();
  }
  return unknown;
}

void attach_branch_probabilities(UnitedApproxSet& united) {
  for (auto& record : united.records) {
    record.probability = record.branch_probability;
  }
}

MeanSolutions mean_solutions(const IscpInstance& instance, GreedyConfig cfg) {
  const Scenario& mu = instance.mean_costs();
  MeanSolutions out;
  out.approx = greedy_cover(instance, mu, cfg).solution;
  out.approx_cost = cost(instance, out.approx, mu);
  const auto opt = exact_optimum(instance, mu);
  out.optimal = opt.solution;
  out.optimal_cost = opt.cost;
  return out;
}

InstanceStats instance_stats(const UnitedApproxSet& united,
                             const std::vector<OptimalSolutionRecord>& optimal,
                             const MeanSolutions& mean) {
  if (united.records.empty()) {
    throw std::invalid_argument("statistics need a nonempty solution set");
  }
  InstanceStats stats;
  stats.solution_count = united.records.size();
  double total = 0.0;
  for (const auto& record : united.records) {
    if (!record.probability) {
      throw std::invalid_argument("record " + record.solution.to_string() +
                                  " has no probability");
    }
    const double p = *record.probability;
    total += p;
    stats.p_max = std::max(stats.p_max, p);
    stats.expected_mid_cost += p * midpoint(record.refined_cost);
    stats.deviation_approx =
        std::max({stats.deviation_approx,
                  std::abs(mean.approx_cost - record.refined_cost.lo),
                  std::abs(mean.approx_cost - record.refined_cost.hi)});
  }
  stats.p_mean = total / static_cast<double>(stats.solution_count);
  for (const auto& record : optimal) {
    stats.deviation_opt =
        std::max({stats.deviation_opt,
                  std::abs(mean.optimal_cost - record.refined_cost.lo),
                  std::abs(mean.optimal_cost - record.refined_cost.hi)});
  }
  return stats;
}

std::vector<HistogramBin> cost_histogram(const IscpInstance& instance,
                                         GreedyConfig cfg,
                                         const SamplingPlan& plan,
                                         double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
  check_plan(plan);
  const std::size_t workers = std::min(plan.workers, plan.samples);
  std::vector<std::map<long long, std::uint64_t>> partial(workers);
  auto slice = [&](std::size_t w) {
    const std::size_t count =
        plan.samples * (w + 1) / workers - plan.samples * w / workers;
    Rng rng(plan.seed, w);
    GreedyRunner runner(instance, cfg);
    Scenario c(instance.n());
    for (std::size_t s = 0; s < count; ++s) {
      sample_scenario_into(instance.cost_box(), plan.domain, rng, c);
      const double value = runner.run(c);
      ++partial[w][static_cast<long long>(std::floor(value / bin_width))];
    }
  };
  if (workers == 1) {
    slice(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(slice, w);
    for (auto& t : threads) t.join();
  }
  std::map<long long, std::uint64_t> merged;
  for (const auto& p : partial) {
    for (const auto& [bin, count] : p) merged[bin] += count;
  }
  std::vector<HistogramBin> out;
  const long long first = merged.begin()->first;
  const long long last = merged.rbegin()->first;
  for (long long bin = first; bin <= last; ++bin) {
    HistogramBin h;
    h.lo = static_cast<double>(bin) * bin_width;
    h.hi = h.lo + bin_width;
    auto it = merged.find(bin);
    h.count = it == merged.end() ? 0 : it->second;
    h.frequency = static_cast<double>(h.count) / static_cast<double>(plan.samples);
    out.push_back(h);
  }
  return out;
}

std::vector<Interval> histogram_gaps(const std::vector<HistogramBin>& bins) {
  std::vector<Interval> gaps;
  std::size_t k = 0;
  while (k < bins.size()) {
    if (bins[k].count != 0) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < bins.size() && bins[end].count == 0) ++end;
    if (k > 0 && end < bins.size()) gaps.push_back({bins[k].lo, bins[end - 1].hi});
    k = end;
  }
  return gaps;
}

}  // namespace iscp
