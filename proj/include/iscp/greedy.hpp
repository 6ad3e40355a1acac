#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iscp/instance.hpp"

namespace iscp {

// How the cost-effectiveness c_j / p_j of candidates is compared, where p_j
// is the number of still uncovered elements of S_j. Ties always go to the
// lowest set index.
enum class RatioMode {
  kExactRational,  // p_k * c_j versus p_j * c_k, no division
  kFloorInteger,   // floor(c_j / p_j) compared as integers
};

struct GreedyConfig {
  RatioMode ratio_mode = RatioMode::kExactRational;
};

std::string to_string(RatioMode mode);
RatioMode parse_ratio_mode(const std::string& text);

struct Competitor {
  std::size_t set = 0;
  int new_count = 0;
};

struct GreedyStep {
  std::size_t chosen = 0;
  int new_count = 0;
  // Every set with new_count >= 1 at this step, the chosen one included.
  std::vector<Competitor> competitors;
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

struct GreedyResult {
  CoverSolution solution;
  GreedyTrace trace;
};

GreedyResult greedy_cover(const IscpInstance& instance,
                          std::span<const double> c, GreedyConfig cfg = {});

// Allocation-free greedy for sampling loops. Holds scratch buffers, so one
// runner per thread.
class GreedyRunner {
 public:
  GreedyRunner(const IscpInstance& instance, GreedyConfig cfg);

  // Runs greedy at scenario c; selected() then holds the chosen indices in
  // selection order. Returns the cover cost at c.
  double run(std::span<const double> c);
  std::span<const std::size_t> selected() const { return selected_; }
  // Bit vector of the last run.
  void write_solution(std::vector<bool>& bits) const;

 private:
  const IscpInstance& instance_;
  GreedyConfig cfg_;
  std::vector<std::uint64_t> uncovered_;
  std::vector<std::size_t> selected_;
  std::vector<unsigned char> used_;
};

// Minimal covers of the instance in lexicographic order (x_1 first).
// Throws for n > max_n.
std::vector<CoverSolution> minimal_covers(const IscpInstance& instance,
                                          std::size_t max_n = 25);

struct OptimumResult {
  CoverSolution solution;
  double cost = 0.0;
};

// Brute-force exact optimum; among equal-cost optima the lexicographically
// smallest bit vector. Throws for n > 25.
OptimumResult exact_optimum(const IscpInstance& instance,
                            std::span<const double> c);

// Reusable exact solver over a precomputed list of minimal covers.
class OptimumSolver {
 public:
  explicit OptimumSolver(const IscpInstance& instance, std::size_t max_n = 25);
  // Index into covers() of the optimum at c.
  std::size_t solve(std::span<const double> c) const;
  const std::vector<CoverSolution>& covers() const { return covers_; }

 private:
  std::vector<CoverSolution> covers_;
  std::vector<std::vector<std::size_t>> members_;
};

// c(Cvr) / c(Opt). Throws when opt_cost <= 0.
double approx_ratio(double greedy_cost, double opt_cost);

}  // namespace iscp
