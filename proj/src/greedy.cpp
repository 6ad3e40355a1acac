#include "iscp/greedy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iscp {

std::string to_string(RatioMode mode) {
  return mode == RatioMode::kExactRational ? "exact" : "floor";
}

RatioMode parse_ratio_mode(const std::string& text) {
  if (text == "exact" || text == "exact_rational") {
    return RatioMode::kExactRational;
  }
  if (text == "floor" || text == "floor_integer") {
    return RatioMode::kFloorInteger;
  }
  throw std::invalid_argument("unknown ratio mode: " + text);
}

namespace {

int new_coverage(std::span<const std::uint64_t> mask,
                 std::span<const std::uint64_t> uncovered) {
  int count = 0;
  for (std::size_t w = 0; w < mask.size(); ++w) {
    count += std::popcount(mask[w] & uncovered[w]);
  }
  return count;
}

bool any_bits(std::span<const std::uint64_t> words) {
  return std::any_of(words.begin(), words.end(),
                     [](std::uint64_t w) { return w != 0; });
}

double floor_ratio(double cost, int p) {
  if (cost == std::floor(cost) && std::abs(cost) < 0x1.0p52) {
    const auto num = static_cast<std::int64_t>(cost);
    std::int64_t q = num / p;
    if (num % p != 0 && num < 0) --q;
    return static_cast<double>(q);
  }
  return std::floor(cost / p);
}

// True when candidate (cost_a, p_a) is strictly more cost-effective than the
// incumbent (cost_b, p_b).
bool better(RatioMode mode, double cost_a, int p_a, double cost_b, int p_b) {
  if (mode == RatioMode::kExactRational) {
    return cost_a * p_b < cost_b * p_a;
  }
  return floor_ratio(cost_a, p_a) < floor_ratio(cost_b, p_b);
}

void check_scenario(const IscpInstance& instance, std::span<const double> c) {
  if (c.size() != instance.n()) {
    throw std::invalid_argument("scenario length does not match set count");
  }
}

}  // namespace

GreedyResult greedy_cover(const IscpInstance& instance,
                          std::span<const double> c, GreedyConfig cfg) {
  check_scenario(instance, c);
  const std::size_t n = instance.n();
  std::vector<std::uint64_t> uncovered(instance.universe_mask().begin(),
                                       instance.universe_mask().end());
  GreedyResult result{CoverSolution(n), {}};
  while (any_bits(uncovered)) {
    GreedyStep step;
    std::size_t best = n;
    int best_p = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int p = new_coverage(instance.mask(j), uncovered);
      if (p == 0) continue;
      step.competitors.push_back({j, p});
      if (best == n || better(cfg.ratio_mode, c[j], p, c[best], best_p)) {
        best = j;
        best_p = p;
      }
    }
    if (best == n) {
      throw std::invalid_argument("sets do not cover the universe");
    }
    step.chosen = best;
    step.new_count = best_p;
    result.solution.set(best);
    const auto mask = instance.mask(best);
    for (std::size_t w = 0; w < uncovered.size(); ++w) uncovered[w] &= ~mask[w];
    result.trace.steps.push_back(std::move(step));
  }
  return result;
}

GreedyRunner::GreedyRunner(const IscpInstance& instance, GreedyConfig cfg)
    : instance_(instance),
      cfg_(cfg),
      uncovered_(instance.words_per_set()),
      used_(instance.n()) {
  selected_.reserve(instance.n());
}

double GreedyRunner::run(std::span<const double> c) {
  const std::size_t n = instance_.n();
  const auto universe = instance_.universe_mask();
  std::copy(universe.begin(), universe.end(), uncovered_.begin());
  selected_.clear();
  double total = 0.0;
  while (any_bits(uncovered_)) {
    std::size_t best = n;
    int best_p = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int p = new_coverage(instance_.mask(j), uncovered_);
      if (p == 0) continue;
      if (best == n || better(cfg_.ratio_mode, c[j], p, c[best], best_p)) {
        best = j;
        best_p = p;
      }
    }
    if (best == n) {
      throw std::invalid_argument("sets do not cover the universe");
    }
    selected_.push_back(best);
    total += c[best];
    const auto mask = instance_.mask(best);
    for (std::size_t w = 0; w < uncovered_.size(); ++w) {
      uncovered_[w] &= ~mask[w];
    }
  }
  return total;
}

void GreedyRunner::write_solution(std::vector<bool>& bits) const {
  bits.assign(instance_.n(), false);
  for (std::size_t j : selected_) bits[j] = true;
}

std::vector<CoverSolution> minimal_covers(const IscpInstance& instance,
                                          std::size_t max_n) {
  const std::size_t n = instance.n();
  if (n > max_n) {
    throw std::invalid_argument("minimal cover enumeration limited to n <= " +
                                std::to_string(max_n));
  }
  const std::size_t words = instance.words_per_set();
  // suffix_union[i] = union of S_i..S_n, for pruning.
  std::vector<std::vector<std::uint64_t>> suffix_union(
      n + 1, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = n; i-- > 0;) {
    const auto mask = instance.mask(i);
    for (std::size_t w = 0; w < words; ++w) {
      suffix_union[i][w] = suffix_union[i + 1][w] | mask[w];
    }
  }
  const auto universe = instance.universe_mask();
  std::vector<CoverSolution> out;
  std::vector<std::size_t> chosen;
  std::vector<std::uint64_t> covered(words, 0);

  auto is_minimal = [&]() {
    for (std::size_t skip = 0; skip < chosen.size(); ++skip) {
      std::vector<std::uint64_t> rest(words, 0);
      for (std::size_t k = 0; k < chosen.size(); ++k) {
        if (k == skip) continue;
        const auto mask = instance.mask(chosen[k]);
        for (std::size_t w = 0; w < words; ++w) rest[w] |= mask[w];
      }
      if (std::equal(rest.begin(), rest.end(), universe.begin())) return false;
    }
    return true;
  };

  // Include-first DFS yields covers in lexicographically descending order
  // of bit vectors; sorted afterwards.
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (std::equal(covered.begin(), covered.end(), universe.begin())) {
      if (is_minimal()) {
        out.push_back(CoverSolution::from_indices(n, chosen));
      }
      return;
    }
    if (i == n) return;
    for (std::size_t w = 0; w < words; ++w) {
      if ((covered[w] | suffix_union[i][w]) != universe[w]) return;
    }
    const auto mask = instance.mask(i);
    bool adds = false;
    for (std::size_t w = 0; w < words; ++w) {
      if (mask[w] & ~covered[w]) adds = true;
    }
    if (adds) {
      const auto saved = covered;
      for (std::size_t w = 0; w < words; ++w) covered[w] |= mask[w];
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
      covered = saved;
    }
    self(self, i + 1);
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

OptimumSolver::OptimumSolver(const IscpInstance& instance, std::size_t max_n)
    : covers_(minimal_covers(instance, max_n)) {
  members_.reserve(covers_.size());
  for (const auto& x : covers_) members_.push_back(x.indices());
}

std::size_t OptimumSolver::solve(std::span<const double> c) const {
  std::size_t best = covers_.size();
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < members_.size(); ++k) {
    double total = 0.0;
    for (std::size_t i : members_[k]) total += c[i];
    // Strict comparison keeps the lexicographically smallest optimum.
    if (total < best_cost) {
      best_cost = total;
      best = k;
    }
  }
  if (best == covers_.size()) throw std::logic_error("instance has no cover");
  return best;
}

OptimumResult exact_optimum(const IscpInstance& instance,
                            std::span<const double> c) {
  check_scenario(instance, c);
  const OptimumSolver solver(instance);
  const std::size_t k = solver.solve(c);
  const CoverSolution& x = solver.covers()[k];
  return {x, cost(instance, x, c)};
}

double approx_ratio(double greedy_cost, double opt_cost) {
  if (!(opt_cost > 0.0)) {
    throw std::invalid_argument("approximation ratio needs a positive optimum");
  }
  return greedy_cost / opt_cost;
}

}  // namespace iscp
