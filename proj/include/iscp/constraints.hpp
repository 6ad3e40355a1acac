#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iscp/interval.hpp"

namespace iscp {

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

// sum(terms) <= bound, or < bound when strict. At most two terms.
struct Inequality {
  std::array<Term, 2> terms{};
  std::size_t size = 0;
  double bound = 0.0;
  bool strict = false;

  static Inequality single(std::size_t var, double coef, double bound,
                           bool strict = false);
  static Inequality pair(std::size_t a, double coef_a, std::size_t b,
                         double coef_b, double bound, bool strict = false);
  // Ratio comparison c_a / p_a <= c_b / p_b written as p_b c_a - p_a c_b <= 0.
  static Inequality ratio_at_most(std::size_t a, int p_a, std::size_t b,
                                  int p_b, bool strict);

  double lhs(const std::vector<double>& c) const;
  bool satisfied_by(const std::vector<double>& c) const;
  bool is_monotone() const;
};

struct ConstraintSystem {
  std::vector<Inequality> inequalities;
  Box box;
};

struct FeasibilityResult {
  bool feasible = false;
  // A scenario in the box satisfying every inequality (strict ones
  // strictly), present when feasible.
  std::optional<Scenario> witness;
  // Tightest bounds found by propagation on the closure (strictness
  // ignored). For systems of ratio comparisons these are the exact
  // coordinate ranges of the feasible region.
  Box bounds;
};

// Tightens box to a fixed point of bound propagation through every
// inequality. strict_slack > 0 turns strict rows into rows with that much
// slack. Integer mode rounds bounds inward. Returns nullopt when some
// variable's range becomes empty.
std::optional<Box> propagate_bounds(const std::vector<Inequality>& rows,
                                    Box box, double strict_slack,
                                    SampleDomain domain,
                                    std::size_t max_passes = 10000);

// Slack used for strict rows in continuous mode: 1e-9 times the largest
// component width of the box (or 1e-9 for degenerate boxes).
double strict_slack_for(const Box& box);

FeasibilityResult feasible(const ConstraintSystem& sys,
                           SampleDomain domain = SampleDomain::kContinuous);

std::string to_string(const Inequality& row);

}  // namespace iscp
