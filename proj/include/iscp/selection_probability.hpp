#pragma once

#include <span>
#include <vector>

#include "iscp/greedy.hpp"
#include "iscp/interval.hpp"

namespace iscp {

// Probability that each competitor wins one greedy step (smallest c_j / p_j,
// ties to the lowest index) when the costs are independent and uniform on
// box. Continuous mode integrates the product of survival functions of the
// ratio distributions piecewise with Gauss-Legendre rules of sufficient
// order, so the result is exact up to rounding. Integer mode sums exactly
// over the integer points of each competitor's range.
std::vector<double> step_win_probabilities(std::span<const Interval> box,
                                           std::span<const Competitor> competitors,
                                           SampleDomain domain);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t points);

}  // namespace iscp
