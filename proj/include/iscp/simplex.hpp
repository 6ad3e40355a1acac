#pragma once

#include <vector>

namespace iscp::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
};

// maximize objective . x  subject to  rows * x <= rhs,  x >= 0.
// Dense two-phase simplex with Bland's rule; meant for the small systems
// that arise on desk-scale instances.
Result maximize(const std::vector<std::vector<double>>& rows,
                const std::vector<double>& rhs,
                const std::vector<double>& objective, double eps = 1e-9);

}  // namespace iscp::lp
