#include "iscp/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iscp/simplex.hpp"

namespace iscp {

Inequality Inequality::single(std::size_t var, double coef, double bound,
                              bool strict) {
  Inequality row;
  row.terms[0] = {var, coef};
  row.size = 1;
  row.bound = bound;
  row.strict = strict;
  return row;
}

Inequality Inequality::pair(std::size_t a, double coef_a, std::size_t b,
                            double coef_b, double bound, bool strict) {
  if (a == b) return single(a, coef_a + coef_b, bound, strict);
  Inequality row;
  row.terms[0] = {a, coef_a};
  row.terms[1] = {b, coef_b};
  row.size = 2;
  row.bound = bound;
  row.strict = strict;
  return row;
}

Inequality Inequality::ratio_at_most(std::size_t a, int p_a, std::size_t b,
                                     int p_b, bool strict) {
  return pair(a, static_cast<double>(p_b), b, -static_cast<double>(p_a), 0.0,
              strict);
}

double Inequality::lhs(const std::vector<double>& c) const {
  double total = 0.0;
  for (std::size_t t = 0; t < size; ++t) total += terms[t].coef * c[terms[t].var];
  return total;
}

bool Inequality::satisfied_by(const std::vector<double>& c) const {
  const double value = lhs(c);
  return strict ? value < bound : value <= bound;
}

bool Inequality::is_monotone() const {
  if (size < 2) return true;
  return (terms[0].coef > 0.0) != (terms[1].coef > 0.0) &&
         terms[0].coef != 0.0 && terms[1].coef != 0.0;
}

double strict_slack_for(const Box& box) {
  double width = 0.0;
  for (const auto& a : box) width = std::max(width, a.width());
  return 1e-9 * (width > 0.0 ? width : 1.0);
}

namespace {

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

double row_slack(const Inequality& row, double strict_slack,
                 SampleDomain domain) {
  if (!row.strict) return 0.0;
  if (domain == SampleDomain::kInteger) {
    bool integral = row.bound == std::floor(row.bound);
    for (std::size_t t = 0; t < row.size; ++t) {
      integral = integral && row.terms[t].coef == std::floor(row.terms[t].coef);
    }
    if (integral) return 1.0;
  }
  double scale = 0.0;
  for (std::size_t t = 0; t < row.size; ++t) scale += std::abs(row.terms[t].coef);
  return strict_slack * std::max(scale, 1.0);
}

// Returns false on an empty range.
bool tighten(Bounds& b, std::size_t var, double new_lo, double new_hi,
             SampleDomain domain, bool& changed) {
  if (domain == SampleDomain::kInteger) {
    // Absorb rounding noise before rounding inward.
    new_lo = std::ceil(new_lo - 1e-9);
    new_hi = std::floor(new_hi + 1e-9);
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(b.hi[var]));
  if (new_lo > b.lo[var] + tol) {
    b.lo[var] = new_lo;
    changed = true;
  }
  if (new_hi < b.hi[var] - tol) {
    b.hi[var] = new_hi;
    changed = true;
  }
  return b.lo[var] <= b.hi[var] + 1e-12 * std::max(1.0, std::abs(b.hi[var]));
}

}  // namespace

std::optional<Box> propagate_bounds(const std::vector<Inequality>& rows,
                                    Box box, double strict_slack,
                                    SampleDomain domain,
                                    std::size_t max_passes) {
  Bounds b;
  b.lo.reserve(box.size());
  b.hi.reserve(box.size());
  for (const auto& a : box) {
    b.lo.push_back(a.lo);
    b.hi.push_back(a.hi);
  }
  for (std::size_t v = 0; v < box.size(); ++v) {
    bool ignored = false;
    if (!tighten(b, v, b.lo[v], b.hi[v], domain, ignored)) return std::nullopt;
  }
  for (const auto& row : rows) {
    for (std::size_t t = 0; t < row.size; ++t) {
      if (row.terms[t].var >= box.size()) {
        throw std::out_of_range("inequality refers to a variable outside the box");
      }
    }
  }
  bool changed = true;
  for (std::size_t pass = 0; changed && pass < max_passes; ++pass) {
    changed = false;
    for (const auto& row : rows) {
      const double rhs = row.bound - row_slack(row, strict_slack, domain);
      for (std::size_t t = 0; t < row.size; ++t) {
        const Term& self = row.terms[t];
        if (self.coef == 0.0) continue;
        // Smallest possible contribution of the other term.
        double other_min = 0.0;
        if (row.size == 2) {
          const Term& other = row.terms[1 - t];
          other_min = other.coef > 0.0 ? other.coef * b.lo[other.var]
                                       : other.coef * b.hi[other.var];
        }
        const double limit = (rhs - other_min) / self.coef;
        double lo = b.lo[self.var];
        double hi = b.hi[self.var];
        if (self.coef > 0.0) {
          hi = std::min(hi, limit);
        } else {
          lo = std::max(lo, limit);
        }
        if (!tighten(b, self.var, lo, hi, domain, changed)) return std::nullopt;
      }
    }
  }
  Box out(box.size());
  for (std::size_t v = 0; v < box.size(); ++v) {
    out[v].lo = b.lo[v];
    out[v].hi = std::max(b.lo[v], b.hi[v]);
  }
  return out;
}

namespace {

bool satisfies_all(const ConstraintSystem& sys, const std::vector<double>& c) {
  if (!box_contains(sys.box, c)) return false;
  return std::all_of(sys.inequalities.begin(), sys.inequalities.end(),
                     [&](const Inequality& row) { return row.satisfied_by(c); });
}

std::optional<Scenario> lp_witness(const ConstraintSystem& sys, const Box& box,
                                   double strict_slack) {
  // Shift to u = c - lo >= 0 with u <= width.
  const std::size_t n = box.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<double> row(n, 0.0);
    row[v] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(box[v].width());
  }
  for (const auto& ineq : sys.inequalities) {
    std::vector<double> row(n, 0.0);
    double shift = 0.0;
    for (std::size_t t = 0; t < ineq.size; ++t) {
      row[ineq.terms[t].var] += ineq.terms[t].coef;
      shift += ineq.terms[t].coef * box[ineq.terms[t].var].lo;
    }
    rows.push_back(std::move(row));
    rhs.push_back(ineq.bound - shift -
                  row_slack(ineq, strict_slack, SampleDomain::kContinuous));
  }
  const auto result = lp::maximize(rows, rhs, std::vector<double>(n, 0.0));
  if (result.status != lp::Status::kOptimal) return std::nullopt;
  Scenario c(n);
  for (std::size_t v = 0; v < n; ++v) {
    c[v] = std::clamp(box[v].lo + result.x[v], box[v].lo, box[v].hi);
  }
  return c;
}

std::optional<Scenario> integer_search(const ConstraintSystem& sys, Box box,
                                       std::size_t& budget) {
  auto tightened = propagate_bounds(sys.inequalities, std::move(box), 0.0,
                                    SampleDomain::kInteger);
  if (!tightened) return std::nullopt;
  Scenario hi(tightened->size());
  Scenario lo(tightened->size());
  for (std::size_t v = 0; v < hi.size(); ++v) {
    hi[v] = (*tightened)[v].hi;
    lo[v] = (*tightened)[v].lo;
  }
  if (satisfies_all(sys, hi)) return hi;
  if (satisfies_all(sys, lo)) return lo;
  if (budget == 0) throw std::runtime_error("integer feasibility search budget exhausted");
  --budget;
  std::size_t split = hi.size();
  for (std::size_t v = 0; v < hi.size(); ++v) {
    if ((*tightened)[v].lo < (*tightened)[v].hi &&
        (split == hi.size() ||
         (*tightened)[v].width() > (*tightened)[split].width())) {
      split = v;
    }
  }
  if (split == hi.size()) return std::nullopt;
  const double mid = std::floor(midpoint((*tightened)[split]));
  Box left = *tightened;
  left[split].hi = mid;
  if (auto found = integer_search(sys, left, budget)) return found;
  Box right = *tightened;
  right[split].lo = mid + 1.0;
  return integer_search(sys, right, budget);
}

}  // namespace

FeasibilityResult feasible(const ConstraintSystem& sys, SampleDomain domain) {
  FeasibilityResult result;
  const double slack = strict_slack_for(sys.box);
  auto closure = propagate_bounds(sys.inequalities, sys.box, 0.0, domain);
  if (!closure) return result;
  auto strict = propagate_bounds(sys.inequalities, sys.box, slack, domain);
  if (!strict) return result;
  result.bounds = std::move(*closure);

  Scenario hi(strict->size());
  Scenario lo(strict->size());
  for (std::size_t v = 0; v < hi.size(); ++v) {
    hi[v] = (*strict)[v].hi;
    lo[v] = (*strict)[v].lo;
  }
  // For monotone systems the propagated upper (and lower) corner is itself
  // feasible; anything else is settled exactly below.
  for (const Scenario* candidate : {&hi, &lo}) {
    if (satisfies_all(sys, *candidate)) {
      result.feasible = true;
      result.witness = *candidate;
      return result;
    }
  }
  std::optional<Scenario> witness;
  if (domain == SampleDomain::kContinuous) {
    witness = lp_witness(sys, *strict, slack);
  } else {
    std::size_t budget = 1u << 20;
    ConstraintSystem strict_sys = sys;
    for (auto& row : strict_sys.inequalities) {
      if (row.strict) {
        row.bound -= row_slack(row, slack, domain);
        row.strict = false;
      }
    }
    witness = integer_search(strict_sys, *strict, budget);
  }
  if (witness && satisfies_all(sys, *witness)) {
    result.feasible = true;
    result.witness = std::move(witness);
  }
  return result;
}

std::string to_string(const Inequality& row) {
  std::ostringstream os;
  for (std::size_t t = 0; t < row.size; ++t) {
    if (t > 0) os << (row.terms[t].coef < 0 ? " - " : " + ");
    else if (row.terms[t].coef < 0) os << '-';
    os << std::abs(row.terms[t].coef) << "*c" << row.terms[t].var + 1;
  }
  os << (row.strict ? " < " : " <= ") << row.bound;
  return os.str();
}

}  // namespace iscp
