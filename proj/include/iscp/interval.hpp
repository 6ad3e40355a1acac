#pragma once

#include <span>
#include <string>
#include <vector>

namespace iscp {

class Rng;

// Closed real interval [lo, hi]. Cost intervals are the positive subset.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_value, double hi_value);
  static Interval point(double value) { return {value, value}; }

  double width() const { return hi - lo; }
  bool is_degenerate() const { return lo == hi; }
  bool contains(double value) const { return lo <= value && value <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool is_positive() const { return lo > 0.0; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;
using Scenario = std::vector<double>;

enum class SampleDomain { kContinuous, kInteger };

Interval add(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Interval& b);
// Throws std::invalid_argument for negative alpha.
Interval scale(double alpha, const Interval& a);
double midpoint(const Interval& a);
// Smallest interval containing both.
Interval hull(const Interval& a, const Interval& b);

Scenario midpoints(std::span<const Interval> box);
bool box_contains(std::span<const Interval> box, std::span<const double> c);

// Componentwise independent uniform draw. Integer mode draws from the
// integers inside each component and throws if a component has none.
Scenario sample_scenario(std::span<const Interval> box, SampleDomain domain,
                         Rng& rng);
void sample_scenario_into(std::span<const Interval> box, SampleDomain domain,
                          Rng& rng, std::span<double> out);

std::string to_string(const Interval& a);
std::string to_string(SampleDomain domain);
SampleDomain parse_domain(const std::string& text);

}  // namespace iscp
