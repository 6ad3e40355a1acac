#include "iscp/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "iscp/rng.hpp"

namespace iscp {

Interval::Interval(double lo_value, double hi_value)
    : lo(lo_value), hi(hi_value) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("interval lower bound exceeds upper bound");
  }
}

Interval add(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }

Interval scale(double alpha, const Interval& a) {
  if (alpha < 0.0) {
    throw std::invalid_argument("interval scaling needs a nonnegative factor");
  }
  return {alpha * a.lo, alpha * a.hi};
}

double midpoint(const Interval& a) { return 0.5 * (a.lo + a.hi); }

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Scenario midpoints(std::span<const Interval> box) {
  Scenario out(box.size());
  std::transform(box.begin(), box.end(), out.begin(),
                 [](const Interval& a) { return midpoint(a); });
  return out;
}

bool box_contains(std::span<const Interval> box, std::span<const double> c) {
  if (box.size() != c.size()) return false;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box[i].contains(c[i])) return false;
  }
  return true;
}

void sample_scenario_into(std::span<const Interval> box, SampleDomain domain,
                          Rng& rng, std::span<double> out) {
  if (out.size() != box.size()) {
    throw std::invalid_argument("scenario buffer length mismatch");
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Interval& a = box[i];
    if (domain == SampleDomain::kContinuous) {
      out[i] = rng.uniform(a.lo, a.hi);
      continue;
    }
    const double lo = std::ceil(a.lo);
    const double hi = std::floor(a.hi);
    if (lo > hi) {
      throw std::invalid_argument("interval " + to_string(a) +
                                  " contains no integer");
    }
    out[i] = static_cast<double>(rng.uniform_int(static_cast<std::int64_t>(lo),
                                                 static_cast<std::int64_t>(hi)));
  }
}

Scenario sample_scenario(std::span<const Interval> box, SampleDomain domain,
                         Rng& rng) {
  Scenario out(box.size());
  sample_scenario_into(box, domain, rng, out);
  return out;
}

std::string to_string(const Interval& a) {
  std::ostringstream os;
  os.precision(12);
  os << '[' << a.lo << ',' << a.hi << ']';
  return os.str();
}

std::string to_string(SampleDomain domain) {
  return domain == SampleDomain::kContinuous ? "continuous" : "integer";
}

SampleDomain parse_domain(const std::string& text) {
  if (text == "continuous") return SampleDomain::kContinuous;
  if (text == "integer") return SampleDomain::kInteger;
  throw std::invalid_argument("unknown sampling domain: " + text);
}

}  // namespace iscp
