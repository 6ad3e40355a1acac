#include "iscp/selection_probability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace iscp {

const GaussRule& gauss_legendre(std::size_t points) {
  static std::mutex guard;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(points);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const double n = static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= points; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return cache.emplace(points, std::move(rule)).first->second;
}

namespace {

struct RatioRange {
  double lo;
  double hi;
  bool point() const { return lo == hi; }
};

// P(ratio of k is beaten by a winner sitting at t), continuous k only.
double survival(const RatioRange& r, double t) {
  if (t <= r.lo) return 1.0;
  if (t >= r.hi) return 0.0;
  return (r.hi - t) / (r.hi - r.lo);
}

std::vector<double> continuous_probabilities(
    std::span<const Interval> box, std::span<const Competitor> competitors) {
  const std::size_t count = competitors.size();
  std::vector<RatioRange> ranges(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Interval& a = box[competitors[i].set];
    const double p = competitors[i].new_count;
    ranges[i] = {a.lo / p, a.hi / p};
  }
  std::vector<double> out(count, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const RatioRange& rj = ranges[j];
    if (rj.point()) {
      double prob = 1.0;
      for (std::size_t k = 0; k < count && prob > 0.0; ++k) {
        if (k == j) continue;
        const RatioRange& rk = ranges[k];
        if (rk.point()) {
          const bool wins = rj.lo < rk.lo ||
                            (rj.lo == rk.lo && competitors[j].set < competitors[k].set);
          if (!wins) prob = 0.0;
        } else {
          prob *= survival(rk, rj.lo);
        }
      }
      out[j] = prob;
      continue;
    }
    // Breakpoints inside (lo_j, hi_j).
    std::vector<double> cuts{rj.lo, rj.hi};
    for (std::size_t k = 0; k < count; ++k) {
      if (k == j) continue;
      for (double t : {ranges[k].lo, ranges[k].hi}) {
        if (t > rj.lo && t < rj.hi) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double integral = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double a = cuts[s];
      const double b = cuts[s + 1];
      const double mid = 0.5 * (a + b);
      std::size_t degree = 0;
      bool zero = false;
      for (std::size_t k = 0; k < count; ++k) {
        if (k == j) continue;
        const RatioRange& rk = ranges[k];
        if (rk.point() || mid <= rk.lo || mid >= rk.hi) {
          if (rk.point() ? rk.lo <= mid : mid >= rk.hi) zero = true;
          continue;
        }
        ++degree;
      }
      if (zero) continue;
      const GaussRule& rule = gauss_legendre(degree / 2 + 1);
      const double half = 0.5 * (b - a);
      double segment = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = mid + half * rule.nodes[q];
        double value = 1.0;
        for (std::size_t k = 0; k < count; ++k) {
          if (k == j || ranges[k].point()) continue;
          value *= survival(ranges[k], t);
        }
        segment += rule.weights[q] * value;
      }
      integral += half * segment;
    }
    out[j] = integral / (rj.hi - rj.lo);
  }
  return out;
}

std::vector<double> integer_probabilities(
    std::span<const Interval> box, std::span<const Competitor> competitors) {
  const std::size_t count = competitors.size();
  struct Range {
    long long lo;
    long long hi;
    long long p;
    std::size_t set;
  };
  std::vector<Range> ranges(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Interval& a = box[competitors[i].set];
    const auto lo = static_cast<long long>(std::ceil(a.lo - 1e-9));
    const auto hi = static_cast<long long>(std::floor(a.hi + 1e-9));
    if (lo > hi) throw std::invalid_argument("integer range without integers");
    ranges[i] = {lo, hi, competitors[i].new_count, competitors[i].set};
  }
  // Number of u in [lo, hi] with u >= threshold.
  auto at_least = [](const Range& r, long long threshold) -> long long {
    const long long from = std::max(r.lo, threshold);
    return from > r.hi ? 0 : r.hi - from + 1;
  };
  auto floor_div = [](long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };
  std::vector<double> out(count, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const Range& rj = ranges[j];
    double total = 0.0;
    for (long long v = rj.lo; v <= rj.hi; ++v) {
      double prob = 1.0;
      for (std::size_t k = 0; k < count && prob > 0.0; ++k) {
        if (k == j) continue;
        const Range& rk = ranges[k];
        // j beats u when p_k v < p_j u, or equality and j has lower index.
        const long long num = rk.p * v;
        long long threshold = floor_div(num, rj.p) + 1;  // strict
        if (rj.set < rk.set && num % rj.p == 0) threshold = num / rj.p;
        prob *= static_cast<double>(at_least(rk, threshold)) /
                static_cast<double>(rk.hi - rk.lo + 1);
      }
      total += prob;
    }
    out[j] = total / static_cast<double>(rj.hi - rj.lo + 1);
  }
  return out;
}

}  // namespace

std::vector<double> step_win_probabilities(std::span<const Interval> box,
                                           std::span<const Competitor> competitors,
                                           SampleDomain domain) {
  for (const auto& comp : competitors) {
    if (comp.set >= box.size() || comp.new_count < 1) {
      throw std::invalid_argument("bad competitor for step probability");
    }
  }
  return domain == SampleDomain::kContinuous
             ? continuous_probabilities(box, competitors)
             : integer_probabilities(box, competitors);
}

}  // namespace iscp
