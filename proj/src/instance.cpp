#include "iscp/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace iscp {

CoverSolution CoverSolution::from_indices(std::size_t n,
                                          std::span<const std::size_t> indices) {
  CoverSolution x(n);
  for (std::size_t i : indices) {
    if (i >= n) throw std::out_of_range("cover index out of range");
    x.set(i);
  }
  return x;
}

CoverSolution CoverSolution::from_string(const std::string& bits) {
  std::vector<bool> out;
  out.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("solution bits must be 0/1: " + bits);
    }
    out.push_back(ch == '1');
  }
  return CoverSolution(std::move(out));
}

std::size_t CoverSolution::count() const {
  return static_cast<std::size_t>(
      std::count(selected_.begin(), selected_.end(), true));
}

std::vector<std::size_t> CoverSolution::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i]) out.push_back(i);
  }
  return out;
}

std::string CoverSolution::to_string() const {
  std::string out(selected_.size(), '0');
  for (std::size_t i = 0; i < selected_.size(); ++i) {
    if (selected_[i]) out[i] = '1';
  }
  return out;
}

Interval RadiusSpec::apply(double mean_cost) const {
  const double delta = kind == Kind::kAbsolute ? value : value * mean_cost;
  if (delta < 0.0) throw std::invalid_argument("negative cost radius");
  return {mean_cost - delta, mean_cost + delta};
}

IscpInstance::IscpInstance(int m, std::vector<std::vector<int>> sets,
                           Box cost_box)
    : m_(m), sets_(std::move(sets)), cost_box_(std::move(cost_box)) {
  if (m_ < 0) throw std::invalid_argument("negative universe size");
  for (auto& s : sets_) std::sort(s.begin(), s.end());
  mean_costs_ = midpoints(cost_box_);
  words_ = (static_cast<std::size_t>(m_) + 63) / 64;
  if (words_ == 0) words_ = 1;
  masks_.assign(words_ * sets_.size(), 0);
  universe_.assign(words_, 0);
  for (int e = 1; e <= m_; ++e) {
    universe_[(e - 1) / 64] |= std::uint64_t{1} << ((e - 1) % 64);
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    for (int e : sets_[i]) {
      if (e < 1 || e > m_) continue;
      masks_[i * words_ + (e - 1) / 64] |= std::uint64_t{1} << ((e - 1) % 64);
    }
  }
}

IscpInstance IscpInstance::with_radius(int m,
                                       std::vector<std::vector<int>> sets,
                                       std::span<const double> mean_costs,
                                       RadiusSpec radius) {
  Box box;
  box.reserve(mean_costs.size());
  for (double c : mean_costs) box.push_back(radius.apply(c));
  IscpInstance out(m, std::move(sets), std::move(box));
  // Keep the stated centres verbatim instead of recomputed midpoints.
  out.mean_costs_.assign(mean_costs.begin(), mean_costs.end());
  return out;
}

IscpInstance IscpInstance::with_box(Box cost_box) const {
  IscpInstance out = *this;
  out.cost_box_ = std::move(cost_box);
  out.mean_costs_ = midpoints(out.cost_box_);
  return out;
}

std::vector<std::string> validate(const IscpInstance& instance) {
  std::vector<std::string> issues;
  const std::size_t n = instance.n();
  if (instance.m() < 1) issues.push_back("universe must contain at least one element");
  if (n == 0) issues.push_back("instance has no sets");
  if (instance.cost_box().size() != n) {
    issues.push_back("cost box length " +
                     std::to_string(instance.cost_box().size()) +
                     " does not match set count " + std::to_string(n));
  }
  if (instance.mean_costs().size() != n) {
    issues.push_back("mean cost length does not match set count");
  }
  std::vector<int> multiplicity(static_cast<std::size_t>(std::max(instance.m(), 0)) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = instance.set(i);
    const std::string name = "set " + std::to_string(i + 1);
    if (s.empty()) issues.push_back(name + " is empty");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 1 || s[k] > instance.m()) {
        issues.push_back(name + " has element " + std::to_string(s[k]) +
                         " outside the universe");
        continue;
      }
      if (k > 0 && s[k] == s[k - 1]) {
        issues.push_back(name + " repeats element " + std::to_string(s[k]));
        continue;
      }
      ++multiplicity[static_cast<std::size_t>(s[k])];
    }
  }
  for (int e = 1; e <= instance.m(); ++e) {
    if (multiplicity[static_cast<std::size_t>(e)] == 0) {
      issues.push_back("uncovered element " + std::to_string(e));
    }
  }
  const std::size_t common = std::min(instance.cost_box().size(),
                                      instance.mean_costs().size());
  for (std::size_t i = 0; i < instance.cost_box().size(); ++i) {
    const Interval& a = instance.cost_box()[i];
    const std::string name = "cost " + std::to_string(i + 1);
    if (!(a.lo <= a.hi)) issues.push_back(name + " has inverted bounds");
    if (!(a.lo > 0.0)) issues.push_back(name + " has nonpositive lower bound");
    if (i < common) {
      const double mid = midpoint(a);
      const double tol = 1e-9 * std::max(1.0, std::abs(mid));
      if (std::abs(instance.mean_costs()[i] - mid) > tol) {
        issues.push_back(name + " mean is not the interval midpoint");
      }
    }
  }
  return issues;
}

namespace {
void check_length(const IscpInstance& instance, std::size_t size) {
  if (size != instance.n()) {
    throw std::invalid_argument("vector length " + std::to_string(size) +
                                " does not match set count " +
                                std::to_string(instance.n()));
  }
}
}  // namespace

bool is_cover(const IscpInstance& instance, const CoverSolution& x) {
  check_length(instance, x.size());
  const std::size_t words = instance.words_per_set();
  std::vector<std::uint64_t> covered(words, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    const auto mask = instance.mask(i);
    for (std::size_t w = 0; w < words; ++w) covered[w] |= mask[w];
  }
  return std::equal(covered.begin(), covered.end(),
                    instance.universe_mask().begin());
}

double cost(const IscpInstance& instance, const CoverSolution& x,
            std::span<const double> c) {
  check_length(instance, x.size());
  check_length(instance, c.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total += c[i];
  }
  return total;
}

Interval interval_cost_naive(const IscpInstance& instance,
                             const CoverSolution& x) {
  check_length(instance, x.size());
  Interval total = Interval::point(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total = total + instance.cost_box()[i];
  }
  return total;
}

double harmonic_bound(int m) {
  if (m < 1) throw std::invalid_argument("harmonic_bound needs m >= 1");
  double sum = 0.0;
  // Summed smallest-first for accuracy.
  for (int k = m; k >= 1; --k) sum += 1.0 / k;
  return sum;
}

}  // namespace iscp
