#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iscp/interval.hpp"

namespace iscp {

// Binary selection vector x over the set collection; E_x = {S_i : x_i = 1}.
// Ordered lexicographically with x_1 compared first.
class CoverSolution {
 public:
  CoverSolution() = default;
  explicit CoverSolution(std::size_t n) : selected_(n, false) {}
  explicit CoverSolution(std::vector<bool> bits) : selected_(std::move(bits)) {}
  static CoverSolution from_indices(std::size_t n,
                                    std::span<const std::size_t> indices);
  // Parses "0101..." (x_1 first).
  static CoverSolution from_string(const std::string& bits);

  std::size_t size() const { return selected_.size(); }
  bool operator[](std::size_t i) const { return selected_[i]; }
  void set(std::size_t i, bool value = true) { selected_[i] = value; }
  std::size_t count() const;
  std::vector<std::size_t> indices() const;
  const std::vector<bool>& bits() const { return selected_; }
  std::string to_string() const;

  friend bool operator==(const CoverSolution&, const CoverSolution&) = default;
  friend bool operator<(const CoverSolution& a, const CoverSolution& b) {
    return a.selected_ < b.selected_;
  }

 private:
  std::vector<bool> selected_;
};

struct RadiusSpec {
  enum class Kind { kAbsolute, kRelative };
  Kind kind = Kind::kAbsolute;
  double value = 0.0;

  static RadiusSpec absolute(double delta) { return {Kind::kAbsolute, delta}; }
  static RadiusSpec relative(double fraction) {
    return {Kind::kRelative, fraction};
  }
  Interval apply(double mean_cost) const;
};

// Interval set cover instance: universe {1..m}, subsets S_1..S_n, cost box.
// Construction never throws on semantic problems; call validate().
class IscpInstance {
 public:
  IscpInstance() = default;
  IscpInstance(int m, std::vector<std::vector<int>> sets, Box cost_box);
  static IscpInstance with_radius(int m, std::vector<std::vector<int>> sets,
                                  std::span<const double> mean_costs,
                                  RadiusSpec radius);

  int m() const { return m_; }
  std::size_t n() const { return sets_.size(); }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  std::span<const int> set(std::size_t i) const { return sets_[i]; }
  const Box& cost_box() const { return cost_box_; }
  const Scenario& mean_costs() const { return mean_costs_; }

  // Packed membership bitmasks, words_per_set() words per subset.
  std::size_t words_per_set() const { return words_; }
  std::span<const std::uint64_t> mask(std::size_t i) const {
    return {masks_.data() + i * words_, words_};
  }
  std::span<const std::uint64_t> universe_mask() const { return universe_; }

  // Same sets and centres, different cost box (used for radius sweeps).
  IscpInstance with_box(Box cost_box) const;

 private:
  int m_ = 0;
  std::vector<std::vector<int>> sets_;
  Box cost_box_;
  Scenario mean_costs_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> universe_;
};

// Every violated instance invariant, empty when valid.
std::vector<std::string> validate(const IscpInstance& instance);

bool is_cover(const IscpInstance& instance, const CoverSolution& x);
double cost(const IscpInstance& instance, const CoverSolution& x,
            std::span<const double> c);
Interval interval_cost_naive(const IscpInstance& instance,
                             const CoverSolution& x);
// H(m) = 1 + 1/2 + ... + 1/m.
double harmonic_bound(int m);

}  // namespace iscp
