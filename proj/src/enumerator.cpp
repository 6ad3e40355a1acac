#include "iscp/enumerator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "iscp/selection_probability.hpp"
#include "iscp/simplex.hpp"

namespace iscp {

const ApproxSolutionRecord* UnitedApproxSet::find(const CoverSolution& x) const {
  auto it = std::lower_bound(
      records.begin(), records.end(), x,
      [](const ApproxSolutionRecord& r, const CoverSolution& s) {
        return r.solution < s;
      });
  if (it == records.end() || !(it->solution == x)) return nullptr;
  return &*it;
}

namespace {

Interval box_cost(const Box& box, const CoverSolution& x) {
  Interval total = Interval::point(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) total = total + box[i];
  }
  return total;
}

bool all_monotone(const std::vector<Inequality>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Inequality& r) { return r.is_monotone(); });
}

class Enumerator {
 public:
  Enumerator(const IscpInstance& instance, const EnumerationOptions& options)
      : instance_(instance),
        options_(options),
        slack_(strict_slack_for(instance.cost_box())) {}

  EnumerationResult run() {
    std::vector<std::uint64_t> uncovered(instance_.universe_mask().begin(),
                                         instance_.universe_mask().end());
    CoverSolution chosen(instance_.n());
    std::vector<Inequality> rows;
    explore(uncovered, chosen, rows, instance_.cost_box(), 1.0);

    EnumerationResult result;
    result.united.nodes_explored = nodes_;
    result.united.partial = partial_;
    for (auto& [solution, acc] : found_) {
      ApproxSolutionRecord record;
      record.solution = solution;
      record.refined_cost = acc.leaves.front().cost;
      for (const auto& leaf : acc.leaves) {
        record.refined_cost = hull(record.refined_cost, leaf.cost);
        record.branch_probability += leaf.branch_probability;
      }
      record.branch_count = acc.leaves.size();
      record.witness = acc.leaves.front().witness;
      record.leaves = std::move(acc.leaves);
      result.united.records.push_back(std::move(record));
      if (options_.keep_leaf_systems) {
        result.leaf_systems.push_back(std::move(acc.systems));
      }
    }
    return result;
  }

 private:
  struct Accumulator {
    std::vector<LeafInfo> leaves;
    std::vector<ConstraintSystem> systems;
  };

  void explore(const std::vector<std::uint64_t>& uncovered,
               CoverSolution& chosen, std::vector<Inequality>& rows,
               const Box& closure, double probability) {
    if (partial_) return;
    if (++nodes_ > options_.node_limit) {
      partial_ = true;
      return;
    }
    if (std::all_of(uncovered.begin(), uncovered.end(),
                    [](std::uint64_t w) { return w == 0; })) {
      record_leaf(chosen, rows, closure, probability);
      return;
    }
    std::vector<Competitor> competitors;
    for (std::size_t j = 0; j < instance_.n(); ++j) {
      int p = 0;
      const auto mask = instance_.mask(j);
      for (std::size_t w = 0; w < uncovered.size(); ++w) {
        p += std::popcount(mask[w] & uncovered[w]);
      }
      if (p > 0) competitors.push_back({j, p});
    }
    const std::vector<double> win =
        step_win_probabilities(closure, competitors, options_.domain);

    for (std::size_t a = 0; a < competitors.size(); ++a) {
      const Competitor& pick = competitors[a];
      const std::size_t base = rows.size();
      for (const Competitor& other : competitors) {
        if (other.set == pick.set) continue;
        // Lower-index competitors win ties, so they must be strictly beaten.
        rows.push_back(Inequality::ratio_at_most(pick.set, pick.new_count,
                                                 other.set, other.new_count,
                                                 other.set < pick.set));
      }
      auto child = propagate_bounds(rows, closure, 0.0, options_.domain);
      const bool reachable =
          child && strictly_feasible(rows, *child).has_value();
      if (reachable) {
        std::vector<std::uint64_t> next = uncovered;
        const auto mask = instance_.mask(pick.set);
        for (std::size_t w = 0; w < next.size(); ++w) next[w] &= ~mask[w];
        chosen.set(pick.set);
        explore(next, chosen, rows, *child, probability * win[a]);
        chosen.set(pick.set, false);
      }
      rows.resize(base);
      if (partial_) return;
    }
  }

  std::optional<Scenario> strictly_feasible(const std::vector<Inequality>& rows,
                                            const Box& closure) const {
    auto strict = propagate_bounds(rows, closure, slack_, options_.domain);
    if (!strict) return std::nullopt;
    Scenario corner(strict->size());
    for (std::size_t v = 0; v < corner.size(); ++v) corner[v] = (*strict)[v].hi;
    const bool ok = std::all_of(rows.begin(), rows.end(), [&](const Inequality& r) {
      return r.satisfied_by(corner);
    });
    if (ok) return corner;
    // Not expected for ratio systems; settle exactly.
    ConstraintSystem sys{rows, instance_.cost_box()};
    auto result = feasible(sys, options_.domain);
    return result.witness;
  }

  void record_leaf(const CoverSolution& chosen,
                   const std::vector<Inequality>& rows, const Box& closure,
                   double probability) {
    auto witness = strictly_feasible(rows, closure);
    if (!witness) throw std::logic_error("leaf without witness");
    auto& acc = found_[chosen];
    Interval leaf_cost = box_cost(closure, chosen);
    if (!all_monotone(rows)) {
      leaf_cost = refine_cost_interval(instance_, chosen,
                                       {ConstraintSystem{rows, instance_.cost_box()}},
                                       options_.domain);
    }
    acc.leaves.push_back({leaf_cost, probability, std::move(*witness)});
    if (options_.keep_leaf_systems) {
      acc.systems.push_back(ConstraintSystem{rows, instance_.cost_box()});
    }
  }

  const IscpInstance& instance_;
  const EnumerationOptions& options_;
  double slack_;
  std::size_t nodes_ = 0;
  bool partial_ = false;
  std::map<CoverSolution, Accumulator> found_;
};

// Minimises (sense = -1) or maximises (sense = +1) the cost of x over the
// region {c in box : rows}. nullopt when empty.
std::optional<double> extreme_cost(const CoverSolution& x, const Box& box,
                                   const std::vector<std::vector<double>>& rows,
                                   const std::vector<double>& rhs,
                                   double sense) {
  const std::size_t n = box.size();
  std::vector<double> objective(n, 0.0);
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i]) {
      objective[i] = sense;
      offset += box[i].lo;
    }
  }
  const auto result = lp::maximize(rows, rhs, objective);
  if (result.status != lp::Status::kOptimal) return std::nullopt;
  return offset + sense * result.value;
}

// Shifted LP form u = c - lo: box rows u_i <= width_i plus the given rows.
void add_box_rows(const Box& box, std::vector<std::vector<double>>& rows,
                  std::vector<double>& rhs) {
  for (std::size_t v = 0; v < box.size(); ++v) {
    std::vector<double> row(box.size(), 0.0);
    row[v] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(box[v].width());
  }
}

}  // namespace

EnumerationResult enumerate_approx(const IscpInstance& instance,
                                   GreedyConfig cfg,
                                   const EnumerationOptions& options) {
  if (cfg.ratio_mode != RatioMode::kExactRational) {
    throw std::invalid_argument(
        "exact enumeration supports the exact rational ratio mode only");
  }
  if (const auto issues = validate(instance); !issues.empty()) {
    throw std::invalid_argument("invalid instance: " + issues.front());
  }
  Enumerator enumerator(instance, options);
  return enumerator.run();
}

Interval refine_cost_interval(const IscpInstance& instance,
                              const CoverSolution& solution,
                              const std::vector<ConstraintSystem>& leaf_systems,
                              SampleDomain domain) {
  if (leaf_systems.empty()) {
    throw std::invalid_argument("refine_cost_interval needs at least one leaf");
  }
  std::optional<Interval> total;
  for (const auto& sys : leaf_systems) {
    Interval leaf;
    if (all_monotone(sys.inequalities)) {
      const auto result = feasible(sys, domain);
      if (!result.feasible) throw std::logic_error("infeasible leaf system");
      leaf = box_cost(result.bounds, solution);
    } else {
      std::vector<std::vector<double>> rows;
      std::vector<double> rhs;
      add_box_rows(sys.box, rows, rhs);
      for (const auto& ineq : sys.inequalities) {
        std::vector<double> row(sys.box.size(), 0.0);
        double shift = 0.0;
        for (std::size_t t = 0; t < ineq.size; ++t) {
          row[ineq.terms[t].var] += ineq.terms[t].coef;
          shift += ineq.terms[t].coef * sys.box[ineq.terms[t].var].lo;
        }
        rows.push_back(std::move(row));
        rhs.push_back(ineq.bound - shift);
      }
      const auto lo = extreme_cost(solution, sys.box, rows, rhs, -1.0);
      const auto hi = extreme_cost(solution, sys.box, rows, rhs, 1.0);
      if (!lo || !hi) throw std::logic_error("infeasible leaf system");
      leaf = Interval(*lo, *hi);
    }
    total = total ? hull(*total, leaf) : leaf;
  }
  (void)instance;
  return *total;
}

std::vector<OptimalSolutionRecord> enumerate_optimal(const IscpInstance& instance) {
  const std::vector<CoverSolution> covers = minimal_covers(instance);
  const Box& box = instance.cost_box();
  const std::size_t n = instance.n();
  std::vector<OptimalSolutionRecord> out;
  for (std::size_t a = 0; a < covers.size(); ++a) {
    const CoverSolution& x = covers[a];
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    add_box_rows(box, rows, rhs);
    // f(x, c) <= f(y, c) for every other minimal cover y.
    for (std::size_t b = 0; b < covers.size(); ++b) {
      if (a == b) continue;
      const CoverSolution& y = covers[b];
      std::vector<double> row(n, 0.0);
      double bound = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double coef = (x[i] ? 1.0 : 0.0) - (y[i] ? 1.0 : 0.0);
        row[i] = coef;
        bound -= coef * box[i].lo;
      }
      rows.push_back(std::move(row));
      rhs.push_back(bound);
    }
    std::vector<double> zero(n, 0.0);
    const auto probe = lp::maximize(rows, rhs, zero);
    if (probe.status != lp::Status::kOptimal) continue;
    const auto lo = extreme_cost(x, box, rows, rhs, -1.0);
    const auto hi = extreme_cost(x, box, rows, rhs, 1.0);
    if (!lo || !hi) continue;
    OptimalSolutionRecord record;
    record.solution = x;
    record.refined_cost = Interval(*lo, std::max(*lo, *hi));
    record.witness.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      record.witness[i] = std::clamp(box[i].lo + probe.x[i], box[i].lo, box[i].hi);
    }
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace iscp
