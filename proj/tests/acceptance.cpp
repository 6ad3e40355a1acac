// Acceptance suite: one PASS/FAIL line per criterion, followed by indented
// detail lines. Criteria listed with --expect-fail still print FAIL but do
// not change the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iscp/analysis.hpp"
#include "iscp/enumerator.hpp"
#include "iscp/experiment.hpp"
#include "iscp/generator.hpp"
#include "iscp/io.hpp"
#include "iscp/rng.hpp"

namespace {

using namespace iscp;
using Clock = std::chrono::steady_clock;

const GreedyConfig kExact{RatioMode::kExactRational};
const GreedyConfig kFloor{RatioMode::kFloorInteger};

struct Reference {
  const char* bits;
  Interval refined;
  double probability;
};

// Expected possible approximate solutions of the fixture instance.
const std::vector<Reference> kReference = {
    {"10010010000", {382, 410}, 0.1542}, {"10000010100", {391, 410}, 0.0007},
    {"10000010001", {390, 410}, 0.1342}, {"00000001100", {278, 295}, 0.1172},
    {"00000000110", {278, 293}, 0.3166}, {"10000000101", {389, 417}, 0.0826},
    {"10000000011", {387, 417}, 0.1946}};

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(Clock::now()) {}

  void require(bool ok, const std::string& detail) {
    passed_ = passed_ && ok;
    lines_.push_back(std::string(ok ? "ok   " : "FAIL ") + detail);
  }
  void info(const std::string& detail) { lines_.push_back("info " + detail); }
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool passed() const { return passed_; }
  const std::string& title() const { return title_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::string title_;
  Clock::time_point start_;
  bool passed_ = true;
  std::vector<std::string> lines_;
};

std::string fmt(const char* format, double a) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, a);
  return buffer;
}

std::string num(double v) { return format_number(v); }

IscpInstance fixture() {
  return read_instance(std::string(ISCP_DATA_DIR) + "/fixture_m7.json");
}

SamplingPlan plan(std::size_t samples, std::uint64_t seed, SampleDomain domain) {
  SamplingPlan p;
  p.samples = samples;
  p.seed = seed;
  p.domain = domain;
  return p;
}

double frequency_of(const std::vector<ProbabilityEstimate>& est, const std::string& bits) {
  for (const auto& e : est) {
    if (e.solution.to_string() == bits) return e.frequency();
  }
  return 0.0;
}

void fixture_identity(Criterion& c) {
  const auto inst = fixture();
  const auto greedy = greedy_cover(inst, inst.mean_costs(), kFloor).solution;
  const double greedy_cost = cost(inst, greedy, inst.mean_costs());
  c.require(greedy.to_string() == "10010010000" && greedy_cost == 397.0,
            "floor greedy at midpoints: " + greedy.to_string() + " cost " + num(greedy_cost) +
                " (want 10010010000, 397)");
  const auto opt = exact_optimum(inst, inst.mean_costs());
  c.require(opt.solution.to_string() == "00000000110" && opt.cost == 286.0,
            "optimum at midpoints: " + opt.solution.to_string() + " cost " + num(opt.cost) +
                " (want 00000000110, 286)");
  c.require(c.seconds() < 1.0, "runtime " + fmt("%.3f s", c.seconds()) + " < 1 s");
}

void set_reproduction(Criterion& c) {
  const auto inst = fixture();
  const auto united = enumerate_approx(inst, kExact).united;
  std::set<std::string> got;
  for (const auto& r : united.records) got.insert(r.solution.to_string());
  std::set<std::string> want;
  for (const auto& p : kReference) want.insert(p.bits);
  c.require(got == want, "enumeration returns the 7 expected solutions (" +
                             std::to_string(got.size()) + " found)");
  for (const auto& p : kReference) {
    const auto* r = united.find(CoverSolution::from_string(p.bits));
    if (r == nullptr) continue;
    const std::string line = std::string(p.bits) + " refined " + to_string(r->refined_cost) +
                             " expected " + to_string(p.refined);
    const bool pinned = std::string(p.bits) == "10010010000" ||
                        std::string(p.bits) == "00000001100";
    if (pinned) {
      c.require(r->refined_cost == p.refined, line);
    } else if (r->refined_cost == p.refined) {
      c.info(line + " match");
    } else {
      c.info(line + " DOCUMENTED DIFF");
    }
  }
  c.require(c.seconds() < 10.0, "runtime " + fmt("%.3f s", c.seconds()) + " < 10 s");
}

void probability_reproduction(Criterion& c) {
  const auto inst = fixture();
  const auto est = estimate_probabilities(inst, kFloor, plan(1'000'000, 1, SampleDomain::kInteger));
  for (const auto& p : kReference) {
    const double f = frequency_of(est, p.bits);
    c.require(std::abs(f - p.probability) <= 0.015,
              std::string(p.bits) + " floor/integer frequency " + fmt("%.4f", f) + " expected " +
                  fmt("%.4f", p.probability) + " (tol 0.015)");
  }
  const auto opt = estimate_optimal_probabilities(inst, plan(100'000, 1, SampleDomain::kInteger));
  const double f = frequency_of(opt, "00000000110");
  c.require(std::abs(f - 0.667) <= 0.02,
            "optimal 00000000110 integer frequency " + fmt("%.4f", f) + " expected 0.667 (tol 0.02)");
  c.require(c.seconds() < 120.0, "runtime " + fmt("%.1f s", c.seconds()) + " < 120 s");

  // Other estimators, reported for comparison.
  const auto united = enumerate_approx(inst, kExact).united;
  const auto exact_cont =
      estimate_probabilities(inst, kExact, plan(1'000'000, 1, SampleDomain::kContinuous));
  for (const auto& p : kReference) {
    const auto* r = united.find(CoverSolution::from_string(p.bits));
    c.info(std::string(p.bits) + " branch estimator " + fmt("%.4f", r ? r->branch_probability : 0.0) +
           ", exact/continuous frequency " + fmt("%.4f", frequency_of(exact_cont, p.bits)) +
           ", expected " + fmt("%.4f", p.probability));
  }
  const auto opt_cont =
      estimate_optimal_probabilities(inst, plan(100'000, 1, SampleDomain::kContinuous));
  c.info("optimal 00000000110 continuous frequency " +
         fmt("%.4f", frequency_of(opt_cont, "00000000110")));
}

void derived_statistics(Criterion& c) {
  const auto inst = fixture();
  auto united = enumerate_approx(inst, kExact).united;
  attach_branch_probabilities(united);
  const auto optimal = enumerate_optimal(inst);
  const auto mean = mean_solutions(inst, kFloor);
  const auto stats = instance_stats(united, optimal, mean);
  c.require(stats.deviation_opt == 10.0, "deviation_opt " + num(stats.deviation_opt) + " (want 10)");
  c.require(stats.deviation_approx == 121.0,
            "deviation_approx " + num(stats.deviation_approx) + " (want 121)");
  c.require(std::abs(stats.expected_mid_cost - 350.51) <= 2.0,
            "expected_mid_cost " + fmt("%.2f", stats.expected_mid_cost) +
                " with branch probabilities (want 350.51 +- 2)");

  auto sampled = enumerate_approx(inst, kExact).united;
  attach_probabilities(sampled,
                       estimate_probabilities(inst, kExact, plan(1'000'000, 2, SampleDomain::kContinuous)));
  c.info("expected_mid_cost with exact/continuous frequencies " +
         fmt("%.2f", instance_stats(sampled, optimal, mean).expected_mid_cost));

  const auto bins = cost_histogram(inst, kFloor, plan(1'000'000, 3, SampleDomain::kInteger), 1.0);
  double low_max = 0.0;
  double high_min = 1e300;
  bool inside = false;
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    if (b.hi <= 298.0) low_max = std::max(low_max, b.hi);
    else if (b.lo >= 382.0) high_min = std::min(high_min, b.lo);
    else inside = true;
  }
  std::string gaps;
  for (const auto& g : histogram_gaps(bins)) gaps += " " + to_string(g);
  c.require(!inside && low_max > 0.0 && high_min < 1e300,
            "histogram support splits: low cluster ends at " + num(low_max) +
                ", high cluster starts at " + num(high_min) + "; gaps" + gaps);
}

DistributionConfig desk_scale(int m, double delta) {
  DistributionConfig config;
  config.m = m;
  config.delta = delta;
  config.seed = 1;
  return config;
}

void table_check(Criterion& c) {
  std::map<std::pair<int, int>, double> top;
  for (int m : {5, 10, 15, 20}) {
    for (int delta : {1, 5}) {
      const auto r = run_distribution(desk_scale(m, delta));
      top[{m, delta}] = r.mean.bins[9];
      c.info("m=" + std::to_string(m) + " delta=" + std::to_string(delta) + " bin-10 share " +
             fmt("%.2f", r.mean.bins[9]) + " sd " + fmt("%.2f", r.stddev.bins[9]) +
             " anomalies " + std::to_string(r.anomalies));
    }
  }
  c.require(std::abs(top[{5, 1}] - 80.89) <= 8.0,
            "m=5 delta=1 bin-10 share " + fmt("%.2f", top[{5, 1}]) + " (want 80.89 +- 8)");
  c.require(std::abs(top[{20, 5}] - 36.63) <= 8.0,
            "m=20 delta=5 bin-10 share " + fmt("%.2f", top[{20, 5}]) + " (want 36.63 +- 8)");
  for (int m : {5, 10, 15, 20}) {
    c.require(top[{m, 5}] < top[{m, 1}], "m=" + std::to_string(m) + " share decreases from delta 1 to 5");
  }
  c.require(c.seconds() < 1800.0, "runtime " + fmt("%.0f s", c.seconds()) + " < 1800 s");

  for (auto [m, delta] : {std::pair{5, 1}, std::pair{20, 5}}) {
    auto config = desk_scale(m, delta);
    config.probability.source = ProbabilitySource::kBranch;
    config.probability.greedy = kExact;
    config.probability.domain = SampleDomain::kContinuous;
    c.info("branch estimator, exact greedy: m=" + std::to_string(m) + " delta=" +
           std::to_string(delta) + " bin-10 share " +
           fmt("%.2f", run_distribution(config).mean.bins[9]));
  }
}

void mp_check(Criterion& c) {
  MpConfig config;
  config.seed = 1;
  config.probability.greedy = kExact;
  config.probability.domain = SampleDomain::kContinuous;
  const auto r = run_mp(config);
  c.require(std::abs(r.mp_max - 0.3675) <= 0.05,
            "MP_max " + fmt("%.4f", r.mp_max) + " (want 0.3675 +- 0.05)");
  c.require(r.support_bias && std::abs(r.mp_mean - 0.0554) <= 0.03,
            "MP_mu " + fmt("%.4f", r.mp_mean) + " support_bias=" +
                (r.support_bias ? std::string("true") : std::string("false")) +
                " (want 0.0554 +- 0.03)");
  c.require(c.seconds() < 1800.0, "runtime " + fmt("%.1f s", c.seconds()) + " < 1800 s");
  config.probability.greedy = kFloor;
  config.probability.domain = SampleDomain::kInteger;
  const auto floor = run_mp(config);
  c.info("floor/integer: MP_max " + fmt("%.4f", floor.mp_max) + " MP_mu " + fmt("%.4f", floor.mp_mean));
  config.probability.source = ProbabilitySource::kBranch;
  config.probability.greedy = kExact;
  config.probability.domain = SampleDomain::kContinuous;
  const auto branch = run_mp(config);
  c.info("branch estimator: MP_max " + fmt("%.4f", branch.mp_max) + " MP_mu " +
         fmt("%.4f", branch.mp_mean));
}

void property_suite(Criterion& c) {
  {
    bool ok = true;
    for (auto cfg : {kExact, kFloor}) {
      for (auto domain : {SampleDomain::kInteger, SampleDomain::kContinuous}) {
        std::uint64_t total = 0;
        for (const auto& e : estimate_probabilities(fixture(), cfg, plan(100'000, 4, domain))) {
          total += e.tally;
        }
        ok = ok && total == 100'000;
      }
    }
    c.require(ok, "probability tallies sum to the sample count");
  }
  {
    bool covers = true;
    bool bounded = true;
    std::size_t evaluated = 0;
    double worst = 0.0;
    Rng rng(77);
    for (std::size_t k = 0; k < 300; ++k) {
      GeneratorConfig g;
      g.m = 2 + static_cast<int>(k % 10);
      g.radius = RadiusSpec::absolute(static_cast<double>(k % 8));
      g.seed = batch_instance_seed(13, k);
      const auto inst = generate(g);
      if (inst.n() > 25) continue;
      const OptimumSolver solver(inst);
      for (int s = 0; s < 20; ++s) {
        const auto domain = s % 2 ? SampleDomain::kContinuous : SampleDomain::kInteger;
        const Scenario sc = sample_scenario(inst.cost_box(), domain, rng);
        const double opt = cost(inst, solver.covers()[solver.solve(sc)], sc);
        for (auto cfg : {kExact, kFloor}) {
          const auto x = greedy_cover(inst, sc, cfg).solution;
          covers = covers && is_cover(inst, x);
          if (cfg.ratio_mode == RatioMode::kExactRational) {
            const double rho = cost(inst, x, sc) / opt;
            worst = std::max(worst, rho / harmonic_bound(inst.m()));
            bounded = bounded && rho <= harmonic_bound(inst.m()) + 1e-12;
            ++evaluated;
          }
        }
      }
    }
    c.require(covers, "every greedy output is a feasible cover");
    c.require(bounded, "ratio <= H(m) on " + std::to_string(evaluated) +
                           " instance/scenario pairs (largest ratio/H(m) " + fmt("%.3f", worst) + ")");
  }
  {
    bool within = true;
    bool support = true;
    std::size_t instances = 0;
    std::size_t missed = 0;
    for (std::size_t k = 0; k < 24; ++k) {
      GeneratorConfig g;
      g.m = 3 + static_cast<int>(k % 8);
      g.radius = RadiusSpec::absolute(1.0 + static_cast<double>(k % 5));
      g.seed = batch_instance_seed(29, k);
      const auto inst = generate(g);
      const auto united = enumerate_approx(inst, kExact).united;
      for (const auto& r : united.records) {
        within = within && interval_cost_naive(inst, r.solution).contains(r.refined_cost);
      }
      const auto est = estimate_probabilities(inst, kExact, plan(1'000'000, k, SampleDomain::kContinuous));
      std::set<std::string> sampled;
      for (const auto& e : est) {
        sampled.insert(e.solution.to_string());
        support = support && united.find(e.solution) != nullptr;
      }
      for (const auto& r : united.records) {
        if (sampled.count(r.solution.to_string())) continue;
        ++missed;
        support = support && r.branch_probability < 1e-5;
      }
      ++instances;
    }
    c.require(within, "refined interval within naive interval for every enumerated solution");
    c.require(support, "enumerated and sampled supports agree on " + std::to_string(instances) +
                           " instances with m <= 10 (" + std::to_string(missed) +
                           " rare members below 1e-5 unsampled)");
  }
  {
    bool ok = true;
    for (std::size_t k = 0; k < 10'000 && ok; ++k) {
      GeneratorConfig g;
      g.m = 1 + static_cast<int>(k % 12);
      g.radius = RadiusSpec::absolute(static_cast<double>(k % 6));
      g.seed = batch_instance_seed(31, k);
      const auto inst = generate(g);
      ok = validate(inst).empty();
      std::vector<int> multiplicity(static_cast<std::size_t>(g.m) + 1, 0);
      for (std::size_t i = 0; i < inst.n() && ok; ++i) {
        const double p = static_cast<double>(inst.set(i).size());
        const double centre = inst.mean_costs()[i];
        ok = centre == std::round(centre) && centre >= 100 + 10 * p - 5 && centre <= 100 + 10 * p + 5;
        for (int e : inst.set(i)) ++multiplicity[static_cast<std::size_t>(e)];
      }
      for (int e = 1; e <= g.m && ok; ++e) ok = multiplicity[static_cast<std::size_t>(e)] >= g.q;
    }
    c.require(ok, "generator coverage and cost ranges hold on 10^4 instances");
  }
  {
    DistributionConfig config = desk_scale(6, 2);
    config.instances_per_replicate = 30;
    config.replicates = 4;
    config.probability.samples = 2000;
    const auto a = experiment_to_json(run_distribution(config)).dump();
    const auto b = experiment_to_json(run_distribution(config)).dump();
    const std::string fx = std::string(ISCP_DATA_DIR) + "/fixture_m7.json";
    const std::string ex = std::string(ISCP_DATA_DIR) + "/fixture_m7_expected.json";
    const auto r1 = fixture_report_to_json(run_fixture_report(fx, ex)).dump();
    const auto r2 = fixture_report_to_json(run_fixture_report(fx, ex)).dump();
    c.require(a == b && r1 == r2, "reruns under a fixed seed are byte-identical");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--expect-fail") {
      std::stringstream list(argv[i + 1]);
      std::string item;
      while (std::getline(list, item, ',')) expected_failures.insert(std::stoi(item));
    }
  }

  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"fixture identity", fixture_identity},
      {"approximate solution set reproduction", set_reproduction},
      {"probability reproduction", probability_reproduction},
      {"derived statistics", derived_statistics},
      {"distribution table desk-scale check", table_check},
      {"MP desk-scale check", mp_check},
      {"property suite", property_suite},
  };

  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    Criterion c(criteria[k].first);
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const bool known = expected_failures.count(id) > 0;
    std::printf("%s criterion %d: %s (%.1f s)%s\n", c.passed() ? "PASS" : "FAIL", id,
                c.title().c_str(), c.seconds(),
                !c.passed() && known ? " [expected failure]" : "");
    for (const auto& line : c.lines()) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    if (!c.passed() && !known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
