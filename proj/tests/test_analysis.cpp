#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "iscp/analysis.hpp"
#include "iscp/enumerator.hpp"
#include "support.hpp"

namespace iscp {
namespace {

using testing::fixture_instance;
using testing::twin_instance;

const GreedyConfig kExact{RatioMode::kExactRational};
const GreedyConfig kFloor{RatioMode::kFloorInteger};

SamplingPlan plan(std::size_t samples, std::uint64_t seed, SampleDomain domain,
                  std::size_t workers = 1) {
  SamplingPlan p;
  p.samples = samples;
  p.seed = seed;
  p.domain = domain;
  p.workers = workers;
  return p;
}

TEST(Sampling, TwinSetsSplitEvenly) {
  const auto est =
      estimate_probabilities(twin_instance(), kExact, plan(1'000'000, 3, SampleDomain::kContinuous));
  ASSERT_EQ(est.size(), 2u);
  EXPECT_NEAR(est[0].frequency(), 0.5, 0.005);
  EXPECT_NEAR(est[1].frequency(), 0.5, 0.005);
}

TEST(Sampling, TalliesSumToSampleCount) {
  for (std::size_t workers : {1u, 3u}) {
    const auto est =
        estimate_probabilities(fixture_instance(), kFloor, plan(10007, 5, SampleDomain::kInteger, workers));
    std::uint64_t total = 0;
    for (const auto& e : est) {
      EXPECT_EQ(e.sample_count, 10007u);
      total += e.tally;
    }
    EXPECT_EQ(total, 10007u);
  }
}

TEST(Sampling, DeterministicForFixedPlan) {
  const auto a = estimate_probabilities(fixture_instance(), kFloor, plan(5000, 9, SampleDomain::kInteger, 2));
  const auto b = estimate_probabilities(fixture_instance(), kFloor, plan(5000, 9, SampleDomain::kInteger, 2));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].solution, b[i].solution);
    EXPECT_EQ(a[i].tally, b[i].tally);
  }
}

TEST(Sampling, DegenerateBoxGivesOneSolution) {
  const auto fixture = fixture_instance();
  Box point;
  for (double c : fixture.mean_costs()) point.push_back(Interval::point(c));
  const auto inst = fixture.with_box(point);
  const auto est = estimate_probabilities(inst, kFloor, plan(1000, 1, SampleDomain::kInteger));
  ASSERT_EQ(est.size(), 1u);
  EXPECT_EQ(est[0].frequency(), 1.0);
  const auto opt = estimate_optimal_probabilities(inst, plan(1000, 1, SampleDomain::kInteger));
  ASSERT_EQ(opt.size(), 1u);
  EXPECT_EQ(opt[0].frequency(), 1.0);
}

TEST(Sampling, StandardErrorBoundHoldsAcrossSeeds) {
  // True probability 1/2 by symmetry; count deviations beyond 4 standard errors.
  const std::size_t n = 10000;
  const double bound = 4.0 * std::sqrt(0.25 / n);
  int exceed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = estimate_probabilities(twin_instance(), kExact, plan(n, seed, SampleDomain::kContinuous));
    if (std::abs(est[0].frequency() - 0.5) > bound) ++exceed;
  }
  EXPECT_EQ(exceed, 0);
}

TEST(Sampling, IntegerTwinFavoursLowerIndex) {
  // Integer costs {1,2,3}: set 1 wins ties, so P = 6/9. Estimates are
  // sorted by bit vector, so "10" comes second.
  const auto est = estimate_probabilities(twin_instance(), kExact, plan(200000, 2, SampleDomain::kInteger));
  ASSERT_EQ(est.size(), 2u);
  EXPECT_EQ(est[1].solution.to_string(), "10");
  EXPECT_NEAR(est[1].frequency(), 6.0 / 9.0, 0.005);
}

TEST(Sampling, OptimalFrequenciesCoverBothOptima) {
  const auto est = estimate_optimal_probabilities(fixture_instance(),
                                                  plan(100000, 4, SampleDomain::kContinuous));
  double total = 0.0;
  for (const auto& e : est) {
    const auto bits = e.solution.to_string();
    if (bits == "00000000110" || bits == "00000001100") total += e.frequency();
  }
  EXPECT_NEAR(total, 1.0, 0.02);
}

TEST(Sampling, ExactModeOutputsBelongToEnumeratedSet) {
  const auto inst = fixture_instance();
  const auto united = enumerate_approx(inst, kExact).united;
  for (auto domain : {SampleDomain::kContinuous, SampleDomain::kInteger}) {
    for (const auto& e : estimate_probabilities(inst, kExact, plan(50000, 8, domain))) {
      EXPECT_NE(united.find(e.solution), nullptr) << e.solution.to_string();
    }
  }
}

TEST(Classify, StrictBoundary) {
  EXPECT_EQ(classify(0.1542, {0.2}), Representativeness::kUnrepresentative);
  EXPECT_EQ(classify(0.667, {0.6}), Representativeness::kRepresentative);
  EXPECT_EQ(classify(0.3, {0.3}), Representativeness::kRepresentative);
  EXPECT_EQ(to_string(Representativeness::kUnrepresentative), "unrepresentative");
}

TEST(Classify, MonotoneInBoundary) {
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    bool seen_unrepresentative = false;
    for (double b = 0.01; b <= 1.0; b += 0.01) {
      const bool unrep = classify(p, {b}) == Representativeness::kUnrepresentative;
      EXPECT_FALSE(seen_unrepresentative && !unrep);
      seen_unrepresentative = seen_unrepresentative || unrep;
    }
  }
}

TEST(Attach, MissingMembersGetZero) {
  auto united = enumerate_approx(fixture_instance(), kExact).united;
  const std::vector<ProbabilityEstimate> est{
      {CoverSolution::from_string("10010010000"), 3, 4},
      {CoverSolution::from_string("11111111111"), 1, 4}};
  const auto unknown = attach_probabilities(united, est);
  ASSERT_EQ(unknown.size(), 1u);
  EXPECT_EQ(unknown[0].to_string(), "11111111111");
  for (const auto& r : united.records) {
    ASSERT_TRUE(r.probability);
    EXPECT_EQ(*r.probability, r.solution.to_string() == "10010010000" ? 0.75 : 0.0);
  }
}

TEST(Stats, FixtureWithBranchProbabilities) {
  const auto inst = fixture_instance();
  auto united = enumerate_approx(inst, kExact).united;
  attach_branch_probabilities(united);
  const auto stats = instance_stats(united, enumerate_optimal(inst), mean_solutions(inst, kFloor));
  EXPECT_EQ(stats.deviation_opt, 10.0);
  EXPECT_EQ(stats.deviation_approx, 121.0);
  EXPECT_NEAR(stats.expected_mid_cost, 350.51, 2.0);
  EXPECT_EQ(stats.solution_count, 7u);
  EXPECT_NEAR(stats.p_mean * 7.0, 1.0, 1e-9);
  EXPECT_NEAR(stats.p_max, 0.3166, 1e-4);
}

TEST(Stats, ExpectedCostMatchesDirectSum) {
  const auto inst = fixture_instance();
  auto united = enumerate_approx(inst, kExact).united;
  attach_branch_probabilities(united);
  double direct = 0.0;
  for (const auto& r : united.records) {
    direct += r.branch_probability * 0.5 * (r.refined_cost.lo + r.refined_cost.hi);
  }
  const auto stats = instance_stats(united, enumerate_optimal(inst), mean_solutions(inst, kFloor));
  EXPECT_NEAR(stats.expected_mid_cost, direct, 1e-9);
}

TEST(Stats, DegenerateBox) {
  const auto fixture = fixture_instance();
  Box point;
  for (double c : fixture.mean_costs()) point.push_back(Interval::point(c));
  const auto inst = fixture.with_box(point);
  auto united = enumerate_approx(inst, kExact).united;
  attach_branch_probabilities(united);
  const auto stats = instance_stats(united, enumerate_optimal(inst), mean_solutions(inst, kExact));
  EXPECT_EQ(stats.p_max, 1.0);
  EXPECT_EQ(stats.deviation_opt, 0.0);
  EXPECT_EQ(stats.deviation_approx, 0.0);
}

TEST(Stats, EmptySetThrows) {
  EXPECT_THROW(instance_stats(UnitedApproxSet{}, {}, MeanSolutions{}), std::invalid_argument);
}

TEST(Histogram, FixtureSupportAndGap) {
  const auto bins = cost_histogram(fixture_instance(), kFloor,
                                   plan(200000, 1, SampleDomain::kInteger), 1.0);
  double total = 0.0;
  for (const auto& b : bins) total += b.frequency;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_GE(bins.front().lo, 276.0);
  EXPECT_LE(bins.back().hi, 418.0);
  for (const auto& b : bins) {
    if (b.lo >= 298 && b.hi <= 382) EXPECT_EQ(b.count, 0u) << b.lo;
  }
  EXPECT_FALSE(histogram_gaps(bins).empty());
}

TEST(Histogram, DegenerateBoxSingleBin) {
  const auto fixture = fixture_instance();
  Box point;
  for (double c : fixture.mean_costs()) point.push_back(Interval::point(c));
  const auto bins = cost_histogram(fixture.with_box(point), kFloor,
                                   plan(100, 1, SampleDomain::kInteger), 1.0);
  ASSERT_EQ(bins.size(), 1u);
  EXPECT_EQ(bins[0].lo, 397.0);
  EXPECT_EQ(bins[0].frequency, 1.0);
}

TEST(Histogram, TwinInstanceMatchesGrid) {
  // Integer costs on [1,5] each: greedy cost is min(c1, c2) with ties to set 1.
  const auto inst = twin_instance(1, 5);
  std::map<int, double> grid;
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) grid[std::min(a, b)] += 1.0 / 25.0;
  }
  const auto bins = cost_histogram(inst, kExact, plan(400000, 2, SampleDomain::kInteger), 1.0);
  ASSERT_EQ(bins.size(), 5u);
  for (const auto& b : bins) EXPECT_NEAR(b.frequency, grid[static_cast<int>(b.lo)], 0.004);
}

TEST(Histogram, SymmetricAboutMidpoint) {
  // Single set with uniform integer cost: histogram is symmetric about 3.
  const IscpInstance inst(1, {{1}}, Box{{1, 5}});
  const auto bins = cost_histogram(inst, kExact, plan(400000, 7, SampleDomain::kInteger), 1.0);
  ASSERT_EQ(bins.size(), 5u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(bins[k].frequency, bins[4 - k].frequency, 0.005);
  }
}

TEST(Histogram, GapsAreInteriorEmptyRuns) {
  std::vector<HistogramBin> bins{{0, 1, 1, 0}, {1, 2, 0, 0}, {2, 3, 0, 0}, {3, 4, 2, 0}};
  const auto gaps = histogram_gaps(bins);
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(gaps[0], Interval(1, 3));
  EXPECT_THROW(cost_histogram(twin_instance(), kExact, plan(10, 1, SampleDomain::kInteger), 0.0),
               std::invalid_argument);
}

TEST(ProbabilitySource, Names) {
  EXPECT_EQ(parse_probability_source("mc"), ProbabilitySource::kMonteCarlo);
  EXPECT_EQ(parse_probability_source(to_string(ProbabilitySource::kBranch)), ProbabilitySource::kBranch);
  EXPECT_THROW(parse_probability_source("exact"), std::invalid_argument);
}

}  // namespace
}  // namespace iscp
