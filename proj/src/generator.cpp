#include "iscp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "iscp/rng.hpp"

namespace iscp {

namespace {

void check(const GeneratorConfig& config) {
  if (config.m < 1) throw std::invalid_argument("generator needs m >= 1");
  if (config.q < 1) throw std::invalid_argument("generator needs q >= 1");
  if (config.radius.value < 0.0) {
    throw std::invalid_argument("generator radius must be nonnegative");
  }
  if (config.radius.kind == RadiusSpec::Kind::kRelative &&
      config.radius.value >= 1.0) {
    throw std::invalid_argument("relative radius must be below 1");
  }
  // Smallest centre cost is 100 + 10 - 5.
  if (config.radius.kind == RadiusSpec::Kind::kAbsolute &&
      config.radius.value >= 105.0) {
    throw std::invalid_argument("absolute radius would allow nonpositive costs");
  }
}

}  // namespace

IscpInstance generate(const GeneratorConfig& config) {
  check(config);
  Rng rng(config.seed);
  const int m = config.m;
  std::vector<int> multiplicity(static_cast<std::size_t>(m), 0);
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::vector<std::vector<int>> sets;
  std::vector<double> centres;
  auto satisfied = [&] {
    return std::all_of(multiplicity.begin(), multiplicity.end(),
                       [&](int k) { return k >= config.q; });
  };
  for (std::size_t iter = 0; !satisfied(); ++iter) {
    if (iter >= config.max_iterations) {
      throw std::runtime_error("generator exceeded its iteration cap");
    }
    const auto p = static_cast<int>(rng.uniform_int(1, m));
    // Partial Fisher-Yates: first p entries become a uniform p-subset.
    std::iota(pool.begin(), pool.end(), 1);
    for (int k = 0; k < p; ++k) {
      const auto pick = static_cast<std::size_t>(rng.uniform_int(k, m - 1));
      std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
    }
    std::vector<int> set(pool.begin(), pool.begin() + p);
    std::sort(set.begin(), set.end());
    for (int e : set) ++multiplicity[static_cast<std::size_t>(e - 1)];
    const auto eta = rng.uniform_int(-5, 5);
    centres.push_back(100.0 + 10.0 * p + static_cast<double>(eta));
    sets.push_back(std::move(set));
  }
  return IscpInstance::with_radius(m, std::move(sets), centres, config.radius);
}

std::uint64_t batch_instance_seed(std::uint64_t seed, std::size_t index) {
  return Rng::derive(seed, index);
}

std::vector<IscpInstance> generate_batch(const GeneratorConfig& config,
                                         std::size_t count) {
  if (count < 1) throw std::invalid_argument("batch count must be >= 1");
  std::vector<IscpInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    GeneratorConfig one = config;
    one.seed = batch_instance_seed(config.seed, k);
    out.push_back(generate(one));
  }
  return out;
}

}  // namespace iscp
