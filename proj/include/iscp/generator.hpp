#pragma once

#include <cstdint>
#include <vector>

#include "iscp/instance.hpp"

namespace iscp {

struct GeneratorConfig {
  int m = 5;
  // Every element must end up in at least q sets.
  int q = 3;
  RadiusSpec radius = RadiusSpec::absolute(1.0);
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1'000'000;
};

// Random instance: draw sets until every element is covered q times. Each
// set has cardinality p uniform on 1..m, p distinct uniform elements, and
// centre cost 100 + 10 p + eta with integer eta uniform on -5..5.
IscpInstance generate(const GeneratorConfig& config);

// count instances; instance k uses the stream seed derived from
// (config.seed, k), so batches are reproducible and parallel-safe.
std::vector<IscpInstance> generate_batch(const GeneratorConfig& config,
                                         std::size_t count);
std::uint64_t batch_instance_seed(std::uint64_t seed, std::size_t index);

}  // namespace iscp
