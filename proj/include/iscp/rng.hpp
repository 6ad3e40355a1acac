#pragma once

#include <cstdint>
#include <random>

namespace iscp {

// Stream-addressable generator: (seed, stream) fully determines the sequence.
// Stream seeds are derived with SplitMix64 so neighbouring streams are
// decorrelated; uniform draws avoid std distributions so that results are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  // Uniform on the integers lo..hi inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace iscp
