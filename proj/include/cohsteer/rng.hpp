#pragma once

#include <cstdint>
#include <random>

namespace cohsteer {

// splitmix64 finalizer, used to spread seeds and derive substreams.
std::uint64_t mix64(std::uint64_t x);

// Deterministic random stream: an mt19937_64 engine with hand-rolled
// samplers, so a given (seed, index) pair produces the same draws on every
// platform and in every build. Standard-library distributions are avoided
// because their output sequences are implementation defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Independent substream for element `index` of a sweep keyed by `seed`.
  static RandomStream derive(std::uint64_t seed, std::uint64_t index);

  double uniform();   // [0, 1)
  double gaussian();  // standard normal, Box-Muller

  // Poisson sample; exact for any nonnegative mean (product method below a
  // mean of 30, rejection sampling above).
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cohsteer
