#include "cohsteer/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cohsteer {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(mix64(seed) ^ mix64(0xD1B54A32D192ED03ULL + index));
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::int64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("poisson: mean must be nonnegative");
  }
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Rejection sampling with a Lorentzian comparison function.
  const double sq = std::sqrt(2.0 * mean);
  const double alxm = std::log(mean);
  const double g = mean * alxm - std::lgamma(mean + 1.0);
  for (;;) {
    double y, em;
    do {
      y = std::tan(kPi * uniform());
      em = sq * y + mean;
    } while (em < 0.0);
    em = std::floor(em);
    const double t = 0.9 * (1.0 + y * y) * std::exp(em * alxm - std::lgamma(em + 1.0) - g);
    if (uniform() <= t) return static_cast<std::int64_t>(em);
  }
}

}  // namespace cohsteer
