#pragma once

#include <cmath>

#include "cohsteer/coherence.hpp"

// Analytic values of the steering quantities on the Bell-like family
// cos(theta)|HH> + sin(theta)|VV>, used to cross-check the measurement
// pipeline. Angles in radians.
namespace cohsteer::closedform {

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 1e-15) h -= p * std::log2(p);
  const double q = 1.0 - p;
  if (q > 1e-15) h -= q * std::log2(q);
  return h;
}

inline double s0(double theta, CoherenceMeasure q) {
  const double s2t = std::sin(2.0 * theta);
  const double c2t = std::cos(2.0 * theta);
  switch (q) {
    case CoherenceMeasure::L1C: return 2.0 * std::abs(c2t);
    case CoherenceMeasure::REC: return 2.0 * binary_entropy(0.5 * (1.0 + s2t));
    default: return 2.0 * c2t * c2t;
  }
}

inline double s12_half(double theta, CoherenceMeasure q) {
  const double s2t = std::sin(2.0 * theta);
  const double c = std::cos(theta);
  switch (q) {
    case CoherenceMeasure::L1C: return 2.0 + std::abs(s2t);
    case CoherenceMeasure::REC: return 2.0 + binary_entropy(c * c);
    default: return 2.0 + s2t * s2t;
  }
}

inline double s012_third(double theta, CoherenceMeasure q) {
  return (s0(theta, q) + 2.0 * s12_half(theta, q)) / 3.0;
}

// Entropic steering LHS at n = 2.
inline double sigeur(double theta) {
  const double c2t = std::cos(2.0 * theta);
  return c2t * c2t;
}

}  // namespace cohsteer::closedform
