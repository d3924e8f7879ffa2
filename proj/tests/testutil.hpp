#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "cohsteer/rng.hpp"
#include "cohsteer/steering.hpp"

// Absolute-tolerance comparisons (the vendored doctest predates Approx
// margins).
#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

// Oracles for the tests: everything here is plain std::complex arithmetic on
// state amplitudes, independent of the library's linear algebra, so it can
// serve as a second route for the values the tests freeze.
namespace testutil {

using cohsteer::cplx;

inline double deg(double d) { return d * 3.14159265358979323846 / 180.0; }

// Binary entropy in bits.
inline double h2(double p) {
  double h = 0.0;
  if (p > 1e-15) h -= p * std::log2(p);
  const double q = 1.0 - p;
  if (q > 1e-15) h -= q * std::log2(q);
  return h;
}

// Eigenvectors of sigma_x, sigma_y, sigma_z (axis 0, 1, 2); outcome 0 has
// eigenvalue +1.
inline std::array<cplx, 2> basis_ket(int axis, int outcome) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case 0:
      return outcome == 0 ? std::array<cplx, 2>{r, r} : std::array<cplx, 2>{r, -r};
    case 1:
      return outcome == 0 ? std::array<cplx, 2>{r, cplx(0.0, r)}
                          : std::array<cplx, 2>{r, cplx(0.0, -r)};
    default:
      return outcome == 0 ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
  }
}

struct OracleBranch {
  double probability = 0.0;
  std::array<cplx, 2> amp{};  // normalized Bob amplitudes, valid when probability > 0
};

// Conditional branches of cos(theta)|HH> + sin(theta)|VV> under an Alice
// measurement along `alice_axis`, by direct amplitude projection.
inline std::array<OracleBranch, 2> oracle_branches(double theta, int alice_axis) {
  const cplx phi00 = std::cos(theta);
  const cplx phi11 = std::sin(theta);
  std::array<OracleBranch, 2> out{};
  for (int a = 0; a < 2; ++a) {
    const auto k = basis_ket(alice_axis, a);
    const std::array<cplx, 2> beta{std::conj(k[0]) * phi00, std::conj(k[1]) * phi11};
    const double p = std::norm(beta[0]) + std::norm(beta[1]);
    if (p > 1e-12) {
      const double n = std::sqrt(p);
      out[a].probability = p;
      out[a].amp = {beta[0] / n, beta[1] / n};
    }
  }
  return out;
}

// Coherence of the pure state `amp` in the eigenbasis of `bob_axis`.
inline double oracle_coherence(const std::array<cplx, 2>& amp, int bob_axis,
                               cohsteer::CoherenceMeasure q) {
  const auto k0 = basis_ket(bob_axis, 0);
  const auto k1 = basis_ket(bob_axis, 1);
  const cplx c0 = std::conj(k0[0]) * amp[0] + std::conj(k0[1]) * amp[1];
  const cplx c1 = std::conj(k1[0]) * amp[0] + std::conj(k1[1]) * amp[1];
  const double p0 = std::norm(c0), p1 = std::norm(c1);
  switch (q) {
    case cohsteer::CoherenceMeasure::L1C:
      return 2.0 * std::abs(c0) * std::abs(c1);
    case cohsteer::CoherenceMeasure::REC:
      return h2(p0);
    default: {
      const double z = p0 - p1;  // <sigma_axis> of a pure state
      return 1.0 - z * z;
    }
  }
}

inline double oracle_s_ell(double theta, int ell, cohsteer::CoherenceMeasure q) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int bob_axis = (i + ell) % 3;
    for (const OracleBranch& br : oracle_branches(theta, i)) {
      if (br.probability <= 0.0) continue;
      sum += br.probability * oracle_coherence(br.amp, bob_axis, q);
    }
  }
  return sum;
}

inline double oracle_sigeur_n2(double theta) {
  const cplx phi00 = std::cos(theta), phi11 = std::sin(theta);
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    std::array<double, 4> p{};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto ka = basis_ket(i, a);
        const auto kb = basis_ket(i, b);
        const cplx amp = std::conj(ka[0]) * std::conj(kb[0]) * phi00 +
                         std::conj(ka[1]) * std::conj(kb[1]) * phi11;
        p[2 * a + b] = std::norm(amp);
      }
    double inner = 0.0;
    for (int a = 0; a < 2; ++a) {
      const double pa = p[2 * a] + p[2 * a + 1];
      if (pa <= 0.0) continue;
      inner += (p[2 * a] * p[2 * a] + p[2 * a + 1] * p[2 * a + 1]) / pa;
    }
    total += 1.0 - inner;
  }
  return total;
}

// Pauli entries from literal tables, for trace oracles that bypass the
// library constants.
inline cplx pauli_entry(int axis, int r, int c) {
  static const cplx x[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
  static const cplx y[2][2] = {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
  static const cplx z[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
  switch (axis) {
    case 0: return x[r][c];
    case 1: return y[r][c];
    default: return z[r][c];
  }
}

// tr(rho sigma_i x sigma_j) by explicit index contraction; axis -1 means the
// identity on that side.
inline double oracle_pauli_expectation(const cohsteer::ComplexMatrix& rho, int axis_a,
                                       int axis_b) {
  cplx sum = 0.0;
  for (int ra = 0; ra < 2; ++ra)
    for (int rb = 0; rb < 2; ++rb)
      for (int ca = 0; ca < 2; ++ca)
        for (int cb = 0; cb < 2; ++cb) {
          const cplx ma = axis_a < 0 ? cplx(ra == ca ? 1.0 : 0.0) : pauli_entry(axis_a, ra, ca);
          const cplx mb = axis_b < 0 ? cplx(rb == cb ? 1.0 : 0.0) : pauli_entry(axis_b, rb, cb);
          sum += rho(2 * ca + cb, 2 * ra + rb) * ma * mb;
        }
  return sum.real();
}

inline cohsteer::ComplexMatrix random_hermitian(cohsteer::RandomStream& rng, int dim) {
  cohsteer::ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m(r, r) = rng.gaussian();
    for (int c = r + 1; c < dim; ++c) {
      const cplx z(rng.gaussian(), rng.gaussian());
      m(r, c) = z;
      m(c, r) = std::conj(z);
    }
  }
  return m;
}

inline cohsteer::DensityMatrix random_pure_qubit(cohsteer::RandomStream& rng) {
  std::array<cplx, 2> amp{cplx(rng.gaussian(), rng.gaussian()),
                          cplx(rng.gaussian(), rng.gaussian())};
  const double n = std::sqrt(std::norm(amp[0]) + std::norm(amp[1]));
  amp[0] /= n;
  amp[1] /= n;
  return cohsteer::DensityMatrix::from_matrix(cohsteer::projector2(amp));
}

}  // namespace testutil
