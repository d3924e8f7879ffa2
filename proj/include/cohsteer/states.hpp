#pragma once

#include <array>
#include <cstdint>

#include "cohsteer/matcore.hpp"
#include "cohsteer/rng.hpp"

namespace cohsteer {

// Validated quantum state: Hermitian and unit trace to 1e-10, eigenvalues no
// lower than -1e-9 (tomography round-off tolerance).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const ComplexMatrix& m);

  const ComplexMatrix& mat() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(m) {}
  ComplexMatrix m_;
};

// Pauli decomposition of a two-qubit state: local vectors for each side and
// the 3x3 correlation matrix t[i][j] = tr(rho sigma_i x sigma_j).
struct BlochDecomposition {
  std::array<double, 3> r{};
  std::array<double, 3> s{};
  std::array<std::array<double, 3>, 3> t{};
};

// cos(theta)|HH> + sin(theta)|VV> as a projector. Angle in radians.
DensityMatrix bell_like(double theta_rad);

BlochDecomposition bloch_decompose(const DensityMatrix& rho);

// Inverse of bloch_decompose. The result is Hermitian with unit trace but not
// necessarily positive, so it is returned as a raw matrix (tomography projects
// it afterwards).
ComplexMatrix bloch_reconstruct(const BlochDecomposition& b);

// Uhlmann fidelity tr sqrt(sqrt(rho) rho0 sqrt(rho)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& rho0);

double purity(const DensityMatrix& rho);

// v rho + (1 - v) I/dim.
DensityMatrix apply_white_noise(const DensityMatrix& rho, double visibility);

// (1 - p) rho + p (sigma_z on the B side) rho (sigma_z on the B side).
// For a single-qubit state the operator acts directly.
DensityMatrix apply_z_dephasing_bob(const DensityMatrix& rho, double p);

// G G^dagger / tr(G G^dagger) with G a dim x rank matrix of independent
// standard complex Gaussian entries.
DensityMatrix random_density_matrix(RandomStream& rng, int dim, int rank);

DensityMatrix random_two_qubit_state(std::uint64_t seed, int rank);

}  // namespace cohsteer
