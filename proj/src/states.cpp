#include "cohsteer/states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cohsteer {

namespace {
constexpr double kStateTol = 1e-10;
constexpr double kPsdFloor = -1e-9;

const ComplexMatrix& pauli_by_index(int i) {
  switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    default: return pauli_z();
  }
}
}  // namespace

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (!m.is_hermitian(kStateTol)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  const HermitianEigen eg = hermitian_eig(m);
  if (eg.values.front() < kPsdFloor) {
    throw std::domain_error("DensityMatrix: negative eigenvalue beyond tolerance");
  }
  return DensityMatrix(m);
}

DensityMatrix bell_like(double theta_rad) {
  const std::array<cplx, 4> ket{std::cos(theta_rad), 0.0, 0.0, std::sin(theta_rad)};
  return DensityMatrix::from_matrix(projector4(ket));
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("bloch_decompose: expected a two-qubit state");
  }
  BlochDecomposition b;
  for (int i = 0; i < 3; ++i) {
    b.r[i] = (rho.mat() * tensor(pauli_by_index(i), identity2())).trace().real();
    b.s[i] = (rho.mat() * tensor(identity2(), pauli_by_index(i))).trace().real();
    for (int j = 0; j < 3; ++j) {
      b.t[i][j] = (rho.mat() * tensor(pauli_by_index(i), pauli_by_index(j))).trace().real();
    }
  }
  return b;
}

ComplexMatrix bloch_reconstruct(const BlochDecomposition& b) {
  ComplexMatrix m = identity4();
  for (int i = 0; i < 3; ++i) {
    m += b.r[i] * tensor(pauli_by_index(i), identity2());
    m += b.s[i] * tensor(identity2(), pauli_by_index(i));
    for (int j = 0; j < 3; ++j) {
      m += b.t[i][j] * tensor(pauli_by_index(i), pauli_by_index(j));
    }
  }
  return m * cplx(0.25);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& rho0) {
  if (rho.dim() != rho0.dim()) {
    throw std::invalid_argument("fidelity: dimensions do not match");
  }
  const ComplexMatrix s = matrix_sqrt(rho.mat());
  const ComplexMatrix inner = s * rho0.mat() * s;
  const HermitianEigen eg = hermitian_eig(inner);
  // Round-off eigenvalues near zero must not leak through the square root.
  const double floor = 1e-13 * std::max(1.0, eg.values.back());
  double f = 0.0;
  for (double v : eg.values) {
    if (v >= floor) f += std::sqrt(v);
  }
  return std::min(f, 1.0);
}

double purity(const DensityMatrix& rho) {
  return (rho.mat() * rho.mat()).trace().real();
}

DensityMatrix apply_white_noise(const DensityMatrix& rho, double visibility) {
  if (visibility < 0.0 || visibility > 1.0) {
    throw std::invalid_argument("apply_white_noise: visibility must be in [0, 1]");
  }
  ComplexMatrix m = visibility * rho.mat();
  m += ((1.0 - visibility) / rho.dim()) * ComplexMatrix::identity(rho.dim());
  return DensityMatrix::from_matrix(m);
}

DensityMatrix apply_z_dephasing_bob(const DensityMatrix& rho, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("apply_z_dephasing_bob: probability must be in [0, 1]");
  }
  const ComplexMatrix k = rho.dim() == 2 ? pauli_z() : tensor(identity2(), pauli_z());
  const ComplexMatrix m = (1.0 - p) * rho.mat() + p * (k * rho.mat() * k);
  return DensityMatrix::from_matrix(m);
}

DensityMatrix random_density_matrix(RandomStream& rng, int dim, int rank) {
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density_matrix: rank must be in 1..dim");
  }
  std::vector<cplx> g(static_cast<std::size_t>(dim) * rank);
  for (auto& z : g) z = cplx(rng.gaussian(), rng.gaussian());

  ComplexMatrix w(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      cplx sum = 0.0;
      for (int k = 0; k < rank; ++k) sum += g[r * rank + k] * std::conj(g[c * rank + k]);
      w(r, c) = sum;
    }
  const double tr = w.trace().real();
  w *= cplx(1.0 / tr);
  return DensityMatrix::from_matrix(w);
}

DensityMatrix random_two_qubit_state(std::uint64_t seed, int rank) {
  RandomStream rng(seed);
  return random_density_matrix(rng, 4, rank);
}

}  // namespace cohsteer
