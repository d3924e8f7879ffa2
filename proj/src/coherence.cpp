#include "cohsteer/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohsteer {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit(const DensityMatrix& rho, const char* who) {
  if (rho.dim() != 2) {
    throw std::invalid_argument(std::string(who) + ": expected a qubit state");
  }
}

cplx basis_element(const DensityMatrix& rho, const Ket2& bra, const Ket2& ket) {
  cplx sum = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) sum += std::conj(bra[r]) * rho.mat()(r, c) * ket[c];
  return sum;
}
}  // namespace

PauliAxis cyclic_shift(PauliAxis axis, int steps) {
  const int i = (static_cast<int>(axis) + steps % 3 + 3) % 3;
  return static_cast<PauliAxis>(i);
}

const ComplexMatrix& pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return pauli_x();
    case PauliAxis::Y: return pauli_y();
    default: return pauli_z();
  }
}

const char* axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    default: return "z";
  }
}

const Ket2& axis_eigenvector(PauliAxis axis, int outcome) {
  static const Ket2 d{kInvSqrt2, kInvSqrt2};
  static const Ket2 a{kInvSqrt2, -kInvSqrt2};
  static const Ket2 r{kInvSqrt2, cplx(0.0, kInvSqrt2)};
  static const Ket2 l{kInvSqrt2, cplx(0.0, -kInvSqrt2)};
  static const Ket2 h{1.0, 0.0};
  static const Ket2 v{0.0, 1.0};
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("axis_eigenvector: outcome must be 0 or 1");
  }
  switch (axis) {
    case PauliAxis::X: return outcome == 0 ? d : a;
    case PauliAxis::Y: return outcome == 0 ? r : l;
    default: return outcome == 0 ? h : v;
  }
}

const char* measure_name(CoherenceMeasure m) {
  switch (m) {
    case CoherenceMeasure::L1C: return "l1c";
    case CoherenceMeasure::REC: return "rec";
    default: return "sic";
  }
}

DensityMatrix dephase(const DensityMatrix& rho, PauliAxis axis) {
  check_qubit(rho, "dephase");
  ComplexMatrix out(2);
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix p = projector2(axis_eigenvector(axis, k));
    out += p * rho.mat() * p;
  }
  return DensityMatrix::from_matrix(out);
}

double l1_coherence(const DensityMatrix& rho, PauliAxis axis) {
  check_qubit(rho, "l1_coherence");
  const cplx off = basis_element(rho, axis_eigenvector(axis, 0), axis_eigenvector(axis, 1));
  return 2.0 * std::abs(off);
}

double rel_entropy_coherence(const DensityMatrix& rho, PauliAxis axis) {
  check_qubit(rho, "rel_entropy_coherence");
  const double s = von_neumann_entropy(dephase(rho, axis).mat()) - von_neumann_entropy(rho.mat());
  return std::max(s, 0.0);
}

double skew_info_coherence(const DensityMatrix& rho, PauliAxis axis) {
  check_qubit(rho, "skew_info_coherence");
  const ComplexMatrix c = commutator(matrix_sqrt(rho.mat()), pauli(axis));
  const double v = -0.5 * (c * c).trace().real();
  return std::max(v, 0.0);
}

double coherence(const DensityMatrix& rho, PauliAxis axis, CoherenceMeasure m) {
  switch (m) {
    case CoherenceMeasure::L1C: return l1_coherence(rho, axis);
    case CoherenceMeasure::REC: return rel_entropy_coherence(rho, axis);
    default: return skew_info_coherence(rho, axis);
  }
}

}  // namespace cohsteer
