#pragma once

#include <array>
#include <complex>
#include <vector>

namespace cohsteer {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Dense complex matrix of dimension 2 or 4, row major. Everything in this
// library lives on one- or two-qubit operators, so storage is a fixed stack
// array and the algebra below is written for those sizes only.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }

  cplx& operator()(int r, int c) { return a_[r * dim_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * dim_ + c]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  bool is_hermitian(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx z);

 private:
  int dim_;
  std::array<cplx, 16> a_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx z, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx z);

// Largest entry-wise modulus of (a - b); the distance used by tolerance checks.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix projector2(const std::array<cplx, 2>& ket);
ComplexMatrix projector4(const std::array<cplx, 4>& ket);

const ComplexMatrix& identity2();
const ComplexMatrix& identity4();
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

// Eigensystem of a Hermitian matrix: eigenvalues ascending, eigenvectors the
// matching orthonormal columns.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

enum class Subsystem { A, B };

// Kronecker product, restricted to results of dimension at most 4.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out one qubit of a two-qubit operator (index order A then B).
ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep);

// Cyclic Jacobi diagonalization. Rejects inputs that are not Hermitian to
// 1e-10; converges to an off-diagonal norm below 1e-14.
HermitianEigen hermitian_eig(const ComplexMatrix& h);

// Principal square root of a positive-semidefinite Hermitian matrix.
// Eigenvalues in [-1e-9, 0) are treated as round-off and clamped to zero;
// anything below that is rejected as unphysical.
ComplexMatrix matrix_sqrt(const ComplexMatrix& rho);

// Von Neumann entropy in bits, with 0 log 0 := 0.
double von_neumann_entropy(const ComplexMatrix& rho);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cohsteer
