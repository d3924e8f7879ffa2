#include "cohsteer/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cohsteer {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiOffTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPsdFloor = -1e-9;
// Eigenvalues this far below the spectral radius are round-off. sqrt() would
// amplify them (sqrt(1e-16) = 1e-8), so square-root paths zero them out.
constexpr double kSpectralFloor = 1e-13;

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("matrix dimension must be 2 or 4");
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("matrix dimensions do not match");
  }
}

// Eigenvalues of a PSD matrix with the library-wide clamping rule: small
// negatives from round-off go to zero, genuine negatives are an error.
std::vector<double> clamped_psd_eigenvalues(const HermitianEigen& eg, const char* who) {
  std::vector<double> out = eg.values;
  for (double& v : out) {
    if (v < kPsdFloor) {
      throw std::domain_error(std::string(who) + ": eigenvalue below -1e-9, input is not positive semidefinite");
    }
    if (v < 0.0) v = 0.0;
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx z) {
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= z;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const int n = a.dim();
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

ComplexMatrix operator*(cplx z, ComplexMatrix a) { return a *= z; }
ComplexMatrix operator*(ComplexMatrix a, cplx z) { return a *= z; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

ComplexMatrix projector2(const std::array<cplx, 2>& ket) {
  ComplexMatrix m(2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

ComplexMatrix projector4(const std::array<cplx, 4>& ket) {
  ComplexMatrix m(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

const ComplexMatrix& identity4() {
  static const ComplexMatrix m = ComplexMatrix::identity(4);
  return m;
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    return p;
  }();
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 1) = cplx(0.0, -1.0);
    p(1, 0) = cplx(0.0, 1.0);
    return p;
  }();
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
    return p;
  }();
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() * b.dim() > 4) {
    throw std::invalid_argument("tensor: product dimension above 4 is not supported");
  }
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix m(na * nb);
  for (int ra = 0; ra < na; ++ra)
    for (int ca = 0; ca < na; ++ca)
      for (int rb = 0; rb < nb; ++rb)
        for (int cb = 0; cb < nb; ++cb)
          m(ra * nb + rb, ca * nb + cb) = a(ra, ca) * b(rb, cb);
  return m;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace: expected a two-qubit operator");
  }
  ComplexMatrix m(2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cplx sum = 0.0;
      for (int k = 0; k < 2; ++k) {
        sum += (keep == Subsystem::B) ? rho(2 * k + r, 2 * k + c)
                                      : rho(2 * r + k, 2 * c + k);
      }
      m(r, c) = sum;
    }
  return m;
}

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_hermitian(kHermitianTol)) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  }
  const int n = h.dim();

  // Symmetrize away representation round-off so the iteration sees an exactly
  // Hermitian matrix.
  ComplexMatrix a(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) < kJacobiOffTol) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double m = std::abs(a(p, q));
        if (m < 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx phase = a(p, q) / m;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * m);
        const double sign = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = t * c * phase;

        // Columns: B = A R with R_pp = c, R_pq = s, R_qp = -conj(s), R_qq = c.
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c - akq * std::conj(s);
          a(k, q) = akp * s + akq * c;
        }
        // Rows: A' = R^dagger B.
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c - vkq * std::conj(s);
          v(k, q) = vkp * s + vkq * c;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen eg{std::vector<double>(n), ComplexMatrix(n)};
  for (int k = 0; k < n; ++k) {
    eg.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) eg.vectors(r, k) = v(r, order[k]);
  }
  return eg;
}

ComplexMatrix matrix_sqrt(const ComplexMatrix& rho) {
  const HermitianEigen eg = hermitian_eig(rho);
  const std::vector<double> lam = clamped_psd_eigenvalues(eg, "matrix_sqrt");
  const int n = rho.dim();
  const double floor = kSpectralFloor * std::max(1.0, lam.back());
  ComplexMatrix m(n);
  for (int k = 0; k < n; ++k) {
    const double s = lam[k] < floor ? 0.0 : std::sqrt(lam[k]);
    if (s == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        m(r, c) += s * eg.vectors(r, k) * std::conj(eg.vectors(c, k));
  }
  return m;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const HermitianEigen eg = hermitian_eig(rho);
  const std::vector<double> lam = clamped_psd_eigenvalues(eg, "von_neumann_entropy");
  double s = 0.0;
  for (double p : lam) {
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  return a * b - b * a;
}

}  // namespace cohsteer
