#include "cohsteer/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace cohsteer {

namespace {
constexpr double kBranchCutoff = 1e-12;
constexpr double kVerdictGuard = 1e-9;

double s_ell_from(const std::array<ConditionalEnsemble, 3>& ensembles, int ell,
                  CoherenceMeasure q) {
  double sum = 0.0;
  for (const ConditionalEnsemble& ens : ensembles) {
    const PauliAxis bob_axis = cyclic_shift(ens.axis, ell);
    for (const EnsembleBranch& br : ens.branches) {
      if (br.probability <= 0.0) continue;
      sum += br.probability * coherence(br.state, bob_axis, q);
    }
  }
  return sum;
}

std::array<ConditionalEnsemble, 3> all_ensembles(const DensityMatrix& rho_ab) {
  return {conditional_ensemble(rho_ab, PauliAxis::X),
          conditional_ensemble(rho_ab, PauliAxis::Y),
          conditional_ensemble(rho_ab, PauliAxis::Z)};
}
}  // namespace

ComplexMatrix pauli_projector(PauliAxis axis, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("pauli_projector: outcome must be 0 or 1");
  }
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (identity2() + sign * pauli(axis));
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho_ab, PauliAxis axis) {
  if (rho_ab.dim() != 4) {
    throw std::invalid_argument("conditional_ensemble: expected a two-qubit state");
  }
  ConditionalEnsemble ens{axis, {}};
  for (int a = 0; a < 2; ++a) {
    const ComplexMatrix m = tensor(pauli_projector(axis, a), identity2());
    const ComplexMatrix sandwich = m * rho_ab.mat() * m;
    const double p = sandwich.trace().real();
    if (p < kBranchCutoff) {
      ens.branches.push_back(
          {a, 0.0, DensityMatrix::from_matrix(0.5 * identity2())});
    } else {
      ens.branches.push_back(
          {a, p,
           DensityMatrix::from_matrix(partial_trace(sandwich, Subsystem::B) * cplx(1.0 / p))});
    }
  }
  return ens;
}

double s_ell(const DensityMatrix& rho_ab, int ell, CoherenceMeasure q) {
  if (ell < 0 || ell > 2) {
    throw std::invalid_argument("s_ell: ell must be 0, 1 or 2");
  }
  return s_ell_from(all_ensembles(rho_ab), ell, q);
}

double one_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q) {
  return s_ell(rho_ab, 0, q);
}

double two_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q) {
  const auto ens = all_ensembles(rho_ab);
  return 0.5 * (s_ell_from(ens, 1, q) + s_ell_from(ens, 2, q));
}

double three_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q) {
  const auto ens = all_ensembles(rho_ab);
  return (s_ell_from(ens, 0, q) + s_ell_from(ens, 1, q) + s_ell_from(ens, 2, q)) / 3.0;
}

double epsilon_bound(CoherenceMeasure q) {
  switch (q) {
    case CoherenceMeasure::L1C: return std::sqrt(6.0);
    case CoherenceMeasure::REC: return 2.23;
    default: return 2.0;
  }
}

double three_setting_ceiling(CoherenceMeasure q) {
  if (q != CoherenceMeasure::REC) return epsilon_bound(q);
  const double p = 0.5 * (1.0 + 1.0 / std::sqrt(3.0));
  const double h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
  return 3.0 * h;
}

double ln_n(double x, double n) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("ln_n: x must be positive");
  }
  if (!(n > 0.0) || n > 2.0) {
    throw std::invalid_argument("ln_n: n must be in (0, 2]");
  }
  if (std::abs(n - 1.0) < 1e-12) return std::log(x);
  return (std::pow(x, 1.0 - n) - 1.0) / (1.0 - n);
}

double sigeur_bound(double n, int mub_count, int dim) {
  if (mub_count < 1) {
    throw std::invalid_argument("sigeur_bound: need at least one basis");
  }
  if (dim < 2) {
    throw std::invalid_argument("sigeur_bound: dimension must be at least 2");
  }
  const double x = static_cast<double>(mub_count) * dim / (dim + mub_count - 1.0);
  return mub_count * ln_n(x, n);
}

double sigeur_lhs_from_probabilities(const std::array<std::array<double, 4>, 3>& p, double n) {
  if (!(n > 0.0) || n > 2.0 || std::abs(n - 1.0) < 1e-12) {
    throw std::invalid_argument("sigeur_lhs: n must be in (0, 2] and not 1");
  }
  double total = 0.0;
  for (const auto& axis_p : p) {
    double inner = 0.0;
    for (int a = 0; a < 2; ++a) {
      const double pa = axis_p[2 * a] + axis_p[2 * a + 1];
      if (pa <= 0.0) continue;  // 0^n / 0^(n-1) := 0
      for (int b = 0; b < 2; ++b) {
        const double pab = axis_p[2 * a + b];
        if (pab <= 0.0) continue;
        inner += std::pow(pab, n) / std::pow(pa, n - 1.0);
      }
    }
    total += 1.0 - inner;
  }
  return total / (n - 1.0);
}

double sigeur_lhs(const DensityMatrix& rho_ab, double n) {
  if (rho_ab.dim() != 4) {
    throw std::invalid_argument("sigeur_lhs: expected a two-qubit state");
  }
  std::array<std::array<double, 4>, 3> p{};
  for (int i = 0; i < 3; ++i) {
    const PauliAxis axis = kAllAxes[i];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const ComplexMatrix m = tensor(pauli_projector(axis, a), pauli_projector(axis, b));
        p[i][2 * a + b] = (m * rho_ab.mat()).trace().real();
      }
  }
  return sigeur_lhs_from_probabilities(p, n);
}

SteeringReport steering_report(const DensityMatrix& rho_ab) {
  const auto ens = all_ensembles(rho_ab);

  SteeringReport rep{};
  for (int qi = 0; qi < 3; ++qi) {
    const CoherenceMeasure q = kAllMeasures[qi];
    const double s0 = s_ell_from(ens, 0, q);
    const double s1 = s_ell_from(ens, 1, q);
    const double s2 = s_ell_from(ens, 2, q);
    SteeringCriterion c{};
    c.measure = q;
    c.s0 = s0;
    c.s12_half = 0.5 * (s1 + s2);
    c.s012_third = (s0 + 2.0 * c.s12_half) / 3.0;
    c.bound = epsilon_bound(q);
    c.violates_one_setting = c.s0 > c.bound + kVerdictGuard;
    c.violates_two_setting = c.s12_half > c.bound + kVerdictGuard;
    c.marginal = q == CoherenceMeasure::REC &&
                 (std::abs(c.s0 - c.bound) <= 0.005 || std::abs(c.s12_half - c.bound) <= 0.005);
    rep.criteria[qi] = c;
  }

  rep.sigeur_lhs = sigeur_lhs(rho_ab, 2.0);
  rep.sigeur_bound = sigeur_bound(2.0, 3, 2);
  rep.sigeur_violated = rep.sigeur_lhs < rep.sigeur_bound - kVerdictGuard;
  return rep;
}

}  // namespace cohsteer
