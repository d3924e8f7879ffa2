#pragma once

#include <array>
#include <vector>

#include "cohsteer/coherence.hpp"

namespace cohsteer {

// Rank-1 Pauli eigenprojector [I + (-1)^a sigma_axis] / 2.
ComplexMatrix pauli_projector(PauliAxis axis, int outcome);

struct EnsembleBranch {
  int outcome;
  double probability;
  DensityMatrix state;
};

// Bob's conditional states for one Alice measurement axis. A branch whose
// probability falls below 1e-12 carries the maximally mixed placeholder and
// weight zero.
struct ConditionalEnsemble {
  PauliAxis axis;
  std::vector<EnsembleBranch> branches;  // outcomes 0 and 1
};

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho_ab, PauliAxis axis);

// Probability-weighted coherence sum: Bob evaluates the coherence of each
// conditional state in the basis shifted cyclically by `ell` from Alice's
// measurement axis.
double s_ell(const DensityMatrix& rho_ab, int ell, CoherenceMeasure q);

double one_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q);    // S_0
double two_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q);    // S_12 / 2
double three_setting_value(const DensityMatrix& rho_ab, CoherenceMeasure q);  // S_012 / 3

// Upper bound for unsteerable states: sqrt(6) (l1c), 2.23 (rec), 2 (sic).
double epsilon_bound(CoherenceMeasure q);

// Exact maximum of the three-setting average over all two-qubit states.
// For l1c and sic it coincides with epsilon_bound; the rec bound 2.23 is the
// two-decimal quote of this ceiling, 3 h((1 + 1/sqrt(3))/2) = 2.23202, so
// universal-bound checks must compare against the ceiling, not the quote.
double three_setting_ceiling(CoherenceMeasure q);

// Generalized logarithm (x^(1-n) - 1) / (1 - n); natural log at n = 1.
double ln_n(double x, double n);

// Entropic-uncertainty steering bound m ln_n[m d / (d + m - 1)].
double sigeur_bound(double n, int mub_count, int dim);

// Left-hand side of the entropic steering inequality for the measurement set
// {sigma_i x sigma_i}. Unsteerable states stay at or above sigeur_bound;
// steerable ones can dip below.
double sigeur_lhs(const DensityMatrix& rho_ab, double n);

// Same estimate from joint outcome probabilities p[axis][2a + b]; shared by
// the exact path and the counted path. The convention 0^n / 0^(n-1) := 0
// applies to empty marginals.
double sigeur_lhs_from_probabilities(const std::array<std::array<double, 4>, 3>& p, double n);

struct SteeringCriterion {
  CoherenceMeasure measure;
  double s0;
  double s12_half;
  double s012_third;
  double bound;
  bool violates_one_setting;
  bool violates_two_setting;
  // Set for REC when a compared value sits within 0.005 of the bound, which
  // is quoted to three digits only.
  bool marginal;
};

struct SteeringReport {
  std::array<SteeringCriterion, 3> criteria;  // L1C, REC, SIC
  double sigeur_lhs;
  double sigeur_bound;
  bool sigeur_violated;
};

// Violations are strict; saturation within 1e-9 of a bound counts as a
// non-violation.
SteeringReport steering_report(const DensityMatrix& rho_ab);

}  // namespace cohsteer
