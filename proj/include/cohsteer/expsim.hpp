#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cohsteer/steering.hpp"

namespace cohsteer {

enum class WavePlateKind { HWP, QWP };

struct WavePlateSetting {
  WavePlateKind kind;
  double angle_deg;  // optical-axis rotation, in [-90, 90]
};

// Jones matrix of a wave plate with its axis at angle_deg from horizontal.
// The QWP keeps its conventional global phase exp(-i pi/4).
ComplexMatrix waveplate_jones(WavePlateKind kind, double angle_deg);

// Wave-plate conventions selected by the verification suite. In the analysis
// module the photon meets the QWP first, then the HWP, then the PBS, and that
// QWP reads its angle from the vertical axis (a 90-degree offset, which
// conjugates its retardance relative to the local-measurement module's QWP).
struct JonesConvention {
  bool qwp_before_hwp = true;
  bool tomo_qwp_from_vertical = true;
};
inline constexpr JonesConvention kVerifiedConvention{};

struct PmoLabel {
  PauliAxis axis;
  int outcome;
};

// Local-measurement module settings: w1 rotates the measured eigenstate onto
// |H> ahead of the PBS, w2 re-prepares it behind the PBS.
struct LocalMeasureSetting {
  PmoLabel label;
  WavePlateSetting w1;
  WavePlateSetting w2;
};
const std::array<LocalMeasureSetting, 6>& pmo_table();

// Analysis-module settings for the same six projectors.
struct TomoSetting {
  PmoLabel label;
  double hwp_deg;
  double qwp_deg;
};
const std::array<TomoSetting, 6>& tomography_table();

// Identify the Pauli eigenprojector realized by a local-measurement setting,
// checking both the w1 projection and the w2 re-preparation. Throws when the
// setting matches none.
PmoLabel verify_pmo_table(const LocalMeasureSetting& s);

// Identify the projector realized by an analysis setting under the given
// convention.
PmoLabel verify_tomography_table(double hwp_deg, double qwp_deg,
                                 const JonesConvention& conv = kVerifiedConvention);

struct CountRecord {
  std::string label;
  std::vector<std::int64_t> counts;  // one entry per projector
  double mean_flux;
};

// Poisson coincidence counting: counts[k] ~ Poisson(mean_flux * tr(P_k rho)),
// independent across projectors.
CountRecord simulate_counts(const DensityMatrix& rho, std::string label,
                            std::span<const ComplexMatrix> projectors, double mean_flux,
                            RandomStream& rng);

// Single-qubit linear-inversion tomography from counts in the three Pauli
// bases, counts[axis][outcome]. A basis with zero total counts is an error.
DensityMatrix tomo_1q(const std::array<std::array<double, 2>, 3>& counts);

// Two-qubit tomography from the 36 projector pairs M_a^i x M_b^j,
// counts[3 i + j][2 a + b].
DensityMatrix tomo_2q(const std::array<std::array<double, 4>, 9>& counts);

// Nearest positive unit-trace matrix in Frobenius norm, via eigenvalue
// water-filling: zero the most negative eigenvalues and spread the deficit
// over the rest.
DensityMatrix project_to_physical(const ComplexMatrix& h);

struct BootstrapResult {
  double mean;
  double stddev;
};

// Parametric bootstrap: resample each observed count as Poisson(count),
// re-run the pipeline, report the sample mean and standard deviation.
BootstrapResult bootstrap_errors(std::span<const double> counts,
                                 const std::function<double(std::span<const double>)>& pipeline,
                                 int resamples, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<double> thetas_deg{0, 10, 20, 30, 40, 45, 50, 60, 70, 80, 90};
  int counts_per_setting = 5000;
  double visibility = 0.995;
  double dephasing = 0.005;
  int bootstrap_resamples = 200;
  std::uint64_t seed = 1;
  bool poisson_noise = true;  // false substitutes expected counts (exact limit)
};

void validate(const ExperimentConfig& config);

// Steering quantities estimated from the 36 coincidence counts of one state,
// index order (alice axis, alice outcome, bob axis, bob outcome).
struct SteeringEstimate {
  std::array<double, 3> s0;  // per measure, L1C / REC / SIC
  std::array<double, 3> s12_half;
  std::array<double, 3> s012_third;
};
SteeringEstimate estimate_steering(std::span<const double> counts36);

// Entropic-steering estimate from the 12 joint counts of the sigma_i x
// sigma_i measurements, index order (axis, 2 a + b).
double estimate_sigeur(std::span<const double> counts12, double n);

// Verdict as recomputable from the 4-decimal CSV output: both sides rounded
// to that precision, strict comparison (so saturation never reads violated).
bool rounded_verdict(double value, double bound);

struct CriterionRow {
  double theta_deg;
  CoherenceMeasure measure;
  double s0_theory, s12half_theory, s012third_theory;
  double s0_sim, s0_err;
  double s12half_sim, s12half_err;
  double s012third_sim, s012third_err;
  double bound;
  bool violates_two_setting;  // from the simulated values
  bool violates_one_setting;
};

struct SigeurRow {
  double theta_deg;
  double lhs_theory;
  double lhs_sim, lhs_err;
  double bound;
  bool violated;
};

struct SweepDataset {
  ExperimentConfig config;
  JonesConvention convention;
  std::vector<CriterionRow> rows;      // three per theta (L1C, REC, SIC)
  std::vector<SigeurRow> sigeur_rows;  // one per theta
};

// The virtual experiment. For each theta: prepare the Bell-like state with
// the configured noise, collect Poisson coincidence counts for Alice's six
// projectors against Bob's three analysis bases, reconstruct Bob's
// conditional states by tomography, form the steering quantities from the
// reconstructed states and the measured probabilities with bootstrap error
// bars, and run the entropic steering protocol. Every theta draws from a
// substream derived from (seed, index), so the sweep may be evaluated in any
// order, or concurrently, with identical results.
SweepDataset run_virtual_experiment(const ExperimentConfig& config);

}  // namespace cohsteer
