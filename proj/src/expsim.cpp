#include "cohsteer/expsim.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cohsteer {

namespace {

constexpr double kMatchTol = 1e-10;
constexpr double kVerdictGuard = 1e-9;

const Ket2 kKetH{1.0, 0.0};

// Joint-count index for the steering protocol.
int idx36(int i, int a, int j, int b) { return ((i * 2 + a) * 3 + j) * 2 + b; }

ComplexMatrix effective_projector(const ComplexMatrix& u) {
  return u.adjoint() * projector2(kKetH) * u;
}

PmoLabel match_pmo(const ComplexMatrix& proj, const char* who) {
  for (PauliAxis axis : kAllAxes) {
    for (int a = 0; a < 2; ++a) {
      if (max_abs_diff(proj, pauli_projector(axis, a)) <= kMatchTol) {
        return {axis, a};
      }
    }
  }
  throw std::runtime_error(std::string(who) +
                           ": setting matches no Pauli eigenprojector, wrong Jones convention");
}

double sample_count(RandomStream& rng, double mean, bool poisson) {
  if (mean < 0.0) mean = 0.0;  // trace round-off
  return poisson ? static_cast<double>(rng.poisson(mean)) : mean;
}

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace

ComplexMatrix waveplate_jones(WavePlateKind kind, double angle_deg) {
  const double t = deg2rad(angle_deg);
  const double c = std::cos(t), s = std::sin(t);
  ComplexMatrix m(2);
  if (kind == WavePlateKind::HWP) {
    const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
    m(0, 0) = c2;
    m(0, 1) = s2;
    m(1, 0) = s2;
    m(1, 1) = -c2;
    return m;
  }
  const cplx phase = std::exp(cplx(0.0, -kPi / 4.0));
  m(0, 0) = phase * cplx(c * c, s * s);
  m(0, 1) = phase * cplx(1.0, -1.0) * (s * c);
  m(1, 0) = m(0, 1);
  m(1, 1) = phase * cplx(s * s, c * c);
  return m;
}

const std::array<LocalMeasureSetting, 6>& pmo_table() {
  static const std::array<LocalMeasureSetting, 6> table{{
      {{PauliAxis::X, 0}, {WavePlateKind::HWP, 22.5}, {WavePlateKind::HWP, 22.5}},
      {{PauliAxis::X, 1}, {WavePlateKind::HWP, -22.5}, {WavePlateKind::HWP, -22.5}},
      {{PauliAxis::Y, 0}, {WavePlateKind::QWP, 45.0}, {WavePlateKind::QWP, -45.0}},
      {{PauliAxis::Y, 1}, {WavePlateKind::QWP, -45.0}, {WavePlateKind::QWP, 45.0}},
      {{PauliAxis::Z, 0}, {WavePlateKind::HWP, 0.0}, {WavePlateKind::HWP, 0.0}},
      {{PauliAxis::Z, 1}, {WavePlateKind::HWP, 45.0}, {WavePlateKind::HWP, 45.0}},
  }};
  return table;
}

const std::array<TomoSetting, 6>& tomography_table() {
  static const std::array<TomoSetting, 6> table{{
      {{PauliAxis::X, 0}, 22.5, 45.0},
      {{PauliAxis::X, 1}, -22.5, 45.0},
      {{PauliAxis::Y, 0}, 22.5, 0.0},
      {{PauliAxis::Y, 1}, -22.5, 0.0},
      {{PauliAxis::Z, 0}, 0.0, 0.0},
      {{PauliAxis::Z, 1}, 45.0, 0.0},
  }};
  return table;
}

PmoLabel verify_pmo_table(const LocalMeasureSetting& s) {
  if (std::abs(s.w1.angle_deg) > 90.0 || std::abs(s.w2.angle_deg) > 90.0) {
    throw std::invalid_argument("verify_pmo_table: wave-plate angle outside [-90, 90]");
  }
  const ComplexMatrix u1 = waveplate_jones(s.w1.kind, s.w1.angle_deg);
  const PmoLabel label = match_pmo(effective_projector(u1), "verify_pmo_table");

  // w2 must re-prepare the measured eigenstate from |H>, up to a global phase.
  const ComplexMatrix u2 = waveplate_jones(s.w2.kind, s.w2.angle_deg);
  const Ket2& v = axis_eigenvector(label.axis, label.outcome);
  const cplx overlap = std::conj(v[0]) * u2(0, 0) + std::conj(v[1]) * u2(1, 0);
  if (std::abs(std::abs(overlap) - 1.0) > kMatchTol) {
    throw std::runtime_error("verify_pmo_table: w2 does not re-prepare the measured eigenstate");
  }
  return label;
}

PmoLabel verify_tomography_table(double hwp_deg, double qwp_deg, const JonesConvention& conv) {
  const double qwp_eff = conv.tomo_qwp_from_vertical ? qwp_deg + 90.0 : qwp_deg;
  const ComplexMatrix hwp = waveplate_jones(WavePlateKind::HWP, hwp_deg);
  const ComplexMatrix qwp = waveplate_jones(WavePlateKind::QWP, qwp_eff);
  const ComplexMatrix u = conv.qwp_before_hwp ? hwp * qwp : qwp * hwp;
  return match_pmo(effective_projector(u), "verify_tomography_table");
}

CountRecord simulate_counts(const DensityMatrix& rho, std::string label,
                            std::span<const ComplexMatrix> projectors, double mean_flux,
                            RandomStream& rng) {
  if (mean_flux < 0.0) {
    throw std::invalid_argument("simulate_counts: mean_flux must be nonnegative");
  }
  CountRecord rec{std::move(label), {}, mean_flux};
  rec.counts.reserve(projectors.size());
  for (const ComplexMatrix& p : projectors) {
    double born = (p * rho.mat()).trace().real();
    if (born < 0.0) born = 0.0;
    rec.counts.push_back(rng.poisson(mean_flux * born));
  }
  return rec;
}

DensityMatrix tomo_1q(const std::array<std::array<double, 2>, 3>& counts) {
  std::array<double, 3> r{};
  for (int j = 0; j < 3; ++j) {
    const double tot = counts[j][0] + counts[j][1];
    if (tot <= 0.0) {
      throw std::invalid_argument("tomo_1q: basis with zero total counts");
    }
    r[j] = (counts[j][0] - counts[j][1]) / tot;
  }
  ComplexMatrix lin = identity2();
  lin += r[0] * pauli_x();
  lin += r[1] * pauli_y();
  lin += r[2] * pauli_z();
  lin *= cplx(0.5);
  return project_to_physical(lin);
}

DensityMatrix tomo_2q(const std::array<std::array<double, 4>, 9>& counts) {
  BlochDecomposition b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& n = counts[3 * i + j];
      const double tot = n[0] + n[1] + n[2] + n[3];
      if (tot <= 0.0) {
        throw std::invalid_argument("tomo_2q: setting with zero total counts");
      }
      const std::array<double, 4> f{n[0] / tot, n[1] / tot, n[2] / tot, n[3] / tot};
      b.t[i][j] = f[0] - f[1] - f[2] + f[3];
      b.r[i] += (f[0] + f[1] - f[2] - f[3]) / 3.0;  // averaged over Bob bases
      b.s[j] += (f[0] - f[1] + f[2] - f[3]) / 3.0;  // averaged over Alice bases
    }
  }
  return project_to_physical(bloch_reconstruct(b));
}

DensityMatrix project_to_physical(const ComplexMatrix& h) {
  if (!h.is_hermitian(1e-8)) {
    throw std::invalid_argument("project_to_physical: input is not Hermitian");
  }
  const int n = h.dim();
  ComplexMatrix sym(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) sym(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > 0.5) {
    throw std::invalid_argument("project_to_physical: trace is not close to 1");
  }
  sym *= cplx(1.0 / tr);

  const HermitianEigen eg = hermitian_eig(sym);
  std::vector<double> out(n, 0.0);
  double carry = 0.0;
  for (int i = 0; i < n; ++i) {
    const int remaining = n - i;
    if (i < n - 1 && eg.values[i] + carry / remaining < 0.0) {
      carry += eg.values[i];
      continue;
    }
    for (int j = i; j < n; ++j) out[j] = std::max(eg.values[j] + carry / remaining, 0.0);
    break;
  }

  ComplexMatrix m(n);
  for (int k = 0; k < n; ++k) {
    if (out[k] == 0.0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        m(r, c) += out[k] * eg.vectors(r, k) * std::conj(eg.vectors(c, k));
  }
  return DensityMatrix::from_matrix(m);
}

BootstrapResult bootstrap_errors(std::span<const double> counts,
                                 const std::function<double(std::span<const double>)>& pipeline,
                                 int resamples, std::uint64_t seed) {
  if (resamples < 1) {
    throw std::invalid_argument("bootstrap_errors: need at least one resample");
  }
  RandomStream rng(seed);
  std::vector<double> resampled(counts.size());
  std::vector<double> values;
  values.reserve(resamples);
  double sum = 0.0;
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t k = 0; k < counts.size(); ++k) {
      resampled[k] = static_cast<double>(rng.poisson(counts[k]));
    }
    const double v = pipeline(resampled);
    values.push_back(v);
    sum += v;
  }
  const double mean = sum / resamples;
  return {mean, sample_stddev(values, mean)};
}

bool rounded_verdict(double value, double bound) {
  const auto r4 = [](double v) { return std::round(v * 1e4) / 1e4; };
  return r4(value) > r4(bound);
}

void validate(const ExperimentConfig& config) {
  if (config.thetas_deg.empty()) {
    throw std::invalid_argument("config: thetas must not be empty");
  }
  if (config.counts_per_setting <= 0) {
    throw std::invalid_argument("config: counts_per_setting must be positive");
  }
  if (config.visibility < 0.0 || config.visibility > 1.0) {
    throw std::invalid_argument("config: visibility must be in [0, 1]");
  }
  if (config.dephasing < 0.0 || config.dephasing > 1.0) {
    throw std::invalid_argument("config: dephasing must be in [0, 1]");
  }
  if (config.bootstrap_resamples <= 0) {
    throw std::invalid_argument("config: bootstrap_resamples must be positive");
  }
}

SteeringEstimate estimate_steering(std::span<const double> counts36) {
  if (counts36.size() != 36) {
    throw std::invalid_argument("estimate_steering: expected 36 counts");
  }

  // Alice outcome probabilities from the coincidence totals of each axis.
  std::array<std::array<double, 2>, 3> p_hat{};
  for (int i = 0; i < 3; ++i) {
    std::array<double, 2> branch_tot{};
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 2; ++b) branch_tot[a] += counts36[idx36(i, a, j, b)];
    const double axis_tot = branch_tot[0] + branch_tot[1];
    for (int a = 0; a < 2; ++a) {
      p_hat[i][a] = axis_tot > 0.0 ? branch_tot[a] / axis_tot : 0.5;
    }
  }

  // Conditional-state tomography per branch; a branch with no data at all is
  // dropped with weight zero, a single empty basis contributes no Bloch
  // component.
  std::array<std::optional<DensityMatrix>, 6> rho_hat;
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 2; ++a) {
      double branch_tot = 0.0;
      std::array<double, 3> r{};
      for (int j = 0; j < 3; ++j) {
        const double n0 = counts36[idx36(i, a, j, 0)];
        const double n1 = counts36[idx36(i, a, j, 1)];
        const double tot = n0 + n1;
        branch_tot += tot;
        if (tot > 0.0) r[j] = (n0 - n1) / tot;
      }
      if (branch_tot <= 0.0) continue;
      ComplexMatrix lin = identity2();
      lin += r[0] * pauli_x();
      lin += r[1] * pauli_y();
      lin += r[2] * pauli_z();
      lin *= cplx(0.5);
      rho_hat[i * 2 + a] = project_to_physical(lin);
    }
  }

  SteeringEstimate est{};
  for (int qi = 0; qi < 3; ++qi) {
    std::array<double, 3> s_ell_val{};
    for (int ell = 0; ell < 3; ++ell) {
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        const PauliAxis bob_axis = cyclic_shift(kAllAxes[i], ell);
        for (int a = 0; a < 2; ++a) {
          const auto& rho = rho_hat[i * 2 + a];
          if (!rho || p_hat[i][a] <= 0.0) continue;
          sum += p_hat[i][a] * coherence(*rho, bob_axis, kAllMeasures[qi]);
        }
      }
      s_ell_val[ell] = sum;
    }
    est.s0[qi] = s_ell_val[0];
    est.s12_half[qi] = 0.5 * (s_ell_val[1] + s_ell_val[2]);
    est.s012_third[qi] = (s_ell_val[0] + 2.0 * est.s12_half[qi]) / 3.0;
  }
  return est;
}

double estimate_sigeur(std::span<const double> counts12, double n) {
  if (counts12.size() != 12) {
    throw std::invalid_argument("estimate_sigeur: expected 12 counts");
  }
  std::array<std::array<double, 4>, 3> p{};
  for (int i = 0; i < 3; ++i) {
    double tot = 0.0;
    for (int k = 0; k < 4; ++k) tot += counts12[4 * i + k];
    if (tot <= 0.0) {
      throw std::invalid_argument("estimate_sigeur: axis with zero total counts");
    }
    for (int k = 0; k < 4; ++k) p[i][k] = counts12[4 * i + k] / tot;
  }
  return sigeur_lhs_from_probabilities(p, n);
}

SweepDataset run_virtual_experiment(const ExperimentConfig& config) {
  validate(config);
  SweepDataset ds{config, kVerifiedConvention, {}, {}};

  for (std::size_t ti = 0; ti < config.thetas_deg.size(); ++ti) {
    const double theta_deg = config.thetas_deg[ti];
    RandomStream rng = RandomStream::derive(config.seed, ti);

    const DensityMatrix ideal = bell_like(deg2rad(theta_deg));
    const DensityMatrix prepared =
        apply_z_dephasing_bob(apply_white_noise(ideal, config.visibility), config.dephasing);

    // Expected joint probabilities for the 36 steering settings and the 12
    // entropic-protocol settings.
    std::array<double, 36> sprob{};
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 2; ++a)
        for (int j = 0; j < 3; ++j)
          for (int b = 0; b < 2; ++b) {
            const ComplexMatrix m = tensor(pauli_projector(kAllAxes[i], a),
                                           pauli_projector(kAllAxes[j], b));
            sprob[idx36(i, a, j, b)] = (m * prepared.mat()).trace().real();
          }
    std::array<double, 12> gprob{};
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const ComplexMatrix m = tensor(pauli_projector(kAllAxes[i], a),
                                         pauli_projector(kAllAxes[i], b));
          gprob[4 * i + 2 * a + b] = (m * prepared.mat()).trace().real();
        }

    const double flux = static_cast<double>(config.counts_per_setting);
    std::array<double, 36> scounts{};
    for (int k = 0; k < 36; ++k) scounts[k] = sample_count(rng, flux * sprob[k], config.poisson_noise);
    std::array<double, 12> gcounts{};
    for (int k = 0; k < 12; ++k) gcounts[k] = sample_count(rng, flux * gprob[k], config.poisson_noise);

    const SteeringEstimate est = estimate_steering(scounts);
    const double sig = estimate_sigeur(gcounts, 2.0);

    // Bootstrap: the nine steering quantities share each resampled count set.
    const int resamples = config.bootstrap_resamples;
    std::vector<std::array<double, 9>> boot(resamples);
    std::array<double, 36> re{};
    for (int r = 0; r < resamples; ++r) {
      for (int k = 0; k < 36; ++k) re[k] = static_cast<double>(rng.poisson(scounts[k]));
      const SteeringEstimate e = estimate_steering(re);
      for (int qi = 0; qi < 3; ++qi) {
        boot[r][qi] = e.s0[qi];
        boot[r][3 + qi] = e.s12_half[qi];
        boot[r][6 + qi] = e.s012_third[qi];
      }
    }
    std::array<double, 9> err{};
    for (int c = 0; c < 9; ++c) {
      std::vector<double> v(resamples);
      double mean = 0.0;
      for (int r = 0; r < resamples; ++r) mean += (v[r] = boot[r][c]);
      mean /= resamples;
      err[c] = sample_stddev(v, mean);
    }

    std::vector<double> sig_boot(resamples);
    std::array<double, 12> gre{};
    double sig_mean = 0.0;
    for (int r = 0; r < resamples; ++r) {
      for (int k = 0; k < 12; ++k) gre[k] = static_cast<double>(rng.poisson(gcounts[k]));
      sig_mean += (sig_boot[r] = estimate_sigeur(gre, 2.0));
    }
    sig_mean /= resamples;
    const double sig_err = sample_stddev(sig_boot, sig_mean);

    const SteeringReport theory = steering_report(ideal);
    for (int qi = 0; qi < 3; ++qi) {
      const SteeringCriterion& tc = theory.criteria[qi];
      CriterionRow row{};
      row.theta_deg = theta_deg;
      row.measure = kAllMeasures[qi];
      row.s0_theory = tc.s0;
      row.s12half_theory = tc.s12_half;
      row.s012third_theory = tc.s012_third;
      row.s0_sim = est.s0[qi];
      row.s0_err = err[qi];
      row.s12half_sim = est.s12_half[qi];
      row.s12half_err = err[3 + qi];
      row.s012third_sim = est.s012_third[qi];
      row.s012third_err = err[6 + qi];
      row.bound = tc.bound;
      row.violates_two_setting = rounded_verdict(row.s12half_sim, row.bound);
      row.violates_one_setting = rounded_verdict(row.s0_sim, row.bound);
      ds.rows.push_back(row);
    }

    SigeurRow srow{};
    srow.theta_deg = theta_deg;
    srow.lhs_theory = theory.sigeur_lhs;
    srow.lhs_sim = sig;
    srow.lhs_err = sig_err;
    srow.bound = theory.sigeur_bound;
    srow.violated = sig < srow.bound - kVerdictGuard;
    ds.sigeur_rows.push_back(srow);
  }
  return ds;
}

}  // namespace cohsteer
