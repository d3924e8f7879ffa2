#include <cmath>

#include "doctest.h"
#include "testutil.hpp"

#include "cohsteer/closedform.hpp"
#include "cohsteer/steering.hpp"

using namespace cohsteer;

namespace {
const std::array<double, 11> kReferenceThetasDeg{0, 10, 20, 30, 40, 45, 50, 60, 70, 80, 90};

DensityMatrix maximally_mixed4() { return DensityMatrix::from_matrix(0.25 * identity4()); }
}  // namespace

TEST_CASE("pauli projectors") {
  CHECK(max_abs_diff(pauli_projector(PauliAxis::Z, 0),
                     projector2(axis_eigenvector(PauliAxis::Z, 0))) < 1e-15);
  CHECK(max_abs_diff(pauli_projector(PauliAxis::X, 1),
                     projector2(axis_eigenvector(PauliAxis::X, 1))) < 1e-15);
  CHECK(max_abs_diff(pauli_projector(PauliAxis::Y, 0),
                     projector2(axis_eigenvector(PauliAxis::Y, 0))) < 1e-15);

  for (PauliAxis ax : kAllAxes) {
    const ComplexMatrix m0 = pauli_projector(ax, 0);
    const ComplexMatrix m1 = pauli_projector(ax, 1);
    CHECK(max_abs_diff(m0 * m0, m0) < 1e-15);  // idempotent
    CHECK(max_abs_diff(m0 + m1, identity2()) < 1e-15);
  }
  CHECK_THROWS_AS(pauli_projector(PauliAxis::X, 2), std::invalid_argument);
}

TEST_CASE("conditional ensembles") {
  const ConditionalEnsemble schmidt = conditional_ensemble(bell_like(deg2rad(45.0)), PauliAxis::Z);
  CHECK_NEAR(schmidt.branches[0].probability, 0.5, 1e-12);
  CHECK_NEAR(schmidt.branches[1].probability, 0.5, 1e-12);
  CHECK(max_abs_diff(schmidt.branches[0].state.mat(),
                     projector2(axis_eigenvector(PauliAxis::Z, 0))) < 1e-12);
  CHECK(max_abs_diff(schmidt.branches[1].state.mat(),
                     projector2(axis_eigenvector(PauliAxis::Z, 1))) < 1e-12);

  // Alice along x on bell_like(theta): both outcomes are even, Bob holds
  // cos(theta)|H> +/- sin(theta)|V>; checked against the amplitude oracle.
  const double theta = deg2rad(30.0);
  const ConditionalEnsemble ex = conditional_ensemble(bell_like(theta), PauliAxis::X);
  const auto oracle = testutil::oracle_branches(theta, 0);
  for (int a = 0; a < 2; ++a) {
    CHECK_NEAR(ex.branches[a].probability, oracle[a].probability, 1e-12);
    CHECK(max_abs_diff(ex.branches[a].state.mat(), projector2(oracle[a].amp)) < 1e-12);
  }

  // Product state: one branch carries everything, the other is the weight-0
  // placeholder.
  const ConditionalEnsemble prod = conditional_ensemble(bell_like(0.0), PauliAxis::Z);
  CHECK_NEAR(prod.branches[0].probability, 1.0, 1e-12);
  CHECK(prod.branches[1].probability == 0.0);
  CHECK(max_abs_diff(prod.branches[1].state.mat(), 0.5 * identity2()) < 1e-15);
}

TEST_CASE("no-signalling: ensembles average to Bob's marginal") {
  RandomStream rng(47);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_density_matrix(rng, 4, i % 4 + 1);
    const ComplexMatrix marginal = partial_trace(rho.mat(), Subsystem::B);
    for (PauliAxis ax : kAllAxes) {
      const ConditionalEnsemble ens = conditional_ensemble(rho, ax);
      ComplexMatrix avg(2);
      for (const EnsembleBranch& br : ens.branches) {
        avg += br.probability * br.state.mat();
      }
      REQUIRE(max_abs_diff(avg, marginal) < 1e-10);
      REQUIRE(std::abs(ens.branches[0].probability + ens.branches[1].probability - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("probability-weighted coherence sums") {
  CHECK_NEAR(s_ell(bell_like(deg2rad(30.0)), 0, CoherenceMeasure::L1C), 1.0, 1e-12);
  CHECK_NEAR(s_ell(bell_like(0.0), 0, CoherenceMeasure::L1C), 2.0, 1e-12);
  for (int ell = 0; ell < 3; ++ell) {
    for (CoherenceMeasure q : kAllMeasures) {
      CHECK_NEAR(s_ell(maximally_mixed4(), ell, q), 0.0, 1e-12);
    }
  }
  CHECK_THROWS_AS(s_ell(maximally_mixed4(), 3, CoherenceMeasure::L1C), std::invalid_argument);
}

TEST_CASE("one-, two- and three-setting values") {
  const DensityMatrix b45 = bell_like(deg2rad(45.0));
  CHECK_NEAR(two_setting_value(b45, CoherenceMeasure::L1C), 3.0, 1e-12);
  CHECK_NEAR(one_setting_value(b45, CoherenceMeasure::L1C), 0.0, 1e-9);
  CHECK_NEAR(three_setting_value(b45, CoherenceMeasure::L1C), 2.0, 1e-12);

  const DensityMatrix b10 = bell_like(deg2rad(10.0));
  const double s20 = std::sin(deg2rad(20.0));
  CHECK_NEAR(two_setting_value(b10, CoherenceMeasure::SIC), 2.0 + s20 * s20, 1e-12);
  CHECK_NEAR(two_setting_value(b10, CoherenceMeasure::SIC), 2.1170, 5e-5);
  CHECK_NEAR(two_setting_value(b10, CoherenceMeasure::REC), 2.0 + testutil::h2(std::pow(std::cos(deg2rad(10.0)), 2)), 1e-12);

  const DensityMatrix b30 = bell_like(deg2rad(30.0));
  CHECK_NEAR(one_setting_value(b30, CoherenceMeasure::SIC), 0.5, 1e-12);
  CHECK_NEAR(one_setting_value(bell_like(0.0), CoherenceMeasure::REC), 2.0, 1e-12);

  const DensityMatrix b20 = bell_like(deg2rad(20.0));
  const double expected20 =
      (2.0 * std::cos(deg2rad(40.0)) + 4.0 + 2.0 * std::sin(deg2rad(40.0))) / 3.0;
  CHECK_NEAR(three_setting_value(b20, CoherenceMeasure::L1C), expected20, 1e-12);
  CHECK_NEAR(three_setting_value(b20, CoherenceMeasure::L1C), 2.2726, 5e-5);

  for (CoherenceMeasure q : kAllMeasures) {
    CHECK_NEAR(three_setting_value(maximally_mixed4(), q), 0.0, 1e-12);
  }
}

TEST_CASE("bounds and generalized logarithm") {
  CHECK_NEAR(epsilon_bound(CoherenceMeasure::L1C), 2.449489742783178, 1e-15);
  CHECK(epsilon_bound(CoherenceMeasure::REC) == 2.23);
  CHECK(epsilon_bound(CoherenceMeasure::SIC) == 2.0);

  CHECK_NEAR(ln_n(1.5, 2.0), 1.0 / 3.0, 1e-15);
  CHECK_NEAR(ln_n(1.0, 2.0), 0.0, 1e-15);
  CHECK_NEAR(ln_n(4.0, 0.5), 2.0, 1e-15);
  CHECK_NEAR(ln_n(std::exp(1.0), 1.0), 1.0, 1e-12);
  CHECK_THROWS_AS(ln_n(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ln_n(1.0, 2.5), std::invalid_argument);

  CHECK_NEAR(sigeur_bound(2.0, 3, 2), 1.0, 1e-12);
  CHECK_NEAR(sigeur_bound(2.0, 1, 2), 0.0, 1e-15);
  CHECK_NEAR(sigeur_bound(2.0, 2, 2), 0.5, 1e-12);
}

TEST_CASE("entropic steering value") {
  const double c20 = std::cos(deg2rad(20.0));
  CHECK_NEAR(sigeur_lhs(bell_like(deg2rad(10.0)), 2.0), c20 * c20, 1e-12);
  CHECK_NEAR(sigeur_lhs(bell_like(deg2rad(10.0)), 2.0), 0.8830, 5e-5);
  CHECK_NEAR(sigeur_lhs(bell_like(0.0), 2.0), 1.0, 1e-12);
  CHECK_NEAR(sigeur_lhs(bell_like(deg2rad(45.0)), 2.0), 0.0, 1e-12);

  for (double theta_deg : kReferenceThetasDeg) {
    const double theta = deg2rad(theta_deg);
    REQUIRE(std::abs(sigeur_lhs(bell_like(theta), 2.0) - testutil::oracle_sigeur_n2(theta)) <
            1e-12);
  }
}

TEST_CASE("steering reports") {
  const SteeringReport b45 = steering_report(bell_like(deg2rad(45.0)));
  for (const SteeringCriterion& c : b45.criteria) {
    CHECK(c.violates_two_setting);
    CHECK_FALSE(c.violates_one_setting);
    CHECK_NEAR(c.s012_third, (c.s0 + 2.0 * c.s12_half) / 3.0, 1e-10);
  }
  CHECK(b45.sigeur_violated);

  const SteeringReport mixed = steering_report(maximally_mixed4());
  for (const SteeringCriterion& c : mixed.criteria) {
    CHECK_FALSE(c.violates_two_setting);
    CHECK_FALSE(c.violates_one_setting);
  }
  CHECK_FALSE(mixed.sigeur_violated);

  // theta = 10 degrees: only the skew-information criterion flags steering.
  const SteeringReport b10 = steering_report(bell_like(deg2rad(10.0)));
  CHECK_FALSE(b10.criteria[0].violates_two_setting);  // l1c
  CHECK_FALSE(b10.criteria[1].violates_two_setting);  // rec
  CHECK(b10.criteria[2].violates_two_setting);        // sic
  CHECK(b10.sigeur_violated);

  // Saturation is a non-violation: the entropic value of a product state
  // equals the bound exactly, and the SIC two-setting value at theta = 0
  // equals its bound exactly.
  const SteeringReport b0 = steering_report(bell_like(0.0));
  CHECK_FALSE(b0.sigeur_violated);
  CHECK_NEAR(b0.criteria[2].s12_half, 2.0, 1e-12);
  CHECK_FALSE(b0.criteria[2].violates_two_setting);
}

TEST_CASE("marginal flag near the coarse REC bound") {
  // The REC two-setting value crosses 2.23 near theta = 11 degrees.
  const SteeringReport near = steering_report(bell_like(deg2rad(11.2)));
  CHECK(near.criteria[1].marginal);
  const SteeringReport far = steering_report(bell_like(deg2rad(30.0)));
  CHECK_FALSE(far.criteria[1].marginal);
  CHECK_FALSE(far.criteria[0].marginal);
}

TEST_CASE("closed forms, brute force and implementation agree on the reference angles") {
  for (double theta_deg : kReferenceThetasDeg) {
    const double theta = deg2rad(theta_deg);
    const DensityMatrix rho = bell_like(theta);
    for (CoherenceMeasure q : kAllMeasures) {
      const double s0_impl = one_setting_value(rho, q);
      const double s12_impl = two_setting_value(rho, q);
      REQUIRE(std::abs(s0_impl - closedform::s0(theta, q)) < 1e-9);
      REQUIRE(std::abs(s12_impl - closedform::s12_half(theta, q)) < 1e-9);
      REQUIRE(std::abs(s0_impl - testutil::oracle_s_ell(theta, 0, q)) < 1e-9);
      const double s12_oracle =
          0.5 * (testutil::oracle_s_ell(theta, 1, q) + testutil::oracle_s_ell(theta, 2, q));
      REQUIRE(std::abs(s12_impl - s12_oracle) < 1e-9);
      REQUIRE(std::abs(three_setting_value(rho, q) - closedform::s012_third(theta, q)) < 1e-9);
    }
    REQUIRE(std::abs(sigeur_lhs(rho, 2.0) - closedform::sigeur(theta)) < 1e-9);
  }
}

TEST_CASE("three-setting bound and complementarity on random states") {
  // The universal bound is the exact ceiling; the rec criterion constant 2.23
  // is its two-decimal quote and can be crossed by states near the symmetric
  // pure direction.
  const auto check = [](const SteeringReport& rep) {
    for (const SteeringCriterion& c : rep.criteria) {
      const double ceiling = three_setting_ceiling(c.measure);
      REQUIRE(c.s012_third <= ceiling + 1e-9);
      if (c.s12_half > ceiling) REQUIRE(c.s0 <= ceiling);
    }
  };
  RandomStream rng(53);
  for (int i = 0; i < 2000; ++i) {
    check(steering_report(random_density_matrix(rng, 4, i % 4 + 1)));
  }
  for (int d = 0; d <= 90; ++d) {
    check(steering_report(bell_like(deg2rad(d))));
  }
}

TEST_CASE("rec ceiling value and the gray zone") {
  CHECK(three_setting_ceiling(CoherenceMeasure::L1C) == epsilon_bound(CoherenceMeasure::L1C));
  CHECK(three_setting_ceiling(CoherenceMeasure::SIC) == 2.0);
  CHECK_NEAR(three_setting_ceiling(CoherenceMeasure::REC), 2.2320, 5e-5);

  // A product state with Bob along (1,1,1)/sqrt(3) sits above the 2.23 quote
  // but below the ceiling, for every shift ell.
  const double m = 1.0 / std::sqrt(3.0);
  ComplexMatrix bob = identity2();
  bob += m * pauli_x();
  bob += m * pauli_y();
  bob += m * pauli_z();
  bob *= cplx(0.5);
  const ComplexMatrix prod = tensor(0.5 * identity2(), bob);
  const SteeringReport rep = steering_report(DensityMatrix::from_matrix(prod));
  const SteeringCriterion& rec = rep.criteria[1];
  CHECK(rec.s012_third > 2.23);
  CHECK(rec.s012_third <= three_setting_ceiling(CoherenceMeasure::REC) + 1e-9);
  CHECK(rec.marginal);
}

TEST_CASE("anticorrelation of the one- and two-setting curves") {
  // Finite differences on the closed forms over (0, 45) degrees.
  const double h = deg2rad(0.01);
  for (int d = 1; d <= 44; ++d) {
    const double theta = deg2rad(d);
    for (CoherenceMeasure q : kAllMeasures) {
      const double ds0 = closedform::s0(theta + h, q) - closedform::s0(theta - h, q);
      const double ds12 = closedform::s12_half(theta + h, q) - closedform::s12_half(theta - h, q);
      REQUIRE(ds0 * ds12 < 0.0);
    }
  }
}
