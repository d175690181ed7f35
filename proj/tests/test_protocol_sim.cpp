#include "qdisc/primal_sdp.hpp"
#include "qdisc/protocol_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qdisc;

namespace {

UnitarySample i_pauli_x() {
  Mat2 m;
  m << 0.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 0.0;
  return UnitarySample(m);
}

// E over Haar W of |tr W / 2|^2, with tr W = 2 cos(a) and density (2/pi) sin^2(a) (Simpson).
double overlap_oracle() {
  constexpr int n = 2000;
  const double h = std::numbers::pi / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double a = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::cos(a) * std::cos(a) * (2.0 / std::numbers::pi) * std::sin(a) * std::sin(a);
  }
  return s * h / 3.0;
}

}  // namespace

TEST(Protocol, InstanceValidatesTarget) {
  EXPECT_THROW(ProtocolInstance(UnitarySample{}, UnitarySample{}, 0), std::invalid_argument);
  EXPECT_THROW(ProtocolInstance(UnitarySample{}, UnitarySample{}, 3), std::invalid_argument);
}

TEST(Protocol, IdenticalIdentityGatesTargetTwoFail) {
  EXPECT_NEAR(comparison_success_prob({UnitarySample{}, UnitarySample{}, 2}), 0.0, 1e-15);
}

TEST(Protocol, MatchedTargetAlwaysSucceeds) {
  RngStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const UnitarySample u = sample_haar_su2(rng);
    const UnitarySample v = sample_haar_su2(rng);
    EXPECT_NEAR(comparison_success_prob({u, u, 1}), 1.0, 1e-12);
    EXPECT_NEAR(comparison_success_prob({u, v, 1}), 1.0, 1e-12);
  }
}

TEST(Protocol, OrthogonalCandidatesAreDistinguished) {
  EXPECT_NEAR(comparison_success_prob({UnitarySample{}, i_pauli_x(), 2}), 1.0, 1e-15);
  EXPECT_NEAR(instance_esp(UnitarySample{}, i_pauli_x()), 1.0, 1e-15);
}

TEST(Protocol, SingletOverlapIsHalfTrace) {
  // <psi-| A (x) B |psi-> = tr(A^dagger B) / 2 for A in SU(2).
  RngStream rng(2);
  for (int i = 0; i < 20; ++i) {
    const Mat2 a = sample_haar_su2(rng).matrix();
    const Mat2 b = sample_haar_su2(rng).matrix();
    EXPECT_NEAR(singlet_outcome_prob(a, b), std::norm((a.adjoint() * b).trace() / 2.0), 1e-12);
  }
}

TEST(Protocol, ProbabilitiesStayInUnitInterval) {
  RngStream rng(3);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const UnitarySample u = sample_haar_su2(rng);
    const UnitarySample v = sample_haar_su2(rng);
    const double p = comparison_success_prob({u, v, 2});
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LE(hi, 1.0);
}

TEST(Protocol, MirroredConventionIsSymmetric) {
  RngStream rng(4);
  for (int i = 0; i < 50; ++i) {
    const UnitarySample u = sample_haar_su2(rng);
    const UnitarySample v = sample_haar_su2(rng);
    EXPECT_NEAR(comparison_success_prob({u, v, 2}, CompareConvention::sample2), 1.0, 1e-12);
    EXPECT_NEAR(instance_esp(u, v, CompareConvention::sample1), instance_esp(u, v, CompareConvention::sample2), 1e-12);
  }
}

TEST(Simulation, ExactModeGivesSevenEighths) {
  const SimReport r = estimate_esp(100000, 7);
  EXPECT_NEAR(r.mean_esp, 0.875, 5.0 * r.std_error);
  EXPECT_NEAR(r.std_error, 4e-4, 1e-4);
  EXPECT_EQ(r.trials, 100000u);
}

TEST(Simulation, AgreesWithComparisonTesterValue) {
  const TesterPoint t = comparison_tester_choi({2, 3});
  const double sdp_value = objective_esp(t.rho1, t.rho2, {2, 3});
  const SimReport r = estimate_esp(100000, 11);
  EXPECT_NEAR(r.mean_esp, sdp_value, 5.0 * r.std_error);
}

TEST(Simulation, DeterministicUnderSeed) {
  const SimReport a = estimate_esp(1, 5);
  const SimReport b = estimate_esp(1, 5);
  EXPECT_EQ(a.mean_esp, b.mean_esp);
  EXPECT_EQ(a.std_error, 0.0);
  EXPECT_NE(estimate_esp(1000, 5).mean_esp, estimate_esp(1000, 6).mean_esp);
}

TEST(Simulation, ThreadCountDoesNotChangeResult) {
  SimOptions one, four;
  four.threads = 4;
  const SimReport a = estimate_esp(50000, 3, one);
  const SimReport b = estimate_esp(50000, 3, four);
  EXPECT_EQ(a.mean_esp, b.mean_esp);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Simulation, ShotModeAgrees) {
  SimOptions shots;
  shots.mode = SimMode::shots;
  const SimReport s = estimate_esp(100000, 8, shots);
  EXPECT_NEAR(s.mean_esp, 0.875, 5.0 * s.std_error);
  EXPECT_GT(s.std_error, estimate_esp(100000, 8).std_error);
}

TEST(Simulation, ShotFrequencyConvergesOnFixedPairs) {
  RngStream rng(9);
  for (int i = 0; i < 5; ++i) {
    const UnitarySample u = sample_haar_su2(rng);
    const UnitarySample v = sample_haar_su2(rng);
    const ProtocolInstance inst{u, v, 2};
    EXPECT_NEAR(shot_success_frequency(inst, 10000, rng), comparison_success_prob(inst), 0.02);
  }
  EXPECT_THROW(shot_success_frequency({UnitarySample{}, UnitarySample{}, 1}, 0, rng), std::invalid_argument);
}

TEST(Simulation, RandomFrameInvariance) {
  SimOptions framed;
  framed.random_frame = true;
  const SimReport a = estimate_esp(100000, 12);
  const SimReport b = estimate_esp(100000, 13, framed);
  const double se = std::hypot(a.std_error, b.std_error);
  EXPECT_NEAR(a.mean_esp, b.mean_esp, 5.0 * se);
}

TEST(Simulation, MirroredConventionSameEsp) {
  SimOptions mirrored;
  mirrored.convention = CompareConvention::sample2;
  const SimReport a = estimate_esp(20000, 14);
  const SimReport b = estimate_esp(20000, 14, mirrored);
  EXPECT_NEAR(a.mean_esp, b.mean_esp, 1e-12);
}

TEST(Simulation, RejectsZeroTrials) {
  EXPECT_THROW(estimate_esp(0, 1), std::invalid_argument);
  EXPECT_THROW(haar_mean_overlap(0, 1), std::invalid_argument);
}

TEST(Simulation, MeanOverlapIsOneQuarter) {
  const double oracle = overlap_oracle();
  EXPECT_NEAR(oracle, 0.25, 1e-10);
  const double est = haar_mean_overlap(100000, 15);
  EXPECT_NEAR(est, oracle, 0.005);
  EXPECT_GE(est, 0.0);
  EXPECT_LE(est, 1.0);
}

TEST(Simulation, OverlapOfIdentitiesIsOne) {
  EXPECT_NEAR(singlet_outcome_prob(Mat2::Identity(), Mat2::Identity()), 1.0, 1e-15);
}
