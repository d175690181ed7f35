#include "qdisc/certificate.hpp"
#include "qdisc/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qdisc;

namespace {

Eigen::MatrixXd gram(const std::vector<Vec8>& vs) {
  Eigen::MatrixXd g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) g(i, j) = vs[i].dot(vs[j]);
  return g;
}

// Collective spin operator sum_i sigma_a^(i) / 2 on three qubits, a in {x, z}.
Mat8 total_spin(char axis) {
  Eigen::Matrix2d s;
  if (axis == 'z') s << 0.5, 0.0, 0.0, -0.5;
  else s << 0.0, 0.5, 0.5, 0.0;
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Mat8 out = Mat8::Zero();
  out += kernels::kron<double>(kernels::kron<double>(s, id), id);
  out += kernels::kron<double>(kernels::kron<double>(id, s), id);
  out += kernels::kron<double>(kernels::kron<double>(id, id), s);
  return out;
}

DualCertificate tampered_12() {
  DualCertificate c = published_certificate({1, 2});
  c.prime[0] = frac(3, 5);
  return c;
}

}  // namespace

TEST(IrrepBasis, ThreeQubitIsOrthonormalAndComplete) {
  const auto b = three_qubit_basis({Register::r1, Register::r3, Register::r5});
  const auto vs = b.all();
  EXPECT_LE((gram(vs) - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
  Mat8 sum = b.three_half_projector() + b.half_transition(0, 0) + b.half_transition(1, 1);
  EXPECT_LE((sum - Mat8::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IrrepBasis, SpinSectorsAreEigenspacesOfCasimir) {
  // [S_z, S_x] = i S_y, so S_y^2 = -[S_z, S_x]^2 keeps everything real.
  const Mat8 sx = total_spin('x'), sz = total_spin('z');
  const Mat8 c = sz * sx - sx * sz;  // = i S_y
  const Mat8 casimir = sx * sx + sz * sz - c * c;
  const auto b = three_qubit_basis({Register::r2b, Register::r4b, Register::r6b});
  for (const auto& v : b.three_half) EXPECT_LE((casimir * v - 3.75 * v).norm(), 1e-12);
  for (const auto& row : b.half)
    for (const auto& v : row) EXPECT_LE((casimir * v - 0.75 * v).norm(), 1e-12);
}

TEST(IrrepBasis, TwoQubitIsOrthonormalAndComplete) {
  const auto w = two_qubit_basis({Register::r1, Register::r3});
  EXPECT_LE((w.singlet_projector() + w.triplet_projector() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(w.singlet.norm(), 1.0, 1e-15);
  for (const auto& t : w.triplet) EXPECT_NEAR(t.dot(w.singlet), 0.0, 1e-15);
  EXPECT_LE((w.singlet_projector() - singlet_projector(Register::r1, Register::r3).real_matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(IrrepBasis, RejectsBadInput) {
  EXPECT_THROW(three_qubit_basis({Register::r1, Register::r3}), std::invalid_argument);
  EXPECT_THROW(three_qubit_basis({Register::r1, Register::r1, Register::r3}), std::invalid_argument);
  EXPECT_THROW(two_qubit_basis({Register::r1}), std::invalid_argument);
}

TEST(IrrepOperator, IdentityBlocksGiveIdentity) {
  IrrepBlocks b;
  b.half_half = Eigen::Matrix4d::Identity();
  b.three_half_half = Eigen::Matrix2d::Identity();
  b.half_three_half = Eigen::Matrix2d::Identity();
  b.three_half_three_half = 1.0;
  EXPECT_LE(frobenius_distance(assemble_irrep_operator(b), LabeledOperator::identity(canonical_layout())), 1e-12);
}

TEST(IrrepOperator, RejectsAsymmetricBlocks) {
  IrrepBlocks b;
  b.half_half(0, 1) = 1.0;
  EXPECT_THROW(assemble_irrep_operator(b), std::invalid_argument);
}

TEST(DualCertificate, Pair12Passes) {
  const DualReport r = verify_pair({1, 2});
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.lambda, 0.875);
  for (const char* n : {"d1", "d2", "d3"}) EXPECT_GE(r.check(n).value, -1e-9) << n;
  for (const char* n : {"d4", "d5"}) EXPECT_LE(r.check(n).value, 1e-10) << n;
}

TEST(DualCertificate, Pair23Passes) {
  const DualReport r = verify_pair({2, 3});
  EXPECT_TRUE(r.pass);
  for (const char* n : {"d4", "d5"}) EXPECT_LE(r.check(n).value, 1e-10) << n;
}

TEST(DualCertificate, Pair31PassesViaSwap) {
  const DualReport r = verify_pair({3, 1});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.pair, (std::pair{3, 1}));
}

TEST(DualCertificate, ComplementarySlacknessWithComparisonPoint) {
  // (Omega - M/2) rho = 0 on each block: the dual is tight at the comparison tester.
  for (const OrderedPair& p : {OrderedPair{1, 2}, OrderedPair{2, 3}, OrderedPair{3, 1}}) {
    const auto omega = certificate_omega(p);
    const TesterPoint t = comparison_tester_choi(p);
    EXPECT_LE(compose(omega - 0.5 * build_M(p.first), t.rho1).matrix().norm(), 1e-12);
    EXPECT_LE(compose(omega - 0.5 * build_M(p.second), t.rho2).matrix().norm(), 1e-12);
  }
}

TEST(DualCertificate, DualValueMatchesOmegaTrace) {
  // tr Omega = tr(Omega' (x) I_5) = 2 tr Omega' = 2 * 4 * lambda.
  for (const OrderedPair& p : {OrderedPair{1, 2}, OrderedPair{2, 3}}) {
    EXPECT_NEAR(certificate_omega(p).trace().real(), 7.0, 1e-12);
  }
}

TEST(DualCertificate, TamperedPrimeFailsWithDerivedResiduals) {
  // Raising the singlet/singlet weight by 0.1 adds 0.1 P_s(1,3) (x) P_s(2b,4b): the d5 residual is
  // 0.1 * ||P_s(1,3)||_F = 0.1 and the d4 residual is 0.1 * ||P_s (x) P_s (x) I_5||_F = 0.1 sqrt2.
  const DualReport r = verify_pair({1, 2}, tampered_12());
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.check("d5").pass);
  EXPECT_NEAR(r.check("d5").value, 0.1, 1e-12);
  EXPECT_NEAR(r.check("d4").value, 0.1 * std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(r.check("d1").pass);
}

TEST(DualCertificate, UnexchangedMixedTablesFailD4) {
  // With the two mixed-spin tables of the {1,2} certificate assigned the other way around,
  // the marginal condition breaks by exactly 1/4.
  DualCertificate c = published_certificate({1, 2});
  std::swap(c.three_half_half, c.half_three_half);
  const DualReport r = verify_pair({1, 2}, c);
  EXPECT_FALSE(r.check("d4").pass);
  EXPECT_NEAR(r.check("d4").value, 0.25, 1e-12);
}

TEST(DualCertificate, ImpossibleToleranceFails) {
  const DualReport r = verify_pair({1, 2}, DualTolerances{kPsdTol, 1e-300});
  EXPECT_FALSE(r.pass);
}

TEST(DualCertificate, WrongPairIsRejected) {
  EXPECT_THROW(verify_pair({2, 3}, published_certificate({1, 2})), std::invalid_argument);
  EXPECT_THROW(published_certificate({1, 3}), std::invalid_argument);
  EXPECT_THROW(transfer_certificate_swap(published_certificate({2, 3}), build_M(3), build_M(1)), std::invalid_argument);
}

TEST(DualCertificate, DocumentRoundTrip) {
  for (const auto& p : {std::pair{1, 2}, std::pair{2, 3}}) {
    const DualCertificate c = published_certificate(p);
    const nlohmann::json j = to_json(c);
    const DualCertificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(back.half_half, c.half_half);
    EXPECT_EQ(back.prime, c.prime);
  }
  EXPECT_EQ(to_json(published_certificate({1, 2}))["half_three_half"][0][1], "-1/(16*sqrt3)");
  EXPECT_EQ(to_json(published_certificate({1, 2}))["lambda"], "7/8");
}

TEST(DualCertificate, DocumentRejectsMalformed) {
  nlohmann::json j = to_json(published_certificate({1, 2}));
  j["prime"].erase(0);
  EXPECT_THROW(certificate_from_json(j), std::invalid_argument);
  j = to_json(published_certificate({1, 2}));
  j["half_half"][0][0] = "1/x";
  EXPECT_THROW(certificate_from_json(j), std::invalid_argument);
}

TEST(DualCertificate, ReportSerializes) {
  const nlohmann::json j = to_json(verify_pair({2, 3}));
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["checks"].size(), 5u);
  EXPECT_EQ(j["checks"][3]["name"], "d4");
}
