#pragma once

// Dual certificates for the tester SDP, their assembly over the SU(2) irrep
// bases, and the feasibility verifier.
//
// Block conventions for operators on trio U = (1,3,5) and trio B = (2b,4b,6b):
//   half_half(2*lU + lB, 2*lU' + lB')  multiplies  E_U(lU,lU') (x) E_B(lB,lB'),
//       E(l,l') = sum_k |v_{1/2,k,l}><v_{1/2,k,l'}|
//   three_half_half(l,l')  multiplies  P_U^{3/2} (x) E_B(l,l')
//   half_three_half(l,l')  multiplies  E_U(l,l') (x) P_B^{3/2}
//   three_half_three_half  multiplies  P_U^{3/2} (x) P_B^{3/2}

#include "qdisc/exact_value.hpp"
#include "qdisc/haar.hpp"
#include "qdisc/irrep_basis.hpp"
#include "qdisc/labeled_operator.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdisc {

struct IrrepBlocks {
  Eigen::Matrix4d half_half = Eigen::Matrix4d::Zero();
  Eigen::Matrix2d three_half_half = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d half_three_half = Eigen::Matrix2d::Zero();
  double three_half_three_half = 0.0;
};

inline const std::vector<Register>& unbarred_trio() {
  static const std::vector<Register> t{Register::r1, Register::r3, Register::r5};
  return t;
}
inline const std::vector<Register>& barred_trio() {
  static const std::vector<Register> t{Register::r2b, Register::r4b, Register::r6b};
  return t;
}

/// Operator on the canonical layout built from irrep blocks (see file header).
inline LabeledOperator assemble_irrep_operator(const IrrepBlocks& b) {
  constexpr double kSymTol = 1e-14;
  if ((b.half_half - b.half_half.transpose()).cwiseAbs().maxCoeff() > kSymTol ||
      (b.three_half_half - b.three_half_half.transpose()).cwiseAbs().maxCoeff() > kSymTol ||
      (b.half_three_half - b.half_three_half.transpose()).cwiseAbs().maxCoeff() > kSymTol) {
    throw std::invalid_argument("assemble_irrep_operator: blocks must be Hermitian");
  }
  const auto vu = three_qubit_basis(unbarred_trio());
  const auto vb = three_qubit_basis(barred_trio());

  RMatrix m = RMatrix::Zero(64, 64);
  for (int lu = 0; lu < 2; ++lu)
    for (int lb = 0; lb < 2; ++lb)
      for (int lup = 0; lup < 2; ++lup)
        for (int lbp = 0; lbp < 2; ++lbp) {
          const double c = b.half_half(2 * lu + lb, 2 * lup + lbp);
          if (c != 0.0) m += c * kernels::kron<double>(vu.half_transition(lu, lup), vb.half_transition(lb, lbp));
        }
  const Mat8 pu = vu.three_half_projector();
  const Mat8 pb = vb.three_half_projector();
  for (int l = 0; l < 2; ++l)
    for (int lp = 0; lp < 2; ++lp) {
      if (b.three_half_half(l, lp) != 0.0) m += b.three_half_half(l, lp) * kernels::kron<double>(pu, vb.half_transition(l, lp));
      if (b.half_three_half(l, lp) != 0.0) m += b.half_three_half(l, lp) * kernels::kron<double>(vu.half_transition(l, lp), pb);
    }
  m += b.three_half_three_half * kernels::kron<double>(pu, pb);

  const SystemLayout trio_order{Register::r1, Register::r3, Register::r5, Register::r2b, Register::r4b, Register::r6b};
  return reorder(LabeledOperator(trio_order, m), canonical_layout());
}

/// M<1> from its irrep coefficient table.
inline LabeledOperator assemble_M1_from_table() {
  IrrepBlocks b;
  b.half_half.diagonal() << 0.5, 0.0, 0.0, 1.0 / 6.0;
  b.three_half_half.diagonal() << 0.0, 1.0 / 6.0;
  b.half_three_half.diagonal() << 0.0, 1.0 / 6.0;
  b.three_half_three_half = 1.0 / 6.0;
  return assemble_irrep_operator(b);
}

template <std::size_t N>
using ExactMatrix = std::array<std::array<ExactValue, N>, N>;

/// Dual-feasible point (lambda, Omega, Omega') for an unordered pair {j, j'}.
struct DualCertificate {
  std::pair<int, int> pair{1, 2};
  ExactValue lambda;
  ExactMatrix<4> half_half{};
  ExactMatrix<2> three_half_half{};
  ExactMatrix<2> half_three_half{};
  ExactValue three_half_three_half;
  /// Omega' weights on w-sectors of pairs (1,3) and (2b,4b):
  /// [0] singlet/singlet, [1] singlet/triplet, [2] triplet/singlet, [3] triplet/triplet.
  std::array<ExactValue, 4> prime{};

  IrrepBlocks blocks() const {
    IrrepBlocks b;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b.half_half(i, j) = half_half[i][j].value();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        b.three_half_half(i, j) = three_half_half[i][j].value();
        b.half_three_half(i, j) = half_three_half[i][j].value();
      }
    b.three_half_three_half = three_half_three_half.value();
    return b;
  }
};

/// The two explicit certificates, lambda = 7/8.
///
/// For {1,2} the printed (3/2,1/2) and (1/2,3/2) tables are stored with the
/// spin-3/2 factor on the barred trio and the unbarred trio respectively; the
/// opposite assignment violates tr_6b(Omega) = Omega' (x) I_5. The {2,3}
/// tables are the same under either assignment.
inline DualCertificate published_certificate(std::pair<int, int> pair) {
  const auto z = frac(0);
  DualCertificate c;
  c.lambda = frac(7, 8);
  if (pair == std::pair{1, 2}) {
    c.pair = {1, 2};
    const auto a = frac_sqrt3(1, 8);
    c.half_half = {{{frac(1, 4), z, z, z},
                    {z, frac(1, 16), frac(1, 16), a},
                    {z, frac(1, 16), frac(1, 16), a},
                    {z, a, a, frac(1, 6)}}};
    c.half_three_half = {{{frac(1, 16), frac_sqrt3(-1, 16)}, {frac_sqrt3(-1, 16), frac(5, 48)}}};
    c.three_half_half = {{{frac(1, 16), frac_sqrt3(-1, 16)}, {frac_sqrt3(-1, 16), frac(1, 6)}}};
    c.three_half_three_half = frac(5, 48);
    c.prime = {frac(1, 2), frac(1, 8), frac(1, 8), frac(1, 4)};
    return c;
  }
  if (pair == std::pair{2, 3}) {
    c.pair = {2, 3};
    c.half_half = {{{frac(1, 16), z, z, frac(1, 16)},
                    {z, frac(1, 8), frac(1, 8), z},
                    {z, frac(1, 8), frac(1, 8), z},
                    {frac(1, 16), z, z, frac(11, 48)}}};
    c.three_half_half = {{{frac(1, 8), z}, {z, frac(1, 24)}}};
    c.half_three_half = {{{frac(1, 8), z}, {z, frac(1, 24)}}};
    c.three_half_three_half = frac(13, 96);
    c.prime = {frac(1, 8), frac(1, 4), frac(1, 4), frac(5, 24)};
    return c;
  }
  throw std::invalid_argument("published_certificate: pair must be {1,2} or {2,3}");
}

inline LabeledOperator assemble_omega(const DualCertificate& cert) { return assemble_irrep_operator(cert.blocks()); }

/// Omega' on layout (1, 2b, 3, 4b).
inline LabeledOperator assemble_omega_prime(const DualCertificate& cert) {
  const auto w13 = two_qubit_basis({Register::r1, Register::r3});
  const auto w24 = two_qubit_basis({Register::r2b, Register::r4b});
  const Eigen::Matrix4d s13 = w13.singlet_projector(), t13 = w13.triplet_projector();
  const Eigen::Matrix4d s24 = w24.singlet_projector(), t24 = w24.triplet_projector();
  RMatrix m = cert.prime[0].value() * kernels::kron<double>(s13, s24) + cert.prime[1].value() * kernels::kron<double>(s13, t24) +
              cert.prime[2].value() * kernels::kron<double>(t13, s24) + cert.prime[3].value() * kernels::kron<double>(t13, t24);
  const SystemLayout pair_order{Register::r1, Register::r3, Register::r2b, Register::r4b};
  return reorder(LabeledOperator(pair_order, m), SystemLayout{Register::r1, Register::r2b, Register::r3, Register::r4b});
}

struct CheckResult {
  std::string name;
  std::string description;
  double value = 0.0;      // min eigenvalue (PSD checks) or Frobenius residual (equalities)
  double tolerance = 0.0;
  bool pass = false;
};

struct DualReport {
  std::pair<int, int> pair{0, 0};
  double lambda = 0.0;
  std::vector<CheckResult> checks;
  bool pass = false;

  const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw std::out_of_range("no check named " + name);
  }
};

struct DualTolerances {
  double psd = kPsdTol;
  double eq = 1e-10;
};

/// Checks (d1)-(d5) for explicit operators.
inline DualReport verify_dual_operators(std::pair<int, int> pair, const LabeledOperator& omega, const LabeledOperator& omega_prime,
                                        double lambda, const LabeledOperator& m_j, const LabeledOperator& m_jp,
                                        DualTolerances tol = {}) {
  const SystemLayout canon = canonical_layout();
  const SystemLayout prime_layout{Register::r1, Register::r2b, Register::r3, Register::r4b};
  if (omega.layout() != canon || m_j.layout() != canon || m_jp.layout() != canon) {
    throw std::invalid_argument("verify_dual: Omega and M operators must be on the canonical layout");
  }
  if (omega_prime.layout() != prime_layout) throw std::invalid_argument("verify_dual: Omega' must be on layout (1,2b,3,4b)");

  DualReport r;
  r.pair = pair;
  r.lambda = lambda;

  const double min_omega = min_eigenvalue(omega);
  const double min_prime = min_eigenvalue(omega_prime);
  {
    CheckResult c{"d1", "Omega >= 0, Omega' >= 0, lambda >= 0", std::min({min_omega, min_prime, lambda}), tol.psd, false};
    c.pass = min_omega >= -tol.psd && min_prime >= -tol.psd && lambda >= 0.0;
    r.checks.push_back(c);
  }
  auto psd_check = [&](const char* name, const char* desc, const LabeledOperator& m) {
    const double v = min_eigenvalue(omega - 0.5 * m);
    r.checks.push_back({name, desc, v, tol.psd, v >= -tol.psd});
  };
  psd_check("d2", "Omega - M<j>/2 >= 0", m_j);
  psd_check("d3", "Omega - M<j'>/2 >= 0", m_jp);
  {
    const LabeledOperator lhs = partial_trace(omega, {Register::r6b});
    const LabeledOperator rhs = kron(omega_prime, LabeledOperator::identity(SystemLayout{Register::r5}));
    const double v = frobenius_distance(lhs, rhs);
    r.checks.push_back({"d4", "tr_6b Omega = Omega' (x) I_5", v, tol.eq, v <= tol.eq});
  }
  {
    const LabeledOperator lhs = partial_trace(omega_prime, {Register::r2b, Register::r4b});
    const LabeledOperator rhs = lambda * LabeledOperator::identity(SystemLayout{Register::r1, Register::r3});
    const double v = frobenius_distance(lhs, rhs);
    r.checks.push_back({"d5", "tr_2b4b Omega' = lambda I_13", v, tol.eq, v <= tol.eq});
  }
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
  return r;
}

inline DualReport verify_dual(const DualCertificate& cert, const LabeledOperator& m_j, const LabeledOperator& m_jp,
                              DualTolerances tol = {}) {
  return verify_dual_operators(cert.pair, assemble_omega(cert), assemble_omega_prime(cert), cert.lambda.value(), m_j, m_jp, tol);
}

/// 1 <-> 3, 2b <-> 4b.
inline const Relabeling& swap_13_relabeling() {
  static const Relabeling r{{Register::r1, Register::r3}, {Register::r3, Register::r1},
                            {Register::r2b, Register::r4b}, {Register::r4b, Register::r2b}};
  return r;
}

/// Carries a {1,2} certificate to {3,1} by relabeling and verifies it against (M<3>, M<1>).
inline DualReport transfer_certificate_swap(const DualCertificate& cert, const LabeledOperator& m3, const LabeledOperator& m1,
                                            DualTolerances tol = {}) {
  if (cert.pair != std::pair{1, 2}) throw std::invalid_argument("transfer_certificate_swap: expects a {1,2} certificate");
  const LabeledOperator omega = permute_registers(assemble_omega(cert), swap_13_relabeling());
  const LabeledOperator omega_prime = permute_registers(assemble_omega_prime(cert), swap_13_relabeling());
  return verify_dual_operators({3, 1}, omega, omega_prime, cert.lambda.value(), m3, m1, tol);
}

// Certificate text document: every entry an exact string.

template <std::size_t N>
nlohmann::json exact_matrix_json(const ExactMatrix<N>& m) {
  auto rows = nlohmann::json::array();
  for (const auto& row : m) {
    auto r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(v.str());
    rows.push_back(r);
  }
  return rows;
}

template <std::size_t N>
ExactMatrix<N> exact_matrix_from_json(const nlohmann::json& j) {
  ExactMatrix<N> m{};
  if (j.size() != N) throw std::invalid_argument("certificate block has wrong row count");
  for (std::size_t i = 0; i < N; ++i) {
    if (j[i].size() != N) throw std::invalid_argument("certificate block has wrong column count");
    for (std::size_t k = 0; k < N; ++k) m[i][k] = ExactValue::parse(j[i][k].get<std::string>());
  }
  return m;
}

inline nlohmann::json to_json(const DualCertificate& c) {
  nlohmann::json j;
  j["pair"] = {c.pair.first, c.pair.second};
  j["lambda"] = c.lambda.str();
  j["half_half"] = exact_matrix_json(c.half_half);
  j["three_half_half"] = exact_matrix_json(c.three_half_half);
  j["half_three_half"] = exact_matrix_json(c.half_three_half);
  j["three_half_three_half"] = c.three_half_three_half.str();
  j["prime"] = nlohmann::json::array();
  for (const auto& v : c.prime) j["prime"].push_back(v.str());
  return j;
}

inline DualCertificate certificate_from_json(const nlohmann::json& j) {
  DualCertificate c;
  c.pair = {j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>()};
  c.lambda = ExactValue::parse(j.at("lambda").get<std::string>());
  c.half_half = exact_matrix_from_json<4>(j.at("half_half"));
  c.three_half_half = exact_matrix_from_json<2>(j.at("three_half_half"));
  c.half_three_half = exact_matrix_from_json<2>(j.at("half_three_half"));
  c.three_half_three_half = ExactValue::parse(j.at("three_half_three_half").get<std::string>());
  const auto& p = j.at("prime");
  if (p.size() != 4) throw std::invalid_argument("certificate: prime must have four entries");
  for (std::size_t i = 0; i < 4; ++i) c.prime[i] = ExactValue::parse(p[i].get<std::string>());
  return c;
}

inline nlohmann::json to_json(const DualReport& r) {
  nlohmann::json j;
  j["pair"] = {r.pair.first, r.pair.second};
  j["lambda"] = r.lambda;
  j["pass"] = r.pass;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"description", c.description}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return j;
}

}  // namespace qdisc
