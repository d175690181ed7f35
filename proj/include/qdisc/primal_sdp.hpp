#pragma once

// Primal tester SDP over two 64x64 blocks rho^(1), rho^(2) on the canonical
// layout (1, 2b, 3, 4b, 5, 6b):
//
//   maximize   1/2 [tr(M<j> rho^(1)) + tr(M<j'> rho^(2))]
//   subject to rho^(g) >= 0
//              (E1) S := rho^(1) + rho^(2) = rho{1} (x) I_6b,       rho{1} := tr_6b(S) / 2
//              (E2) tr_5 rho{1} = rho{2} (x) I_2b (x) I_4b,       rho{2} := tr_{2b,4b,5}(rho{1}) / 4
//              (E3) tr rho{2} = trace_rhs (1 for the physical problem)
//
// All equality constraints act on S only. With Q_A(X) := tr_A(X)/d_A (x) I_A,
// which are commuting orthogonal projectors, the homogeneous solution space is
// the range of Q_6b - Q_{5,6b} + Q_{2b,4b,5,6b}; (E3) then fixes tr S = 8 * trace_rhs.

#include "qdisc/haar.hpp"
#include "qdisc/labeled_operator.hpp"
#include "qdisc/tensor_kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdisc {

inline constexpr double kOptimalEsp = 7.0 / 8.0;

using OrderedPair = std::pair<int, int>;

inline void require_valid_pair(OrderedPair p) {
  if (p != OrderedPair{1, 2} && p != OrderedPair{2, 3} && p != OrderedPair{3, 1}) {
    throw std::invalid_argument("pair must be (1,2), (2,3) or (3,1), got (" + std::to_string(p.first) + "," +
                                std::to_string(p.second) + ")");
  }
}

inline std::string pair_tag(OrderedPair p) { return std::to_string(p.first) + std::to_string(p.second); }

inline OrderedPair parse_pair(const std::string& s) {
  if (s == "12") return {1, 2};
  if (s == "23") return {2, 3};
  if (s == "31") return {3, 1};
  throw std::invalid_argument("pair must be one of 12, 23, 31, got '" + s + "'");
}

struct SdpProblem {
  OrderedPair pair{1, 2};
  /// Objective blocks C_g = M<j_g> / 2, so the objective is sum_g tr(C_g rho^(g)).
  std::array<LabeledOperator, 2> objective;
  double trace_rhs = 1.0;
};

inline SdpProblem assemble_primal(OrderedPair pair, double trace_rhs = 1.0) {
  require_valid_pair(pair);
  SdpProblem p;
  p.pair = pair;
  p.objective = {0.5 * build_M(pair.first), 0.5 * build_M(pair.second)};
  p.trace_rhs = trace_rhs;
  return p;
}

namespace comb {

inline constexpr std::size_t kQubits = 6;
// canonical positions: 1->0, 2b->1, 3->2, 4b->3, 5->4, 6b->5
inline constexpr std::array<std::size_t, 1> kOut6{5};
inline constexpr std::array<std::size_t, 2> kOut56{4, 5};
inline constexpr std::array<std::size_t, 4> kOut2456{1, 3, 4, 5};

/// Orthogonal projection of S onto the homogeneous comb subspace.
template <typename Scalar>
kernels::Matrix<Scalar> project_homogeneous(const kernels::Matrix<Scalar>& s) {
  return kernels::replace_with_maximally_mixed<Scalar>(s, kQubits, kOut6) -
         kernels::replace_with_maximally_mixed<Scalar>(s, kQubits, kOut56) +
         kernels::replace_with_maximally_mixed<Scalar>(s, kQubits, kOut2456);
}

/// Orthogonal projection of S onto {S : (E1), (E2), tr S = 8 * trace_rhs}.
template <typename Scalar>
kernels::Matrix<Scalar> project_affine(const kernels::Matrix<Scalar>& s, double trace_rhs) {
  kernels::Matrix<Scalar> p = project_homogeneous<Scalar>(s);
  const Scalar shift = (Scalar(8.0 * trace_rhs) - p.trace()) / Scalar(64.0);
  p.diagonal().array() += shift;
  return p;
}

}  // namespace comb

/// Number of independent real equality constraints on (rho^(1), rho^(2)),
/// counted as dim Herm(64) minus the dimension of the affine solution set.
/// The subspace dimension is the trace of the projector superoperator over an
/// orthonormal Hermitian operator basis.
inline std::size_t independent_constraint_count() {
  constexpr Eigen::Index d = 64;
  const double r2 = 1.0 / std::sqrt(2.0);
  double dim_subspace = 0.0;
  RMatrix b = RMatrix::Zero(d, d);
  auto accumulate = [&] { dim_subspace += (b.cwiseProduct(comb::project_homogeneous<double>(b))).sum(); };
  for (Eigen::Index i = 0; i < d; ++i) {
    b.setZero();
    b(i, i) = 1.0;
    accumulate();
    for (Eigen::Index j = i + 1; j < d; ++j) {
      b.setZero();
      b(i, j) = b(j, i) = r2;  // (E_ij + E_ji)/sqrt2
      accumulate();
      b(j, i) = -r2;  // i(E_ij - E_ji)/sqrt2 pairs with the real antisymmetric part
      accumulate();
    }
  }
  const auto affine_dim = static_cast<std::size_t>(std::llround(dim_subspace)) - 1;
  return static_cast<std::size_t>(d * d) - affine_dim;
}

struct PrimalFeasibility {
  double e1 = 0.0;  // Frobenius
  double e2 = 0.0;  // Frobenius
  double e3 = 0.0;  // absolute
  std::array<double, 2> min_eigenvalue{0.0, 0.0};
  bool pass = false;

  double max_residual() const { return std::max({e1, e2, e3}); }
};

/// rho{1} = tr_6b(S)/2 on (1,2b,3,4b,5).
inline LabeledOperator first_marginal(const LabeledOperator& rho1, const LabeledOperator& rho2) {
  return 0.5 * partial_trace(rho1 + rho2, {Register::r6b});
}

/// rho{2} = tr_{2b,4b,5}(rho{1})/4 on (1,3).
inline LabeledOperator second_marginal(const LabeledOperator& first) {
  return 0.25 * partial_trace(first, {Register::r2b, Register::r4b, Register::r5});
}

inline PrimalFeasibility check_primal_feasibility(const LabeledOperator& rho1, const LabeledOperator& rho2, double tol,
                                                  double trace_rhs = 1.0) {
  const SystemLayout canon = canonical_layout();
  if (rho1.layout() != canon || rho2.layout() != canon) {
    throw std::invalid_argument("check_primal_feasibility: blocks must be on the canonical layout");
  }
  PrimalFeasibility f;
  const LabeledOperator s = rho1 + rho2;
  const LabeledOperator r1 = first_marginal(rho1, rho2);
  f.e1 = frobenius_distance(s, kron(r1, LabeledOperator::identity(SystemLayout{Register::r6b})));

  const LabeledOperator r2 = second_marginal(r1);
  const LabeledOperator lhs = partial_trace(r1, {Register::r5});
  const LabeledOperator rhs = reorder(kron(r2, LabeledOperator::identity(SystemLayout{Register::r2b, Register::r4b})), lhs.layout());
  f.e2 = frobenius_distance(lhs, rhs);
  f.e3 = std::abs(r2.trace() - Complex(trace_rhs, 0.0));

  f.min_eigenvalue = {min_eigenvalue(rho1), min_eigenvalue(rho2)};
  f.pass = f.max_residual() <= tol && f.min_eigenvalue[0] >= -tol && f.min_eigenvalue[1] >= -tol;
  return f;
}

/// 1/2 [tr(M<j> rho^(1)) + tr(M<j'> rho^(2))].
inline double objective_esp(const LabeledOperator& rho1, const LabeledOperator& rho2, const LabeledOperator& m_j,
                            const LabeledOperator& m_jp) {
  const Complex v = 0.5 * (trace_product(m_j, rho1) + trace_product(m_jp, rho2));
  if (std::abs(v.imag()) > 1e-10) throw std::domain_error("objective_esp: imaginary part " + std::to_string(v.imag()));
  return v.real();
}

inline double objective_esp(const LabeledOperator& rho1, const LabeledOperator& rho2, OrderedPair pair) {
  return objective_esp(rho1, rho2, build_M(pair.first), build_M(pair.second));
}

struct TesterPoint {
  LabeledOperator rho1;
  LabeledOperator rho2;
};

/// Random guessing: rho^(g) = trace_rhs * I / 16.
inline TesterPoint maximally_mixed_point(double trace_rhs = 1.0) {
  const LabeledOperator half = (trace_rhs / 16.0) * LabeledOperator::identity(canonical_layout());
  return {half, half};
}

/// Comparison protocol as a fixed-order tester: a singlet is fed into the
/// target slot and the sample-1 slot, the other sample slot gets I/2, and the
/// two outputs are measured singlet (guess 1) versus triplet (guess 2).
inline TesterPoint comparison_tester_choi(OrderedPair pair) {
  require_valid_pair(pair);
  if (pair == OrderedPair{3, 1}) {
    const TesterPoint base = comparison_tester_choi({1, 2});
    // Relabeling maps (M<1>, M<2>) to (M<1>, M<3>); exchange outcomes to pair with (M<3>, M<1>).
    Relabeling swap{{Register::r1, Register::r3}, {Register::r3, Register::r1},
                    {Register::r2b, Register::r4b}, {Register::r4b, Register::r2b}};
    return {permute_registers(base.rho2, swap), permute_registers(base.rho1, swap)};
  }
  // (1,2): target in slot 1, samples in 3 and 5. (2,3): target in slot 5, samples in 1 and 3.
  const bool target_first = pair == OrderedPair{1, 2};
  const Register in_a = Register::r1;
  const Register in_b = target_first ? Register::r3 : Register::r5;
  const Register unused_in = target_first ? Register::r5 : Register::r3;
  const Register out_a = Register::r2b;
  const Register out_b = target_first ? Register::r4b : Register::r6b;
  const Register unused_out = target_first ? Register::r6b : Register::r4b;

  const LabeledOperator prep = kron(singlet_projector(in_a, in_b), 0.5 * LabeledOperator::identity(SystemLayout{unused_in}));
  const LabeledOperator singlet = singlet_projector(out_a, out_b);
  const LabeledOperator triplet = LabeledOperator::identity(SystemLayout{out_a, out_b}) - singlet;
  const LabeledOperator idle = LabeledOperator::identity(SystemLayout{unused_out});
  return {canonicalize(kron(kron(prep, singlet), idle)), canonicalize(kron(kron(prep, triplet), idle))};
}

}  // namespace qdisc
