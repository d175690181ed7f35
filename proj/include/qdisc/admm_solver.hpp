#pragma once

// ADMM for the tester SDP. The splitting is
//   min  -<C, X> + 1_A(X) + 1_PSD(Z)   s.t.  X = Z
// over pairs X = (X_1, X_2). The X-step is the exact orthogonal projection onto
// the comb affine set (which constrains X_1 + X_2 only), the Z-step is
// eigenvalue clipping of each 64x64 block, and u is the scaled dual.

#include "qdisc/primal_sdp.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>

namespace qdisc {

struct WarmStart {
  TesterPoint primal;
  /// Dual operator Omega of a feasible dual point; sets u_g = -(Omega - C_g) / penalty.
  std::optional<LabeledOperator> omega;
};

struct IterationInfo {
  int iteration;
  double objective;
  double primal_residual;
  double dual_residual;
};

struct SolveParams {
  double tol_feas = 1e-8;
  double tol_obj = 1e-4;
  int max_iter = 50000;
  double penalty = 1.0;
  /// Rescale the penalty when primal and dual residuals drift apart by more than 10x.
  bool balance_residuals = false;
  std::optional<WarmStart> warm_start;
  std::function<void(const IterationInfo&)> on_iteration;
};

enum class SolveStatus { converged, max_iterations, diverged };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::diverged: return "diverged";
  }
  return "?";
}

struct SolveReport {
  OrderedPair pair{1, 2};
  double value = 0.0;
  double initial_value = 0.0;
  PrimalFeasibility feasibility;
  double primal_residual = 0.0;  // ||X - Z||
  double dual_residual = 0.0;
  double gap_to_optimum = 0.0;   // value - 7/8
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::max_iterations;
  std::string scalar_path;
  double wall_time_seconds = 0.0;
  TesterPoint solution;
};

namespace detail {

template <typename Scalar>
kernels::Matrix<Scalar> to_scalar_matrix(const LabeledOperator& x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x.real_matrix();
  } else {
    return x.matrix();
  }
}

template <typename Scalar>
LabeledOperator from_scalar_matrix(const kernels::Matrix<Scalar>& m) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return {canonical_layout(), RMatrix(m)};
  } else {
    return {canonical_layout(), CMatrix(m)};
  }
}

template <typename Scalar>
double real_inner(const kernels::Matrix<Scalar>& a, const kernels::Matrix<Scalar>& b) {
  return std::real((a.transpose().cwiseProduct(b)).sum());
}

template <typename Scalar>
kernels::Matrix<Scalar> project_psd(const kernels::Matrix<Scalar>& m) {
  const kernels::Matrix<Scalar> h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<kernels::Matrix<Scalar>> es(h);
  const auto clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Solves the problem with Scalar = double (real fast path, valid because all
/// data are real in the computational basis) or std::complex<double>.
template <typename Scalar = double>
SolveReport solve_sdp(const SdpProblem& problem, const SolveParams& params = {}) {
  using Mat = kernels::Matrix<Scalar>;
  const auto t0 = std::chrono::steady_clock::now();

  SolveReport rep;
  rep.pair = problem.pair;
  rep.scalar_path = std::is_same_v<Scalar, double> ? "real" : "complex";

  std::array<Mat, 2> c{detail::to_scalar_matrix<Scalar>(problem.objective[0]), detail::to_scalar_matrix<Scalar>(problem.objective[1])};
  double sigma = params.penalty;

  const TesterPoint start = params.warm_start ? params.warm_start->primal : maximally_mixed_point(problem.trace_rhs);
  std::array<Mat, 2> z{detail::to_scalar_matrix<Scalar>(start.rho1), detail::to_scalar_matrix<Scalar>(start.rho2)};
  std::array<Mat, 2> u{Mat::Zero(64, 64), Mat::Zero(64, 64)};
  if (params.warm_start && params.warm_start->omega) {
    const Mat omega = detail::to_scalar_matrix<Scalar>(*params.warm_start->omega);
    for (int g = 0; g < 2; ++g) u[g] = -(omega - c[g]) / sigma;
  }

  auto objective = [&](const std::array<Mat, 2>& p) { return detail::real_inner<Scalar>(c[0], p[0]) + detail::real_inner<Scalar>(c[1], p[1]); };
  rep.initial_value = objective(z);
  double prev_obj = rep.initial_value;
  std::array<Mat, 2> x;

  for (int k = 1; k <= params.max_iter; ++k) {
    std::array<Mat, 2> v{z[0] - u[0] + c[0] / sigma, z[1] - u[1] + c[1] / sigma};
    const Mat sum = v[0] + v[1];
    const Mat corr = (comb::project_affine<Scalar>(sum, problem.trace_rhs) - sum) * 0.5;
    x = {v[0] + corr, v[1] + corr};

    std::array<Mat, 2> z_next{detail::project_psd<Scalar>(x[0] + u[0]), detail::project_psd<Scalar>(x[1] + u[1])};
    const double r_prim = std::sqrt((x[0] - z_next[0]).squaredNorm() + (x[1] - z_next[1]).squaredNorm());
    const double r_dual = sigma * std::sqrt((z_next[0] - z[0]).squaredNorm() + (z_next[1] - z[1]).squaredNorm());
    z = std::move(z_next);
    for (int g = 0; g < 2; ++g) u[g] += x[g] - z[g];

    const double obj = objective(z);
    rep.iterations = k;
    rep.primal_residual = r_prim;
    rep.dual_residual = r_dual;
    if (params.on_iteration) params.on_iteration({k, obj, r_prim, r_dual});

    if (!std::isfinite(r_prim) || !std::isfinite(obj) || r_prim > 1e8) {
      rep.status = SolveStatus::diverged;
      break;
    }
    if (r_prim <= params.tol_feas && r_dual <= params.tol_feas && std::abs(obj - prev_obj) <= params.tol_obj) {
      rep.status = SolveStatus::converged;
      break;
    }
    prev_obj = obj;

    if (params.balance_residuals) {
      double scale = 1.0;
      if (r_prim > 10.0 * r_dual) scale = 2.0;
      else if (r_dual > 10.0 * r_prim) scale = 0.5;
      if (scale != 1.0) {
        sigma *= scale;
        for (auto& ug : u) ug /= scale;
      }
    }
  }

  rep.converged = rep.status == SolveStatus::converged;
  rep.solution = {detail::from_scalar_matrix<Scalar>(z[0]), detail::from_scalar_matrix<Scalar>(z[1])};
  rep.value = objective(z);
  rep.gap_to_optimum = rep.value - kOptimalEsp;
  rep.feasibility = check_primal_feasibility(rep.solution.rho1, rep.solution.rho2, std::max(params.tol_feas, 1e-7), problem.trace_rhs);
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qdisc
