#pragma once

// Glue between the certificate, solver and simulator layers.

#include "qdisc/admm_solver.hpp"
#include "qdisc/certificate.hpp"
#include "qdisc/primal_sdp.hpp"

namespace qdisc {

/// Verifies a certificate for an ordered pair. Pair (3,1) takes a {1,2}
/// certificate through the 1<->3, 2b<->4b relabeling.
inline DualReport verify_pair(OrderedPair pair, const DualCertificate& cert, DualTolerances tol = {}) {
  require_valid_pair(pair);
  if (pair == OrderedPair{3, 1}) return transfer_certificate_swap(cert, build_M(3), build_M(1), tol);
  if (cert.pair != pair) {
    throw std::invalid_argument("certificate is for pair " + pair_tag(cert.pair) + ", requested " + pair_tag(pair));
  }
  return verify_dual(cert, build_M(pair.first), build_M(pair.second), tol);
}

inline DualReport verify_pair(OrderedPair pair, DualTolerances tol = {}) {
  require_valid_pair(pair);
  return verify_pair(pair, published_certificate(pair == OrderedPair{3, 1} ? OrderedPair{1, 2} : pair), tol);
}

/// Omega of the printed certificate for this pair, on the canonical layout.
inline LabeledOperator certificate_omega(OrderedPair pair) {
  require_valid_pair(pair);
  if (pair == OrderedPair{3, 1}) return permute_registers(assemble_omega(published_certificate({1, 2})), swap_13_relabeling());
  return assemble_omega(published_certificate(pair));
}

enum class WarmStartKind { comparison, mixed, none };

inline WarmStartKind parse_warm_start(const std::string& s) {
  if (s == "comparison") return WarmStartKind::comparison;
  if (s == "mixed") return WarmStartKind::mixed;
  if (s == "none") return WarmStartKind::none;
  throw std::invalid_argument("warm start must be comparison, mixed or none, got '" + s + "'");
}

inline std::string to_string(WarmStartKind k) {
  switch (k) {
    case WarmStartKind::comparison: return "comparison";
    case WarmStartKind::mixed: return "mixed";
    case WarmStartKind::none: return "none";
  }
  return "?";
}

/// comparison: the comparison tester with the certificate dual, a fixed point
/// of the iteration. mixed: I/16 in each block (also the default cold start).
/// none: all-zero blocks.
inline std::optional<WarmStart> make_warm_start(WarmStartKind kind, OrderedPair pair, double trace_rhs = 1.0) {
  switch (kind) {
    case WarmStartKind::comparison: {
      TesterPoint p = comparison_tester_choi(pair);
      return WarmStart{{trace_rhs * p.rho1, trace_rhs * p.rho2}, certificate_omega(pair)};
    }
    case WarmStartKind::mixed:
      return WarmStart{maximally_mixed_point(trace_rhs), std::nullopt};
    case WarmStartKind::none: {
      const LabeledOperator z = LabeledOperator::zero(canonical_layout());
      return WarmStart{{z, z}, std::nullopt};
    }
  }
  return std::nullopt;
}

}  // namespace qdisc
