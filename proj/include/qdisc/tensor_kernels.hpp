#pragma once

// Index-level kernels on plain Eigen matrices over n qubits. Position 0 is the
// most significant tensor factor. Templated on the scalar so the solver can run
// a real fast path through the same code as the complex operator algebra.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qdisc::kernels {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline std::size_t bit_mask(std::size_t n, std::size_t pos) { return std::size_t{1} << (n - 1 - pos); }

/// For each value of the sub-index over `positions` (in the given order), the
/// full-index bit pattern it sets.
inline std::vector<std::size_t> scatter_table(std::size_t n, std::span<const std::size_t> positions) {
  const std::size_t k = positions.size();
  std::vector<std::size_t> table(std::size_t{1} << k, 0);
  for (std::size_t v = 0; v < table.size(); ++v) {
    std::size_t full = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if (v & (std::size_t{1} << (k - 1 - b))) full |= bit_mask(n, positions[b]);
    }
    table[v] = full;
  }
  return table;
}

inline std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> positions) {
  std::vector<std::size_t> rest;
  for (std::size_t p = 0; p < n; ++p) {
    bool hit = false;
    for (auto q : positions) hit = hit || q == p;
    if (!hit) rest.push_back(p);
  }
  return rest;
}

/// Traces out `traced`; the kept positions keep their relative order.
template <typename Scalar>
Matrix<Scalar> partial_trace(const Matrix<Scalar>& m, std::size_t n, std::span<const std::size_t> traced) {
  const auto kept = complement(n, traced);
  const auto keep_tab = scatter_table(n, kept);
  const auto tr_tab = scatter_table(n, traced);
  const auto dk = static_cast<Eigen::Index>(keep_tab.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Scalar acc{0};
      for (auto t : tr_tab) acc += m(keep_tab[r] | t, keep_tab[c] | t);
      out(r, c) = acc;
    }
  }
  return out;
}

/// (tr_A m) / d_A (x) I_A, reassembled in the original factor order. This is
/// the orthogonal (Hilbert-Schmidt) projector onto operators acting trivially on A.
template <typename Scalar>
Matrix<Scalar> replace_with_maximally_mixed(const Matrix<Scalar>& m, std::size_t n,
                                            std::span<const std::size_t> traced) {
  const auto kept = complement(n, traced);
  const auto keep_tab = scatter_table(n, kept);
  const auto tr_tab = scatter_table(n, traced);
  const Matrix<Scalar> reduced = partial_trace<Scalar>(m, n, traced);
  const double inv_d = 1.0 / static_cast<double>(tr_tab.size());
  const auto dim = static_cast<Eigen::Index>(m.rows());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(dim, dim);
  for (std::size_t c = 0; c < keep_tab.size(); ++c) {
    for (std::size_t r = 0; r < keep_tab.size(); ++r) {
      const Scalar v = reduced(r, c) * inv_d;
      for (auto t : tr_tab) out(keep_tab[r] | t, keep_tab[c] | t) = v;
    }
  }
  return out;
}

/// Result factor k is source factor `source_of[k]`.
template <typename Scalar>
Matrix<Scalar> reorder(const Matrix<Scalar>& m, std::size_t n, std::span<const std::size_t> source_of) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> src(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (i & bit_mask(n, k)) s |= bit_mask(n, source_of[k]);
    }
    src[i] = s;
  }
  Matrix<Scalar> out(m.rows(), m.cols());
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) out(r, c) = m(src[r], src[c]);
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// m <- (I..U..I) m (I..U..I)^dagger with U acting on factor `pos`.
template <typename Scalar>
void conjugate_local_inplace(Matrix<Scalar>& m, std::size_t n, const Eigen::Matrix<Scalar, 2, 2>& u,
                             std::size_t pos) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t mask = bit_mask(n, pos);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const std::size_t j = i | mask;
    for (std::size_t c = 0; c < dim; ++c) {
      const Scalar a0 = m(i, c), a1 = m(j, c);
      m(i, c) = u(0, 0) * a0 + u(0, 1) * a1;
      m(j, c) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
  const Eigen::Matrix<Scalar, 2, 2> ud = u.adjoint();
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & mask) continue;
    const std::size_t d = c | mask;
    for (std::size_t r = 0; r < dim; ++r) {
      const Scalar a0 = m(r, c), a1 = m(r, d);
      m(r, c) = a0 * ud(0, 0) + a1 * ud(1, 0);
      m(r, d) = a0 * ud(0, 1) + a1 * ud(1, 1);
    }
  }
}

/// psi <- (I..U..I) psi.
template <typename Scalar>
void apply_local_inplace(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& psi, std::size_t n,
                         const Eigen::Matrix<Scalar, 2, 2>& u, std::size_t pos) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t mask = bit_mask(n, pos);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const std::size_t j = i | mask;
    const Scalar a0 = psi(i), a1 = psi(j);
    psi(i) = u(0, 0) * a0 + u(0, 1) * a1;
    psi(j) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

}  // namespace qdisc::kernels
