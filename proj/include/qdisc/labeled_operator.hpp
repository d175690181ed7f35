#pragma once

#include "qdisc/registers.hpp"
#include "qdisc/tensor_kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdisc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-9;

/// Dense complex square matrix over an ordered set of named qubit registers.
class LabeledOperator {
 public:
  LabeledOperator() = default;
  LabeledOperator(SystemLayout layout, CMatrix m) : layout_(std::move(layout)), m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(layout_.dim());
    if (m_.rows() != d || m_.cols() != d) {
      throw std::invalid_argument("matrix of size " + std::to_string(m_.rows()) + "x" +
                                  std::to_string(m_.cols()) + " does not match layout " + layout_.str());
    }
  }
  LabeledOperator(SystemLayout layout, const RMatrix& m) : LabeledOperator(std::move(layout), CMatrix(m.cast<Complex>())) {}

  static LabeledOperator identity(SystemLayout layout) {
    const auto d = static_cast<Eigen::Index>(layout.dim());
    return {std::move(layout), CMatrix(CMatrix::Identity(d, d))};
  }
  static LabeledOperator zero(SystemLayout layout) {
    const auto d = static_cast<Eigen::Index>(layout.dim());
    return {std::move(layout), CMatrix(CMatrix::Zero(d, d))};
  }

  const SystemLayout& layout() const { return layout_; }
  const CMatrix& matrix() const { return m_; }
  Eigen::Index side() const { return m_.rows(); }
  Complex trace() const { return m_.trace(); }

  /// max_ij |A - A^dagger|_ij
  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_error() <= tol; }
  double max_imag() const { return m_.imag().cwiseAbs().maxCoeff(); }

  /// Real part, after asserting the imaginary part is below `tol`.
  RMatrix real_matrix(double tol = kHermitianTol) const {
    if (max_imag() > tol) throw std::domain_error("operator expected real has imaginary part " + std::to_string(max_imag()));
    return m_.real();
  }

  LabeledOperator& operator+=(const LabeledOperator& o) {
    require_same_layout(o);
    m_ += o.m_;
    return *this;
  }
  LabeledOperator& operator-=(const LabeledOperator& o) {
    require_same_layout(o);
    m_ -= o.m_;
    return *this;
  }
  LabeledOperator& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }
  friend LabeledOperator operator+(LabeledOperator a, const LabeledOperator& b) { return a += b; }
  friend LabeledOperator operator-(LabeledOperator a, const LabeledOperator& b) { return a -= b; }
  friend LabeledOperator operator*(LabeledOperator a, Complex s) { return a *= s; }
  friend LabeledOperator operator*(Complex s, LabeledOperator a) { return a *= s; }
  friend LabeledOperator operator*(double s, LabeledOperator a) { return a *= Complex(s, 0.0); }
  friend LabeledOperator operator-(LabeledOperator a) { return a *= Complex(-1.0, 0.0); }

  void require_same_layout(const LabeledOperator& o) const {
    if (o.layout_ != layout_) {
      throw std::invalid_argument("layout mismatch: " + layout_.str() + " vs " + o.layout_.str());
    }
  }

 private:
  SystemLayout layout_;
  CMatrix m_;
};

/// Matrix product of two operators on the same layout.
inline LabeledOperator compose(const LabeledOperator& a, const LabeledOperator& b) {
  a.require_same_layout(b);
  return {a.layout(), CMatrix(a.matrix() * b.matrix())};
}

/// tr(A B) without forming the product.
inline Complex trace_product(const LabeledOperator& a, const LabeledOperator& b) {
  a.require_same_layout(b);
  return (a.matrix().transpose().cwiseProduct(b.matrix())).sum();
}

/// Unnormalized maximally entangled state sum_ij |i><j|_a (x) |i><j|_b.
inline LabeledOperator max_entangled(Register a, Register b) {
  SystemLayout layout{a, b};
  CMatrix m = CMatrix::Zero(4, 4);
  for (int i : {0, 3}) {
    for (int j : {0, 3}) m(i, j) = 1.0;
  }
  return {std::move(layout), std::move(m)};
}

/// |w0><w0| with |w0> = (|01> - |10>)/sqrt2.
inline LabeledOperator singlet_projector(Register a, Register b) {
  SystemLayout layout{a, b};
  CMatrix m = CMatrix::Zero(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  m(1, 2) = m(2, 1) = -0.5;
  return {std::move(layout), std::move(m)};
}

/// Swap operator on two registers.
inline LabeledOperator swap_operator(Register a, Register b) {
  SystemLayout layout{a, b};
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  return {std::move(layout), std::move(m)};
}

inline LabeledOperator kron(const LabeledOperator& x, const LabeledOperator& y) {
  std::vector<Register> regs = x.layout().registers();
  for (Register r : y.layout()) {
    if (x.layout().contains(r)) {
      throw std::invalid_argument("kron: register '" + std::string(to_string(r)) + "' appears in both factors");
    }
    regs.push_back(r);
  }
  return {SystemLayout(std::move(regs)), kernels::kron<Complex>(x.matrix(), y.matrix())};
}

inline LabeledOperator partial_trace(const LabeledOperator& x, const std::vector<Register>& out) {
  std::vector<std::size_t> positions;
  for (Register r : out) {
    const auto p = x.layout().index_of(r);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      throw std::invalid_argument("partial_trace: register listed twice");
    }
    positions.push_back(p);
  }
  std::vector<Register> kept;
  for (Register r : x.layout()) {
    if (std::find(out.begin(), out.end(), r) == out.end()) kept.push_back(r);
  }
  return {SystemLayout(std::move(kept)), kernels::partial_trace<Complex>(x.matrix(), x.layout().size(), positions)};
}

/// Same operator expressed over a different ordering of the same registers.
inline LabeledOperator reorder(const LabeledOperator& x, const SystemLayout& target) {
  if (!target.same_set(x.layout())) {
    throw std::invalid_argument("reorder: " + target.str() + " is not a permutation of " + x.layout().str());
  }
  if (target == x.layout()) return x;
  std::vector<std::size_t> source_of;
  for (Register r : target) source_of.push_back(x.layout().index_of(r));
  return {target, kernels::reorder<Complex>(x.matrix(), x.layout().size(), source_of)};
}

inline LabeledOperator canonicalize(const LabeledOperator& x) { return reorder(x, x.layout().canonical()); }

using Relabeling = std::map<Register, Register>;

/// Renames registers without touching the matrix. Unmapped registers keep
/// their name; the new names must be distinct.
inline LabeledOperator relabel(const LabeledOperator& x, const Relabeling& map) {
  for (const auto& [from, to] : map) {
    if (!x.layout().contains(from)) {
      throw std::invalid_argument("relabel: register '" + std::string(to_string(from)) + "' not in layout");
    }
  }
  std::vector<Register> regs;
  for (Register r : x.layout()) {
    auto it = map.find(r);
    regs.push_back(it == map.end() ? r : it->second);
  }
  return {SystemLayout(regs), x.matrix()};  // throws on collisions
}

/// Moves the content of register r to register map(r), keeping the layout order.
/// The map must permute the layout's own registers.
inline LabeledOperator permute_registers(const LabeledOperator& x, const Relabeling& map) {
  LabeledOperator y = relabel(x, map);
  if (!y.layout().same_set(x.layout())) {
    throw std::invalid_argument("permute_registers: map is not a permutation of " + x.layout().str());
  }
  return reorder(y, x.layout());
}

inline void require_hermitian(const LabeledOperator& x, const char* where) {
  if (!x.is_hermitian()) {
    throw std::domain_error(std::string(where) + ": operator is not Hermitian (error " +
                            std::to_string(x.hermiticity_error()) + ")");
  }
}

/// Ascending eigenvalues of a Hermitian operator.
inline std::vector<double> hermitian_eigenvalues(const LabeledOperator& x) {
  require_hermitian(x, "hermitian_eigenvalues");
  const CMatrix h = 0.5 * (x.matrix() + x.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double min_eigenvalue(const LabeledOperator& x) { return hermitian_eigenvalues(x).front(); }

inline bool is_psd(const LabeledOperator& x, double tol = kPsdTol) { return min_eigenvalue(x) >= -tol; }

inline double frobenius_distance(const LabeledOperator& x, const LabeledOperator& y) {
  x.require_same_layout(y);
  return (x.matrix() - y.matrix()).norm();
}

inline LabeledOperator transpose_computational(const LabeledOperator& x) {
  return {x.layout(), CMatrix(x.matrix().transpose())};
}

}  // namespace qdisc
