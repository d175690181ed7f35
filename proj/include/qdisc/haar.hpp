#pragma once

#include "qdisc/labeled_operator.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdisc {

using Mat2 = Eigen::Matrix2cd;

/// A 2x2 special unitary matrix, checked on construction.
class UnitarySample {
 public:
  static constexpr double kTol = 1e-12;

  UnitarySample() : u_(Mat2::Identity()) {}
  explicit UnitarySample(const Mat2& u) : u_(u) {
    const double unitarity = (u_.adjoint() * u_ - Mat2::Identity()).cwiseAbs().maxCoeff();
    const double det_err = std::abs(u_.determinant() - Complex(1.0, 0.0));
    if (unitarity > kTol || det_err > kTol) {
      throw std::invalid_argument("not a special unitary (unitarity error " + std::to_string(unitarity) +
                                  ", det error " + std::to_string(det_err) + ")");
    }
  }

  /// Unit quaternion (a, b, c, d) -> [[a+ib, c+id], [-c+id, a-ib]].
  static UnitarySample from_quaternion(double a, double b, double c, double d) {
    Mat2 u;
    u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
    return UnitarySample(u);
  }

  const Mat2& matrix() const { return u_; }
  UnitarySample adjoint() const { return UnitarySample(Mat2(u_.adjoint())); }
  friend UnitarySample operator*(const UnitarySample& a, const UnitarySample& b) {
    return UnitarySample(Mat2(a.u_ * b.u_));
  }

 private:
  Mat2 u_;
};

/// Haar-uniform draw from SU(2): a normalized 4-vector of independent
/// standard normals is uniform on S^3, i.e. a uniform unit quaternion.
inline UnitarySample sample_haar_su2(RngStream& rng) {
  double q[4];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : q) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  return UnitarySample::from_quaternion(q[0] * inv, q[1] * inv, q[2] * inv, q[3] * inv);
}

inline LabeledOperator conjugate_local(const LabeledOperator& x, const UnitarySample& u, Register r) {
  CMatrix m = x.matrix();
  kernels::conjugate_local_inplace<Complex>(m, x.layout().size(), u.matrix(), x.layout().index_of(r));
  return {x.layout(), std::move(m)};
}

/// Integral over V of V_r x V_r^dagger = (I_r / 2) (x) tr_r(x), reassembled in x's order.
inline LabeledOperator one_register_twirl(const LabeledOperator& x, Register r) {
  const LabeledOperator reduced = partial_trace(x, {r});
  const LabeledOperator half_id = 0.5 * LabeledOperator::identity(SystemLayout{r});
  return reorder(kron(half_id, reduced), x.layout());
}

/// Integral over U of (U_r (x) U_s) x (U_r (x) U_s)^dagger.
///
/// The commutant of {U (x) U} on two qubits is span{I, S}, so the average is
/// I (x) G_I + S (x) G_S with G fixed by matching tr_P[x] and tr_P[S x]
/// (Gram matrix [[4, 2], [2, 4]]).
inline LabeledOperator collective_pair_twirl(const LabeledOperator& x, Register r, Register s) {
  if (r == s) throw std::invalid_argument("collective_pair_twirl: registers must differ");
  if (!x.layout().contains(r) || !x.layout().contains(s)) {
    throw std::invalid_argument("collective_pair_twirl: register not in layout " + x.layout().str());
  }

  std::vector<Register> rest;
  for (Register q : x.layout()) {
    if (q != r && q != s) rest.push_back(q);
  }
  const SystemLayout rest_layout(rest);
  std::vector<Register> work{r, s};
  work.insert(work.end(), rest.begin(), rest.end());
  const LabeledOperator y = reorder(x, SystemLayout(work));

  const LabeledOperator swap_full = kron(swap_operator(r, s), LabeledOperator::identity(rest_layout));
  const LabeledOperator tr_x = partial_trace(y, {r, s});
  const LabeledOperator tr_sx = partial_trace(compose(swap_full, y), {r, s});

  const LabeledOperator g_id = (1.0 / 6.0) * (2.0 * tr_x - tr_sx);
  const LabeledOperator g_swap = (1.0 / 6.0) * (2.0 * tr_sx - tr_x);

  const LabeledOperator out = kron(LabeledOperator::identity(SystemLayout{r, s}), g_id) + kron(swap_operator(r, s), g_swap);
  return reorder(out, x.layout());
}

/// Which slots share the collective unitary in M<j>.
struct MVariant {
  int index;
  Register pair_first;
  Register pair_second;
  Register independent;

  static MVariant of(int j) {
    switch (j) {
      case 1: return {1, Register::r1, Register::r3, Register::r5};
      case 2: return {2, Register::r1, Register::r5, Register::r3};
      case 3: return {3, Register::r3, Register::r5, Register::r1};
      default: throw std::invalid_argument("M variant index must be 1, 2 or 3, got " + std::to_string(j));
    }
  }
};

/// phi+_{1,2b} (x) phi+_{3,4b} (x) phi+_{5,6b} on the canonical layout.
inline LabeledOperator triple_max_entangled() {
  return kron(kron(max_entangled(Register::r1, Register::r2b), max_entangled(Register::r3, Register::r4b)),
              max_entangled(Register::r5, Register::r6b));
}

/// Haar-averaged Choi operator M<j> (64x64, canonical layout), evaluated exactly.
inline LabeledOperator build_M(const MVariant& v) {
  LabeledOperator m = collective_pair_twirl(triple_max_entangled(), v.pair_first, v.pair_second);
  return one_register_twirl(m, v.independent);
}

inline LabeledOperator build_M(int j) { return build_M(MVariant::of(j)); }

/// Monte Carlo estimate of M<j>: average of |Psi><Psi| with
/// Psi = (U on the pair, V on the independent slot) |phi+>^{(x)3}.
/// `sampler(rng)` supplies unitaries; chunk c uses substream c of `seed`.
template <std::invocable<RngStream&> Sampler>
LabeledOperator monte_carlo_M(const MVariant& v, std::uint64_t trials, std::uint64_t seed, Sampler sampler,
                              unsigned threads = 1) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_M: trials must be >= 1");
  const SystemLayout layout = canonical_layout();
  constexpr std::size_t n = 6;
  Eigen::VectorXcd base = Eigen::VectorXcd::Zero(64);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) base((a * 2 + a) * 16 + (b * 2 + b) * 4 + (c * 2 + c)) = 1.0;

  const auto pa = layout.index_of(v.pair_first);
  const auto pb = layout.index_of(v.pair_second);
  const auto pi = layout.index_of(v.independent);
  const RngStream root(seed);

  auto chunks = make_chunks(trials);
  std::function<CMatrix(const Chunk&)> work = [&](const Chunk& ch) {
    RngStream rng = root.derive(ch.index);
    constexpr Eigen::Index kBatch = 128;
    CMatrix acc = CMatrix::Zero(64, 64);
    CMatrix block(64, kBatch);
    Eigen::Index filled = 0;
    for (std::uint64_t t = ch.begin; t < ch.end; ++t) {
      const UnitarySample u = sampler(rng);
      const UnitarySample w = sampler(rng);
      Eigen::VectorXcd psi = base;
      kernels::apply_local_inplace<Complex>(psi, n, u.matrix(), pa);
      kernels::apply_local_inplace<Complex>(psi, n, u.matrix(), pb);
      kernels::apply_local_inplace<Complex>(psi, n, w.matrix(), pi);
      block.col(filled++) = psi;
      if (filled == kBatch) {
        acc.noalias() += block * block.adjoint();
        filled = 0;
      }
    }
    if (filled) acc.noalias() += block.leftCols(filled) * block.leftCols(filled).adjoint();
    return acc;
  };
  CMatrix sum = pairwise_reduce(run_chunks(chunks, threads, work), [](const CMatrix& a, const CMatrix& b) { return CMatrix(a + b); });
  sum /= static_cast<double>(trials);
  return {layout, std::move(sum)};
}

inline LabeledOperator monte_carlo_M(const MVariant& v, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
  return monte_carlo_M(v, trials, seed, [](RngStream& rng) { return sample_haar_su2(rng); }, threads);
}

}  // namespace qdisc
