#pragma once

#include "qdisc/labeled_operator.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qdisc {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

/// SU(2) irrep basis of three qubits: spin-1/2 vectors half[k][l] (k the
/// magnetic index, l the multiplicity label) and spin-3/2 vectors
/// three_half[k]. Coefficients are over the trio's tensor order, |0> = spin up.
struct ThreeQubitIrrepBasis {
  std::array<Register, 3> trio;
  std::array<std::array<Vec8, 2>, 2> half;
  std::array<Vec8, 4> three_half;

  /// sum_k |v_{1/2,k,l}><v_{1/2,k,l'}|
  Mat8 half_transition(int l, int lp) const {
    Mat8 m = Mat8::Zero();
    for (int k = 0; k < 2; ++k) m += half[k][l] * half[k][lp].transpose();
    return m;
  }
  Mat8 three_half_projector() const {
    Mat8 m = Mat8::Zero();
    for (const auto& v : three_half) m += v * v.transpose();
    return m;
  }
  std::vector<Vec8> all() const {
    return {half[0][0], half[1][0], half[0][1], half[1][1], three_half[0], three_half[1], three_half[2], three_half[3]};
  }
};

inline ThreeQubitIrrepBasis three_qubit_basis(const std::vector<Register>& trio) {
  if (trio.size() != 3) throw std::invalid_argument("three_qubit_basis: need exactly three registers");
  (void)SystemLayout{trio[0], trio[1], trio[2]};  // distinctness check

  auto ket = [](int bits) {
    Vec8 v = Vec8::Zero();
    v(bits) = 1.0;
    return v;
  };
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s23 = std::sqrt(2.0 / 3.0);
  const double s16 = std::sqrt(1.0 / 6.0);
  const double s13 = std::sqrt(1.0 / 3.0);

  ThreeQubitIrrepBasis b;
  b.trio = {trio[0], trio[1], trio[2]};
  b.half[0][0] = s2 * (ket(0b010) - ket(0b100));
  b.half[1][0] = s2 * (ket(0b011) - ket(0b101));
  b.half[0][1] = s23 * ket(0b001) - s16 * (ket(0b010) + ket(0b100));
  b.half[1][1] = -s23 * ket(0b110) + s16 * (ket(0b011) + ket(0b101));
  b.three_half[0] = ket(0b000);
  b.three_half[1] = s13 * (ket(0b010) + ket(0b001) + ket(0b100));
  b.three_half[2] = s13 * (ket(0b011) + ket(0b110) + ket(0b101));
  b.three_half[3] = ket(0b111);
  return b;
}

/// Singlet w0 and triplet w1[k] of two qubits.
struct TwoQubitIrrepBasis {
  std::array<Register, 2> pair;
  Vec4 singlet;
  std::array<Vec4, 3> triplet;

  Eigen::Matrix4d singlet_projector() const { return singlet * singlet.transpose(); }
  Eigen::Matrix4d triplet_projector() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (const auto& v : triplet) m += v * v.transpose();
    return m;
  }
};

inline TwoQubitIrrepBasis two_qubit_basis(const std::vector<Register>& pair) {
  if (pair.size() != 2) throw std::invalid_argument("two_qubit_basis: need exactly two registers");
  (void)SystemLayout{pair[0], pair[1]};
  const double s2 = 1.0 / std::sqrt(2.0);
  TwoQubitIrrepBasis b;
  b.pair = {pair[0], pair[1]};
  b.singlet << 0.0, s2, -s2, 0.0;
  b.triplet[0] << 1.0, 0.0, 0.0, 0.0;
  b.triplet[1] << 0.0, s2, s2, 0.0;
  b.triplet[2] << 0.0, 0.0, 0.0, 1.0;
  return b;
}

}  // namespace qdisc
