#pragma once

// Unitary comparison: a singlet is prepared across the compared sample's input
// and the target's input, both gates act, and the pair is measured singlet
// versus the triplet complement. Default convention compares sample 1 and
// guesses 1 on the singlet outcome; the mirrored convention uses sample 2.

#include "qdisc/haar.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace qdisc {

struct ProtocolInstance {
  UnitarySample u1;
  UnitarySample u2;
  int target = 1;

  ProtocolInstance(UnitarySample a, UnitarySample b, int t) : u1(std::move(a)), u2(std::move(b)), target(t) {
    if (t != 1 && t != 2) throw std::invalid_argument("target index must be 1 or 2, got " + std::to_string(t));
  }
};

enum class CompareConvention { sample1, sample2 };
enum class SimMode { exact, shots };

inline std::string to_string(CompareConvention c) { return c == CompareConvention::sample1 ? "sample1" : "sample2"; }
inline std::string to_string(SimMode m) { return m == SimMode::exact ? "exact" : "shots"; }

inline SimMode parse_sim_mode(const std::string& s) {
  if (s == "exact") return SimMode::exact;
  if (s == "shots") return SimMode::shots;
  throw std::invalid_argument("mode must be exact or shots, got '" + s + "'");
}

/// Probability of the singlet outcome after A (x) B acts on |psi->.
inline double singlet_outcome_prob(const Mat2& a, const Mat2& b) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd psi(0.0, s, -s, 0.0);
  Eigen::Matrix4cd ab;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ab.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  const Complex amp = psi.dot(ab * psi);
  return std::clamp(std::norm(amp), 0.0, 1.0);
}

inline double comparison_success_prob(const ProtocolInstance& inst, CompareConvention conv = CompareConvention::sample1) {
  const bool first = conv == CompareConvention::sample1;
  const UnitarySample& compared = first ? inst.u1 : inst.u2;
  const UnitarySample& target = inst.target == 1 ? inst.u1 : inst.u2;
  const double p_singlet = singlet_outcome_prob(compared.matrix(), target.matrix());
  const int singlet_guess = first ? 1 : 2;
  return inst.target == singlet_guess ? p_singlet : 1.0 - p_singlet;
}

/// ESP of one candidate pair: average over the target index.
inline double instance_esp(const UnitarySample& u1, const UnitarySample& u2, CompareConvention conv = CompareConvention::sample1) {
  return 0.5 * (comparison_success_prob({u1, u2, 1}, conv) + comparison_success_prob({u1, u2, 2}, conv));
}

/// Fraction of correct guesses over `shots` runs of a fixed instance.
inline double shot_success_frequency(const ProtocolInstance& inst, std::uint64_t shots, RngStream& rng,
                                     CompareConvention conv = CompareConvention::sample1) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double p = comparison_success_prob(inst, conv);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < shots; ++s) hits += rng.bernoulli(p) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(shots);
}

struct SimOptions {
  SimMode mode = SimMode::exact;
  unsigned threads = 1;
  CompareConvention convention = CompareConvention::sample1;
  /// Replace (U1, U2) by (W U1 V, W U2 V) with fresh Haar W, V per trial.
  bool random_frame = false;
};

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  SimOptions options;
  double mean_esp = 0.0;
  double std_error = 0.0;
  double elapsed_seconds = 0.0;
};

namespace detail {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;
};

inline Moments add_moments(const Moments& a, const Moments& b) { return {a.sum + b.sum, a.sum_sq + b.sum_sq, a.n + b.n}; }

inline Moments chunked_moments(std::uint64_t trials, std::uint64_t seed, unsigned threads,
                               const std::function<double(RngStream&)>& trial) {
  const RngStream root(seed);
  const std::function<Moments(const Chunk&)> work = [&](const Chunk& ch) {
    RngStream rng = root.derive(ch.index);
    Moments m;
    for (std::uint64_t t = ch.begin; t < ch.end; ++t) {
      const double x = trial(rng);
      m.sum += x;
      m.sum_sq += x * x;
      ++m.n;
    }
    return m;
  };
  return pairwise_reduce(run_chunks(make_chunks(trials), threads, work), add_moments);
}

}  // namespace detail

inline SimReport estimate_esp(std::uint64_t trials, std::uint64_t seed, const SimOptions& opt = {}) {
  if (trials < 1) throw std::invalid_argument("estimate_esp: trials must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  auto trial = [&opt](RngStream& rng) {
    UnitarySample u1 = sample_haar_su2(rng);
    UnitarySample u2 = sample_haar_su2(rng);
    if (opt.random_frame) {
      const UnitarySample w = sample_haar_su2(rng);
      const UnitarySample v = sample_haar_su2(rng);
      u1 = w * u1 * v;
      u2 = w * u2 * v;
    }
    if (opt.mode == SimMode::exact) return instance_esp(u1, u2, opt.convention);
    const bool ok1 = rng.bernoulli(comparison_success_prob({u1, u2, 1}, opt.convention));
    const bool ok2 = rng.bernoulli(comparison_success_prob({u1, u2, 2}, opt.convention));
    return 0.5 * (static_cast<double>(ok1) + static_cast<double>(ok2));
  };
  const detail::Moments m = detail::chunked_moments(trials, seed, opt.threads, trial);

  SimReport r;
  r.trials = trials;
  r.seed = seed;
  r.options = opt;
  const double n = static_cast<double>(m.n);
  r.mean_esp = m.sum / n;
  if (m.n > 1) {
    const double var = std::max(0.0, (m.sum_sq - n * r.mean_esp * r.mean_esp) / (n - 1.0));
    r.std_error = std::sqrt(var / n);
  }
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Monte Carlo estimate of E |<psi-| U1 (x) U2 |psi->|^2 over independent Haar U1, U2.
inline double haar_mean_overlap(std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
  if (trials < 1) throw std::invalid_argument("haar_mean_overlap: trials must be >= 1");
  const detail::Moments m = detail::chunked_moments(trials, seed, threads, [](RngStream& rng) {
    const UnitarySample u1 = sample_haar_su2(rng);
    const UnitarySample u2 = sample_haar_su2(rng);
    return singlet_outcome_prob(u1.matrix(), u2.matrix());
  });
  return m.sum / static_cast<double>(m.n);
}

}  // namespace qdisc
