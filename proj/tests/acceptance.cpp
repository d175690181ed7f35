// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "qdisc/cli.hpp"
#include "qdisc/pipeline.hpp"
#include "qdisc/protocol_sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace qdisc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    notes_.push_back(std::string(ok ? "" : "!") + what);
  }

  bool finish() const {
    const bool ok = failures_.empty();
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id_ << ": " << title_ << "\n";
    for (const auto& n : notes_) std::cout << "        " << n << "\n";
    return ok;
  }

 private:
  int id_;
  std::string title_;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string num(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

const std::vector<OrderedPair> kPairs{{1, 2}, {2, 3}, {3, 1}};

bool criterion_1() {
  Criterion c(1, "dual certification (lambda = 7/8)");
  for (const auto& p : kPairs) {
    const auto t0 = Clock::now();
    const DualReport r = verify_pair(p);
    const double dt = seconds_since(t0);
    const double psd = std::min(r.check("d2").value, r.check("d3").value);
    const double eq = std::max(r.check("d4").value, r.check("d5").value);
    c.require(r.pass && std::abs(r.lambda - 0.875) == 0.0, "pair " + pair_tag(p) + " verified" + (p == OrderedPair{3, 1} ? " via swap" : ""));
    c.require(psd >= -1e-9, "pair " + pair_tag(p) + " min eig(Omega - M/2) = " + num(psd) + " >= -1e-9");
    c.require(eq <= 1e-10, "pair " + pair_tag(p) + " d4/d5 residual = " + num(eq) + " <= 1e-10");
    c.require(dt < 5.0, "pair " + pair_tag(p) + " runtime " + num(dt) + " s < 5 s");
  }
  return c.finish();
}

bool criterion_2() {
  Criterion c(2, "construction cross-check");
  const double table = frobenius_distance(build_M(1), assemble_M1_from_table());
  c.require(table <= 1e-12, "||M<1> - table||_F = " + num(table) + " <= 1e-12");
  for (int j = 1; j <= 3; ++j) {
    const LabeledOperator m = build_M(j);
    const double mc = frobenius_distance(m, monte_carlo_M(MVariant::of(j), 100000, 100 + j));
    c.require(mc <= 0.05, "||M<" + std::to_string(j) + "> - MC(1e5)||_F = " + num(mc) + " <= 0.05");
    const double tr = std::abs(m.trace().real() - 8.0);
    c.require(tr <= 1e-10, "|tr M<" + std::to_string(j) + "> - 8| = " + num(tr) + " <= 1e-10");
  }
  return c.finish();
}

bool criterion_3() {
  Criterion c(3, "primal optimum from cold start");
  for (const auto& p : kPairs) {
    const SolveReport r = solve_sdp(assemble_primal(p));
    c.require(std::abs(r.initial_value - 0.5) <= 1e-12, "pair " + pair_tag(p) + " iteration-0 value " + num(r.initial_value));
    c.require(r.converged && std::abs(r.value - 0.875) <= 1e-4,
              "pair " + pair_tag(p) + " value " + num(r.value) + " within 1e-4 of 0.875 (" + to_string(r.status) + ")");
    c.require(r.iterations <= 50000, "pair " + pair_tag(p) + " iterations " + std::to_string(r.iterations) + " <= 50000");
    c.require(r.wall_time_seconds < 600.0, "pair " + pair_tag(p) + " wall time " + num(r.wall_time_seconds) + " s < 600 s");
  }
  return c.finish();
}

bool criterion_4() {
  Criterion c(4, "exact sandwich at the comparison tester");
  for (const auto& p : kPairs) {
    const TesterPoint t = comparison_tester_choi(p);
    const PrimalFeasibility f = check_primal_feasibility(t.rho1, t.rho2, 1e-12);
    c.require(f.pass, "pair " + pair_tag(p) + " feasible at 1e-12 (max residual " + num(f.max_residual()) + ")");
    const double v = objective_esp(t.rho1, t.rho2, p);
    c.require(std::abs(v - 0.875) <= 1e-12, "pair " + pair_tag(p) + " objective " + num(v) + " = 0.875 +- 1e-12");
  }
  return c.finish();
}

bool criterion_5() {
  Criterion c(5, "protocol simulation");
  const SimReport a = estimate_esp(100000, 7);
  const SimReport b = estimate_esp(100000, 7);
  c.require(std::abs(a.mean_esp - 0.875) <= 5.0 * a.std_error,
            "mean " + num(a.mean_esp) + " within 5 se of 0.875 (se " + num(a.std_error) + ")");
  c.require(a.std_error > 3e-4 && a.std_error < 5e-4, "se " + num(a.std_error) + " near 4e-4");
  c.require(a.mean_esp == b.mean_esp && a.std_error == b.std_error, "identical under fixed seed");
  return c.finish();
}

bool criterion_6() {
  Criterion c(6, "property suites");
  RngStream rng(606);
  CMatrix m(64, 64);
  for (Eigen::Index i = 0; i < 64; ++i)
    for (Eigen::Index j = 0; j < 64; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  const LabeledOperator x{canonical_layout(), CMatrix(m + m.adjoint())};

  const LabeledOperator tw = collective_pair_twirl(x, Register::r1, Register::r3);
  const double idem = frobenius_distance(collective_pair_twirl(tw, Register::r1, Register::r3), tw);
  const UnitarySample u = sample_haar_su2(rng);
  const double comm = frobenius_distance(conjugate_local(conjugate_local(tw, u, Register::r1), u, Register::r3), tw);
  const LabeledOperator t1 = one_register_twirl(x, Register::r5);
  const double idem1 = frobenius_distance(one_register_twirl(t1, Register::r5), t1);
  c.require(std::max({idem, comm, idem1}) <= 1e-10, "twirl idempotence / commutant invariance " + num(std::max({idem, comm, idem1})));

  double basis = 0.0;
  const auto v = three_qubit_basis({Register::r1, Register::r3, Register::r5}).all();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) basis = std::max(basis, std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)));
  const auto w = two_qubit_basis({Register::r1, Register::r3});
  basis = std::max(basis, (w.singlet_projector() + w.triplet_projector() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());
  c.require(basis <= 1e-12, "basis completeness " + num(basis));

  double moment = 0.0;
  constexpr int kHaar = 100000;
  for (int i = 0; i < kHaar; ++i) moment += std::norm(sample_haar_su2(rng).matrix().trace());
  moment /= kHaar;
  c.require(std::abs(moment - 1.0) <= 0.02, "E|tr U|^2 = " + num(moment));

  const LabeledOperator a{SystemLayout{Register::r1, Register::r3}, CMatrix(m.topLeftCorner(4, 4))};
  const LabeledOperator b{SystemLayout{Register::r5}, CMatrix(m.bottomRightCorner(2, 2))};
  const double pt = (partial_trace(kron(a, b), {Register::r5}).matrix() - b.trace() * a.matrix()).cwiseAbs().maxCoeff();
  const double ktr = std::abs(kron(a, b).trace() - a.trace() * b.trace());
  const double chain = frobenius_distance(partial_trace(x, {Register::r2b, Register::r6b}),
                                          partial_trace(partial_trace(x, {Register::r6b}), {Register::r2b}));
  c.require(std::max({pt, ktr, chain}) <= 1e-12, "partial-trace / kron identities " + num(std::max({pt, ktr, chain})));

  const SolveReport scaled = solve_sdp(assemble_primal({2, 3}, 2.0));
  c.require(scaled.converged && std::abs(scaled.value - 1.75) <= 2e-4, "rhs 2 gives " + num(scaled.value) + " (1.75 +- 2e-4)");
  return c.finish();
}

bool criterion_7() {
  Criterion c(7, "negative controls");
  DualCertificate bad = published_certificate({1, 2});
  bad.prime[0] = frac(3, 5);
  const DualReport r = verify_pair({1, 2}, bad);
  const double d5 = r.check("d5").value;
  c.require(!r.pass && !r.check("d5").pass, "tampered certificate rejected at d5");
  c.require(std::abs(d5 - 0.1) <= 1e-12, "d5 residual " + num(d5) + " = 0.1 (0.1 * ||P_singlet||_F)");

  std::ostringstream out, err;
  const int code = cli::run_cli({"verify-dual", "--pair", "12", "--tol-eq", "1e-300"}, out, err, cli::Environment{});
  c.require(code == cli::kExitVerification, "verify-dual --tol-eq 1e-300 exits " + std::to_string(code));
  return c.finish();
}

}  // namespace

int main() {
  const bool results[] = {criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()};
  int failed = 0;
  for (bool ok : results) failed += ok ? 0 : 1;
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAILED") << "\n";
  return failed == 0 ? 0 : 1;
}
