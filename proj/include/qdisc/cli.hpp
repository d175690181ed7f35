#pragma once

// qdisc command line. Every subcommand prints a report: `key: value` lines,
// then a single `json: {...}` line carrying the same content. Wall-clock time
// appears only in the `elapsed_seconds` line and is kept out of the JSON, so
// two runs with the same flags differ in that line alone.
//
// Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 solver did not converge.
// Environment: QDISC_SEED sets the default seed, QDISC_OUTPUT_DIR is the base
// directory for relative output paths.

#include "qdisc/certificate.hpp"
#include "qdisc/matrix_io.hpp"
#include "qdisc/pipeline.hpp"
#include "qdisc/protocol_sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace qdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitNoConvergence = 3;

inline constexpr std::uint64_t kFallbackSeed = 7;

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Report {
 public:
  explicit Report(std::string command) { add("command", command); }

  void add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
    json_[key] = value;
  }
  void add(const std::string& key, double value) {
    lines_.emplace_back(key, fmt(value));
    json_[key] = value;
  }
  void add(const std::string& key, bool value) {
    lines_.emplace_back(key, value ? "true" : "false");
    json_[key] = value;
  }
  void add(const std::string& key, std::uint64_t value) {
    lines_.emplace_back(key, std::to_string(value));
    json_[key] = value;
  }
  void add(const std::string& key, int value) {
    lines_.emplace_back(key, std::to_string(value));
    json_[key] = value;
  }
  /// Structured-only payload.
  void attach(const std::string& key, nlohmann::json value) { json_[key] = std::move(value); }
  void set_elapsed(double seconds) { elapsed_ = seconds; }

  std::string str() const {
    std::ostringstream os;
    for (const auto& [k, v] : lines_) os << k << ": " << v << "\n";
    os << "elapsed_seconds: " << fmt(elapsed_) << "\n";
    os << "json: " << json_.dump() << "\n";
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
  nlohmann::ordered_json json_ = nlohmann::ordered_json::object();
  double elapsed_ = 0.0;
};

struct Environment {
  std::uint64_t default_seed = kFallbackSeed;
  std::string output_dir;

  static Environment from_process() {
    Environment e;
    if (const char* s = std::getenv("QDISC_SEED"); s && *s) e.default_seed = std::stoull(s);
    if (const char* d = std::getenv("QDISC_OUTPUT_DIR"); d && *d) e.output_dir = d;
    return e;
  }

  std::string resolve(const std::string& path) const {
    if (output_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(output_dir) / path).string();
  }
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

inline void add_dual(Report& rep, const DualReport& d, const std::string& prefix = "") {
  for (const auto& c : d.checks) {
    rep.add(prefix + "check." + c.name, fmt(c.value) + " tol " + fmt(c.tolerance) + (c.pass ? " PASS" : " FAIL"));
  }
  rep.add(prefix + "dual_pass", d.pass);
}

struct SolveOutcome {
  SolveReport report;
  int exit_code;
};

inline SolveOutcome solve_pair(OrderedPair pair, const SolveParams& params, bool complex_path, double rhs) {
  const SdpProblem prob = assemble_primal(pair, rhs);
  SolveReport r = complex_path ? solve_sdp<Complex>(prob, params) : solve_sdp<double>(prob, params);
  int code = kExitOk;
  if (!r.converged) {
    code = kExitNoConvergence;
  } else if (std::abs(r.value - kOptimalEsp * rhs) > params.tol_obj * rhs) {
    code = kExitVerification;
  }
  return {std::move(r), code};
}

inline void add_solve(Report& rep, const SolveReport& r, const std::string& prefix = "") {
  rep.add(prefix + "value", r.value);
  rep.add(prefix + "initial_value", r.initial_value);
  rep.add(prefix + "gap_to_7/8", r.gap_to_optimum);
  rep.add(prefix + "residual.e1", r.feasibility.e1);
  rep.add(prefix + "residual.e2", r.feasibility.e2);
  rep.add(prefix + "residual.e3", r.feasibility.e3);
  rep.add(prefix + "residual.primal", r.primal_residual);
  rep.add(prefix + "residual.dual", r.dual_residual);
  rep.add(prefix + "min_eigenvalue.rho1", r.feasibility.min_eigenvalue[0]);
  rep.add(prefix + "min_eigenvalue.rho2", r.feasibility.min_eigenvalue[1]);
  rep.add(prefix + "iterations", r.iterations);
  rep.add(prefix + "status", to_string(r.status));
  rep.add(prefix + "scalar_path", r.scalar_path);
}

inline void add_sim(Report& rep, const SimReport& s) {
  rep.add("trials", s.trials);
  rep.add("seed", s.seed);
  rep.add("mode", to_string(s.options.mode));
  rep.add("threads", static_cast<int>(s.options.threads));
  rep.add("convention", to_string(s.options.convention));
  rep.add("random_frame", s.options.random_frame);
  rep.add("mean_esp", s.mean_esp);
  rep.add("std_error", s.std_error);
  rep.add("z_vs_7/8", s.std_error > 0 ? (s.mean_esp - kOptimalEsp) / s.std_error : 0.0);
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const Environment& env = Environment::from_process()) {
  CLI::App app{"Certification toolkit for two-candidate qubit unitary discrimination", "qdisc"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  app.add_option("--report", report_path, "Also write the report to this file");

  // build-m
  auto* build = app.add_subcommand("build-m", "Write M<j> in the matrix format");
  int which = 1;
  std::string out_path, method = "analytic";
  std::uint64_t mc_trials = 100000;
  std::uint64_t seed = env.default_seed;
  unsigned threads = 1;
  build->add_option("--which", which, "j in {1,2,3}")->required()->check(CLI::Range(1, 3));
  build->add_option("--out", out_path, "Output matrix file")->required();
  build->add_option("--method", method, "analytic | table | monte-carlo")
      ->check(CLI::IsMember({"analytic", "table", "monte-carlo"}));
  build->add_option("--trials", mc_trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  build->add_option("--seed", seed, "Monte Carlo seed");
  build->add_option("--threads", threads, "Monte Carlo worker threads")->check(CLI::PositiveNumber);

  // verify-dual
  auto* verify = app.add_subcommand("verify-dual", "Verify the dual certificate for a pair");
  std::string pair_text;
  DualTolerances dual_tol;
  std::string cert_path, dump_cert;
  verify->add_option("--pair", pair_text, "12 | 23 | 31")->required()->check(CLI::IsMember({"12", "23", "31"}));
  verify->add_option("--tol-psd", dual_tol.psd, "PSD tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--tol-eq", dual_tol.eq, "Equality residual tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--certificate", cert_path, "Certificate document to verify instead of the built-in one");
  verify->add_option("--dump-certificate", dump_cert, "Write the certificate document used");

  // solve-primal
  auto* solve = app.add_subcommand("solve-primal", "Solve the primal tester SDP");
  std::string warm = "mixed", scalar = "real";
  SolveParams params;
  double rhs = 1.0;
  std::string dump_solution;
  solve->add_option("--pair", pair_text, "12 | 23 | 31")->required()->check(CLI::IsMember({"12", "23", "31"}));
  solve->add_option("--warm-start", warm, "comparison | mixed | none")->check(CLI::IsMember({"comparison", "mixed", "none"}));
  solve->add_option("--tol-feas", params.tol_feas)->check(CLI::PositiveNumber);
  solve->add_option("--tol-obj", params.tol_obj)->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", params.max_iter)->check(CLI::PositiveNumber);
  solve->add_option("--penalty", params.penalty)->check(CLI::PositiveNumber);
  solve->add_flag("--balance", params.balance_residuals, "Residual-balanced penalty");
  solve->add_option("--scalar", scalar, "real | complex")->check(CLI::IsMember({"real", "complex"}));
  solve->add_option("--rhs", rhs, "Normalization constraint right-hand side")->check(CLI::PositiveNumber);
  solve->add_option("--dump-solution", dump_solution, "Write the solution blocks");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo ESP of the comparison protocol");
  std::uint64_t trials = 100000;
  std::string mode = "exact", convention = "sample1";
  bool random_frame = false;
  sim->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed);
  sim->add_option("--mode", mode, "exact | shots")->check(CLI::IsMember({"exact", "shots"}));
  sim->add_option("--threads", threads)->check(CLI::PositiveNumber);
  sim->add_option("--convention", convention, "sample1 | sample2")->check(CLI::IsMember({"sample1", "sample2"}));
  sim->add_flag("--random-frame", random_frame, "Conjugate both candidates by fresh Haar rotations");

  // certify-all
  auto* all = app.add_subcommand("certify-all", "Run the whole certification pipeline");
  all->add_option("--trials", trials)->check(CLI::PositiveNumber);
  all->add_option("--seed", seed);
  all->add_option("--threads", threads)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = detail::Clock::now();
  int code = kExitOk;
  std::unique_ptr<Report> rep;

  try {
    if (build->parsed()) {
      rep = std::make_unique<Report>("build-m");
      LabeledOperator m;
      if (method == "analytic") {
        m = build_M(which);
      } else if (method == "table") {
        if (which != 1) {
          err << "error: --method table is only available for --which 1\n";
          return kExitUsage;
        }
        m = assemble_M1_from_table();
      } else {
        m = monte_carlo_M(MVariant::of(which), mc_trials, seed, threads);
        rep->add("trials", mc_trials);
        rep->add("seed", seed);
      }
      const std::string path = env.resolve(out_path);
      write_operator(path, m);
      rep->add("which", which);
      rep->add("method", method);
      rep->add("layout", m.layout().str());
      rep->add("trace", m.trace().real());
      rep->add("hermiticity_error", m.hermiticity_error());
      rep->add("out", out_path);
    } else if (verify->parsed()) {
      rep = std::make_unique<Report>("verify-dual");
      const OrderedPair pair = parse_pair(pair_text);
      DualCertificate cert;
      if (!cert_path.empty()) {
        std::ifstream f(cert_path);
        if (!f) throw std::runtime_error("cannot read " + cert_path);
        cert = certificate_from_json(nlohmann::json::parse(f));
      } else {
        cert = published_certificate(pair == OrderedPair{3, 1} ? OrderedPair{1, 2} : pair);
      }
      if (!dump_cert.empty()) detail::write_text(env.resolve(dump_cert), to_json(cert).dump(2) + "\n");
      const DualReport d = verify_pair(pair, cert, dual_tol);
      rep->add("pair", pair_text);
      rep->add("certificate_pair", pair_tag(cert.pair));
      rep->add("transfer", pair == OrderedPair{3, 1} ? std::string("swap 1<->3, 2b<->4b") : std::string("none"));
      rep->add("lambda", d.lambda);
      rep->add("lambda_exact", cert.lambda.str());
      detail::add_dual(*rep, d);
      rep->attach("dual", to_json(d));
      code = d.pass ? kExitOk : kExitVerification;
    } else if (solve->parsed()) {
      rep = std::make_unique<Report>("solve-primal");
      const OrderedPair pair = parse_pair(pair_text);
      params.warm_start = make_warm_start(parse_warm_start(warm), pair, rhs);
      const auto outcome = detail::solve_pair(pair, params, scalar == "complex", rhs);
      rep->add("pair", pair_text);
      rep->add("warm_start", warm);
      rep->add("rhs", rhs);
      rep->add("tol_feas", params.tol_feas);
      rep->add("tol_obj", params.tol_obj);
      rep->add("max_iter", params.max_iter);
      rep->add("penalty", params.penalty);
      rep->add("balance", params.balance_residuals);
      detail::add_solve(*rep, outcome.report);
      if (!dump_solution.empty()) {
        nlohmann::json j{{"rho1", to_json(outcome.report.solution.rho1)}, {"rho2", to_json(outcome.report.solution.rho2)}};
        detail::write_text(env.resolve(dump_solution), j.dump() + "\n");
      }
      code = outcome.exit_code;
    } else if (sim->parsed()) {
      rep = std::make_unique<Report>("simulate");
      SimOptions opt;
      opt.mode = parse_sim_mode(mode);
      opt.threads = threads;
      opt.convention = convention == "sample1" ? CompareConvention::sample1 : CompareConvention::sample2;
      opt.random_frame = random_frame;
      detail::add_sim(*rep, estimate_esp(trials, seed, opt));
    } else if (all->parsed()) {
      rep = std::make_unique<Report>("certify-all");
      bool ok = true;
      bool converged = true;
      for (const OrderedPair& pair : {OrderedPair{1, 2}, OrderedPair{2, 3}, OrderedPair{3, 1}}) {
        const std::string p = "pair" + pair_tag(pair) + ".";
        const DualReport d = verify_pair(pair);
        detail::add_dual(*rep, d, p);

        const TesterPoint cmp = comparison_tester_choi(pair);
        const PrimalFeasibility f = check_primal_feasibility(cmp.rho1, cmp.rho2, 1e-12);
        const double cmp_value = objective_esp(cmp.rho1, cmp.rho2, pair);
        const bool cmp_ok = f.pass && std::abs(cmp_value - kOptimalEsp) <= 1e-12;
        rep->add(p + "comparison_value", cmp_value);
        rep->add(p + "comparison_feasible", f.pass);

        const auto outcome = detail::solve_pair(pair, SolveParams{}, false, 1.0);
        rep->add(p + "solver_value", outcome.report.value);
        rep->add(p + "solver_iterations", outcome.report.iterations);
        rep->add(p + "solver_status", to_string(outcome.report.status));

        ok = ok && d.pass && cmp_ok && outcome.exit_code == kExitOk;
        converged = converged && outcome.report.converged;
      }
      SimOptions opt;
      opt.threads = threads;
      const SimReport s = estimate_esp(trials, seed, opt);
      const bool sim_ok = std::abs(s.mean_esp - kOptimalEsp) <= 5.0 * s.std_error;
      rep->add("sim.trials", s.trials);
      rep->add("sim.seed", s.seed);
      rep->add("sim.threads", static_cast<int>(threads));
      rep->add("sim.mean_esp", s.mean_esp);
      rep->add("sim.std_error", s.std_error);
      rep->add("sim.within_5se", sim_ok);
      ok = ok && sim_ok;
      rep->add("verdict", ok ? std::string("optimal ESP = 7/8 certified") : std::string("NOT certified"));
      code = ok ? kExitOk : (converged ? kExitVerification : kExitNoConvergence);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }

  rep->add("exit_code", code);
  rep->set_elapsed(detail::seconds_since(t0));
  const std::string text = rep->str();
  out << text;
  if (!report_path.empty()) detail::write_text(env.resolve(report_path), text);
  return code;
}

}  // namespace qdisc::cli
