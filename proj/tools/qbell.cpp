// qbell: entanglement and CHSH nonlocality analysis of two-qubit states.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 input or validation error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbell/bound.hpp"
#include "qbell/io.hpp"
#include "qbell/shared.hpp"

namespace {

using namespace qbell;

// Fixed 6 decimals for human reports; tiny magnitudes render as a clean 0.
std::string fixed6(double x) {
  if (std::abs(x) < 1e-9) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

// Full precision for machine-readable output.
std::string full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string vec3(const Eigen::Vector3d& v) {
  return "[" + fixed6(v(0)) + ", " + fixed6(v(1)) + ", " + fixed6(v(2)) + "]";
}

nlohmann::json vec3_json(const Eigen::Vector3d& v) {
  return nlohmann::json::array({v(0), v(1), v(2)});
}

struct AnalysisRecord {
  EntanglementReport ent;
  NonlocalityReport nl;
  QMembership membership;
};

AnalysisRecord analyze_state(const DensityMatrix& rho, const Tolerances& tol) {
  AnalysisRecord rec;
  rec.ent = entanglement_report(rho, tol);
  rec.nl = nonlocality(rho, tol);
  rec.membership = certify(rho, tol);
  return rec;
}

void print_human(std::ostream& os, const AnalysisRecord& rec) {
  const ChshSetting& s = rec.nl.setting;
  os << "C       = " << fixed6(rec.ent.concurrence) << "\n"
     << "EoF     = " << fixed6(rec.ent.eof) << "\n"
     << "N       = " << fixed6(rec.nl.value) << "\n"
     << "bound   = " << fixed6(rec.membership.bound) << "\n"
     << "slack   = " << fixed6(rec.membership.slack) << "\n"
     << "member  = " << (rec.membership.operational_member ? "true" : "false") << "\n"
     << "lambda1 = " << fixed6(rec.nl.lambda1) << "\n"
     << "lambda2 = " << fixed6(rec.nl.lambda2) << "\n"
     << "a       = " << vec3(s.a) << "\n"
     << "a'      = " << vec3(s.a_prime) << "\n"
     << "b       = " << vec3(s.b) << "\n"
     << "b'      = " << vec3(s.b_prime) << "\n";
  if (rec.nl.degenerate) os << "note    = optimal operator is not unique\n";
  if (rec.nl.zero_correlation) os << "note    = zero correlation matrix\n";
}

nlohmann::json to_json(const AnalysisRecord& rec) {
  const ChshSetting& s = rec.nl.setting;
  nlohmann::json j{
      {"C", rec.ent.concurrence},
      {"eof", rec.ent.eof},
      {"N", rec.nl.value},
      {"bound", rec.membership.bound},
      {"slack", rec.membership.slack},
      {"member", rec.membership.operational_member},
      {"lambda1", rec.nl.lambda1},
      {"lambda2", rec.nl.lambda2},
      {"degenerate", rec.nl.degenerate},
      {"rank_deficient", rec.nl.rank_deficient},
      {"zero_correlation", rec.nl.zero_correlation},
      {"setting",
       {{"a", vec3_json(s.a)},
        {"a_prime", vec3_json(s.a_prime)},
        {"b", vec3_json(s.b)},
        {"b_prime", vec3_json(s.b_prime)},
        {"mix_angle", s.mix_angle}}},
  };
  return j;
}

int cmd_analyze(const std::string& file, double tol_value, bool as_json) {
  Tolerances tol;
  tol.compare_tol = tol_value;
  tol.validate();
  const LoadedState state = load_state_file(file, tol);
  const AnalysisRecord rec = analyze_state(state.density, tol);
  if (as_json)
    std::cout << to_json(rec).dump(2) << "\n";
  else
    print_human(std::cout, rec);
  return 0;
}

int cmd_scan(int count, std::uint64_t seed, int rank, const std::string& out) {
  if (rank < 1 || rank > 4) throw BadRank("rank must be 1..4");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out, std::ios::trunc);
    if (!file) throw ParseError("cannot write " + out);
    os = &file;
  }
  *os << "id,C,eof,N,bound,slack\n";
  Tolerances tol;
  for (int id = 0; id < count; ++id) {
    const DensityMatrix rho =
        random_density(mix_seed(seed, static_cast<std::uint64_t>(id)), rank);
    const EntanglementReport ent = entanglement_report(rho, tol);
    const double n = nonlocality(rho, tol).value;
    const double bound = bound_value(ent.concurrence);
    *os << id << "," << full(ent.concurrence) << "," << full(ent.eof) << ","
        << full(n) << "," << full(bound) << "," << full(bound - n) << "\n";
  }
  return 0;
}

int cmd_pair_check(const std::string& file1, const std::string& file2, double tol_value) {
  Tolerances tols;
  const LoadedState s1 = load_state_file(file1, tols);
  const LoadedState s2 = load_state_file(file2, tols);
  const SharedOperatorVerdict v = shared_conditions(s1.density, s2.density, tol_value, tols);
  std::cout << "cond_same_frames = " << (v.cond_same_frames ? "true" : "false")
            << "  (left residual " << full(v.details.left_frame_residual)
            << ", right residual " << full(v.details.right_frame_residual) << ")\n"
            << "cond_same_order  = " << (v.cond_same_order ? "true" : "false")
            << (v.details.swapped ? "  (top-2 pairing swapped)" : "") << "\n"
            << "cond_ratio       = " << (v.cond_ratio ? "true" : "false")
            << "  (residual " << full(v.details.ratio_residual) << ")\n"
            << "degenerate_path  = " << (v.degenerate_path ? "true" : "false") << "\n"
            << "certificate      = " << (v.certificate ? "true" : "false")
            << "  (gaps " << full(v.details.cert_gap_first) << ", "
            << full(v.details.cert_gap_second) << ")\n"
            << "shared           = " << (v.certificate ? "yes" : "no") << "\n";
  return v.certificate ? 0 : 1;
}

int cmd_oracle_compare(int count, std::uint64_t seed, int grid) {
  // grid >= 8 enforced by the option check below; guard anyway.
  if (grid < 8) throw BadResolution("grid must be >= 8");
  Tolerances tol;
  double max_diff = 0.0, sum_diff = 0.0;
  int rows = 0;

  std::cout << "state            analytic      oracle        |diff|\n";
  auto report = [&](const std::string& name, const DensityMatrix& rho) {
    const double analytic = nonlocality(rho, tol).value;
    const double oracle = brute_force_nonlocality(rho, grid, 50, seed);
    const double diff = std::abs(analytic - oracle);
    max_diff = std::max(max_diff, diff);
    sum_diff += diff;
    ++rows;
    std::printf("%-16s %-13.9f %-13.9f %.3e\n", name.c_str(), analytic, oracle, diff);
  };

  report("bell", to_density(gamma_state(M_PI / 4.0)));
  for (int i = 0; i < count; ++i) {
    const int rank = 1 + static_cast<int>(mix_seed(seed, 1000 + i) % 4);
    report("random-" + std::to_string(i),
           random_density(mix_seed(seed, static_cast<std::uint64_t>(i)), rank));
  }
  std::printf("max  |analytic - oracle| = %.3e\n", max_diff);
  std::printf("mean |analytic - oracle| = %.3e\n", sum_diff / rows);
  return max_diff > 1e-3 ? 1 : 0;
}

int cmd_make(const std::string& family, double theta, int delta, double p,
             const std::string& out) {
  nlohmann::json j;
  if (family == "gamma") {
    j = state_json(gamma_state(theta));
  } else if (family == "omega") {
    j = state_json(omega_state(theta));
  } else if (family == "lambda") {
    j = state_json(lambda_state(theta, delta));
  } else if (family == "phi") {
    j = state_json(phi_state(theta, delta));
  } else if (family == "vw") {
    j = state_json(vw_state(p, theta));
  } else {
    throw OutOfRange("unknown family " + family +
                     " (expected gamma|omega|lambda|phi|vw)");
  }
  save_state_file(out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit entanglement / CHSH nonlocality toolkit"};
  app.require_subcommand(1);

  // analyze
  std::string analyze_file;
  double analyze_tol = 1e-8;
  bool analyze_json = false;
  auto* analyze = app.add_subcommand("analyze", "analyze a state file");
  analyze->add_option("state_file", analyze_file, "JSON state file")->required();
  analyze->add_option("--tol", analyze_tol, "comparison tolerance")->check(CLI::PositiveNumber);
  analyze->add_flag("--json", analyze_json, "emit JSON instead of text");

  // scan
  int scan_count = 1000;
  std::uint64_t scan_seed = 0;
  int scan_rank = 4;
  std::string scan_out = "-";
  auto* scan = app.add_subcommand("scan", "CSV scan of random states");
  scan->add_option("--count", scan_count, "number of states")->check(CLI::PositiveNumber);
  scan->add_option("--seed", scan_seed, "master seed");
  scan->add_option("--rank", scan_rank, "state rank 1..4")->check(CLI::Range(1, 4));
  scan->add_option("--out", scan_out, "output file (default stdout)");

  // pair-check
  std::string pair_file1, pair_file2;
  double pair_tol = 1e-8;
  auto* pair = app.add_subcommand("pair-check", "shared optimal CHSH operator test");
  pair->add_option("state_file_1", pair_file1)->required();
  pair->add_option("state_file_2", pair_file2)->required();
  pair->add_option("--tol", pair_tol, "condition tolerance")->check(CLI::PositiveNumber);

  // oracle-compare
  int oc_count = 100;
  std::uint64_t oc_seed = 0;
  int oc_grid = 64;
  auto* oracle = app.add_subcommand("oracle-compare",
                                    "analytic nonlocality vs brute-force search");
  oracle->add_option("--count", oc_count, "number of random states")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oc_seed, "master seed");
  oracle->add_option("--grid", oc_grid, "sphere grid size (>= 8)")->check(CLI::Range(8, 1 << 20));

  // make
  std::string make_family, make_out = "state.json";
  double make_theta = 0.0, make_p = 0.5;
  int make_delta = 1;
  auto* make = app.add_subcommand("make", "write a named-family state file");
  make->add_option("--family", make_family, "gamma|omega|lambda|phi|vw")->required();
  make->add_option("--theta", make_theta, "angle in radians");
  make->add_option("--delta", make_delta, "sign, +1 or -1");
  make->add_option("--p", make_p, "mixing weight for vw")->check(CLI::Range(0.0, 1.0));
  make->add_option("--out", make_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_file, analyze_tol, analyze_json);
    if (*scan) return cmd_scan(scan_count, scan_seed, scan_rank, scan_out);
    if (*pair) return cmd_pair_check(pair_file1, pair_file2, pair_tol);
    if (*oracle) return cmd_oracle_compare(oc_count, oc_seed, oc_grid);
    if (*make) return cmd_make(make_family, make_theta, make_delta, make_p, make_out);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
