// One PASS/FAIL line per acceptance criterion. Exit code 0 only if all pass.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gippa/bench/config.hpp"
#include "gippa/bench/grid.hpp"
#include "gippa/bench/output.hpp"
#include "gippa/bench/verify.hpp"
#include "gippa/cli/cli.hpp"

using namespace gippa;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome from_check(const bench::CheckResult& r) { return {r.passed, r.detail}; }

Outcome combine(const std::vector<bench::CheckResult>& rs) {
  Outcome o{true, ""};
  for (const auto& r : rs) {
    o.passed = o.passed && r.passed;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += r.name + ": " + (r.passed ? "ok" : "FAILED") + " (" + r.detail + ")";
  }
  return o;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = bench::timed_check("step", [] { return bench::check_ladmm_step_inequality({20, 8, 2024}, 100, 100); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o = from_check(r);
  o.detail += ", " + fmt("%.2f", secs) + " s";
  if (secs >= 10.0) {
    o.passed = false;
    o.detail += " (over 10 s)";
  }
  return o;
}

// Desk-scale recovery cell shared by criteria 7 and 8.
struct RecoveryRun {
  bool done = false;
  std::string error;
  std::vector<bench::RunRecord> records;  // [0]: alpha .28, [1]: alpha .05
};

RecoveryRun& recovery() {
  static RecoveryRun run;
  if (run.done) return run;
  run.done = true;
  bench::RunConfig cfg;
  cfg.grid.sizes = {256};
  cfg.grid.ranks = {5};
  cfg.grid.nnz_ratios = {0.05};
  cfg.grid.q_ratios = {0.6};
  cfg.grid.transforms = {numkit::TransformKind::DCT2};
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.solver.alpha_sweep = {0.28, 0.05};
  try {
    run.records = bench::run_alpha_sweep(cfg);
    if (run.records.size() != 2) run.error = "unexpected record count";
    else if (!run.records[0].error.empty()) run.error = run.records[0].error;
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

std::string trial_summary(const std::vector<bench::TrialResult>& ts) {
  std::string s;
  for (const auto& t : ts) {
    if (!s.empty()) s += " ";
    s += "[seed " + std::to_string(t.seed) + ": " + std::to_string(t.iters) + " it, relL " +
         fmt("%.1e", t.relL) + ", relS " + fmt("%.1e", t.relS) + (t.converged ? "" : ", capped") + "]";
  }
  return s;
}

Outcome criterion7() {
  const auto& run = recovery();
  if (!run.error.empty()) return {false, run.error};
  const auto& rec = run.records[0];
  bool ok = true;
  for (const auto* ts : {&rec.ladmm, &rec.iladmm}) {
    for (const auto& t : *ts) {
      ok = ok && t.error.empty() && t.converged && t.iters <= 1000 && t.relL <= 1e-4 && t.relS <= 1e-4;
    }
  }
  return {ok, "LADMM " + trial_summary(rec.ladmm) + "; iLADMM(0.28) " + trial_summary(rec.iladmm)};
}

Outcome criterion8() {
  const auto& run = recovery();
  if (!run.error.empty()) return {false, run.error};
  const auto& hi = run.records[0];
  const auto& lo = run.records[1];
  const double ratio = hi.agg_iladmm.mean_iters / hi.agg_ladmm.mean_iters;
  const bool ok = ratio <= 0.90 && hi.agg_iladmm.mean_iters < lo.agg_iladmm.mean_iters;
  return {ok, "mean iters LADMM " + fmt("%.1f", hi.agg_ladmm.mean_iters) + ", iLADMM(0.28) " +
                  fmt("%.1f", hi.agg_iladmm.mean_iters) + ", iLADMM(0.05) " +
                  fmt("%.1f", lo.agg_iladmm.mean_iters) + ", ratio " + fmt("%.3f", ratio)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  const fs::path root = fs::temp_directory_path() / "gippa_acceptance_rerun";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "cfg.json";
  std::ofstream(cfg) << R"({"grid": {"sizes": [32], "ranks": [1, 2], "nnz_ratios": [0.05], "q_ratios": [0.6, 0.8]},
    "solver": {"max_iter": 400}, "seeds": [1, 2]})";
  std::ostringstream out, err;
  int c1 = cli::run_cli({"bench", "-c", cfg.string(), "-o", (root / "a").string(), "--threads", "1"}, out, err);
  int c2 = cli::run_cli({"bench", "-c", cfg.string(), "-o", (root / "b").string(), "--threads", "2"}, out, err);
  if (c1 != 0 || c2 != 0) return {false, "bench exit codes " + std::to_string(c1) + ", " + std::to_string(c2) + ": " + err.str()};
  const bool csv = slurp(root / "a" / "grid.csv") == slurp(root / "b" / "grid.csv");
  const bool plot = slurp(root / "a" / "grid_plot.dat") == slurp(root / "b" / "grid_plot.dat");
  return {csv && plot, std::string("csv ") + (csv ? "identical" : "differs") + ", plot data " +
                           (plot ? "identical" : "differs") +
                           "; full-scale timing tables are not expected to reproduce"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"step inequality", criterion1},
      {"contraction", [] { return from_check(bench::check_contraction({20, 8, 2024}, 500)); }},
      {"nonergodic rate", [] { return from_check(bench::check_nonergodic_rate({20, 8, 2024}, 500, 50)); }},
      {"ergodic bound", [] { return from_check(bench::check_ergodic_bound({20, 8, 2024}, {50, 100, 200}, 50)); }},
      {"inertial rate", [] { return from_check(bench::check_inertial_rate(10, 10, 0.28, 500, 7)); }},
      {"accelerated rate", [] { return from_check(bench::check_nesterov_rate(10, 10, 500, 11)); }},
      {"recovery", criterion7},
      {"iteration savings", criterion8},
      {"identities",
       [] {
         return combine({bench::timed_check("zero alpha", [] { return bench::check_zero_alpha_identity(); }),
                         bench::timed_check("measurement", [] { return bench::check_measurement_identity(); }),
                         bench::timed_check("svt", [] { return bench::check_svt_spectrum(); })});
       }},
      {"rerun determinism", criterion10},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
