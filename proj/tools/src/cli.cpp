#include "gippa/cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>

#include "CLI11.hpp"
#include "json.hpp"

#include "gippa/bench/config.hpp"
#include "gippa/bench/grid.hpp"
#include "gippa/bench/output.hpp"
#include "gippa/bench/verify.hpp"
#include "gippa/cpcp/instance.hpp"
#include "gippa/cpcp/solver.hpp"

namespace gippa::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Overrides shared by bench and sweep-alpha.
struct GridFlags {
  std::string config;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> threads;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> max_iter;
  std::optional<double> beta0;
  std::optional<double> s;
};

struct SolveFlags {
  std::string config;
  std::size_t m = 64;
  std::optional<std::size_t> n;
  std::size_t rank = 2;
  double nnz_ratio = 0.05;
  double q_ratio = 0.6;
  std::string transform = "DCT2";
  std::uint64_t seed = 1;
  std::optional<double> alpha;
  std::optional<double> tau, eta, tol, beta0, s;
  std::optional<std::size_t> max_iter, beta_adapt_iters;
  std::optional<std::string> output;
};

void add_grid_flags(CLI::App* cmd, GridFlags& f, bool config_required) {
  auto* opt = cmd->add_option("-c,--config", f.config, "JSON run configuration");
  if (config_required) opt->required();
  cmd->add_option("-o,--output-dir", f.output_dir, "directory for CSV, plot data and records");
  cmd->add_option("--threads", f.threads, "worker threads across (cell, seed) pairs");
  cmd->add_option("--seeds", f.seeds, "seed list overriding the config")->delimiter(',');
  cmd->add_option("--max-iter", f.max_iter, "iteration cap per solve");
  cmd->add_option("--beta0", f.beta0, "initial penalty");
  cmd->add_option("--s", f.s, "objective scale of the penalty rule");
}

bench::RunConfig grid_config(const GridFlags& f, bench::RunConfig cfg) {
  if (!f.config.empty()) cfg = bench::load_config(f.config);
  if (f.threads) cfg.threads = *f.threads;
  if (!f.seeds.empty()) cfg.seeds = f.seeds;
  if (f.max_iter) cfg.solver.max_iter = *f.max_iter;
  if (f.beta0) cfg.solver.beta0 = *f.beta0;
  if (f.s) cfg.solver.s = *f.s;
  cfg.output_dir = resolve_output_dir(f.output_dir, cfg.output_dir);
  cfg.validate();
  return cfg;
}

// Records must carry ratio = iter2/iter1 of their own aggregates.
int check_records(const std::vector<bench::RunRecord>& records, std::ostream& err) {
  int rc = kExitOk;
  for (const auto& rec : records) {
    if (!rec.error.empty()) err << "cell " << rec.cell.key() << " failed: " << rec.error << "\n";
    if (rec.agg_ladmm.mean_iters > 0) {
      const double expect = rec.agg_iladmm.mean_iters / rec.agg_ladmm.mean_iters;
      if (std::abs(expect - rec.ratio) > 1e-12) {
        err << "ratio mismatch in " << rec.cell.key() << "\n";
        rc = kExitViolation;
      }
    }
  }
  return rc;
}

void print_summary(const std::vector<bench::RunRecord>& records, bool with_alpha,
                   std::ostream& out) {
  for (const auto& rec : records) {
    out << rec.cell.key();
    if (with_alpha) out << " alpha=" << rec.alpha;
    out << " iter1=" << rec.agg_ladmm.mean_iters << (rec.agg_ladmm.all_converged ? "" : "(cap)")
        << " iter2=" << rec.agg_iladmm.mean_iters
        << (rec.agg_iladmm.all_converged ? "" : "(cap)") << " ratio=" << rec.ratio << "\n";
  }
}

int write_outputs(const std::vector<bench::RunRecord>& records, const bench::RunConfig& cfg,
                  const std::string& csv, const std::string& plot, const std::string& json,
                  bool sweep, std::ostream& out, std::ostream& err) {
  std::filesystem::create_directories(cfg.output_dir);
  bench::emit_csv(records, cfg.output_dir / csv, sweep);
  bench::emit_plot_data(records, cfg.output_dir / plot, sweep);
  bench::emit_records_json(records, cfg, cfg.output_dir / json);
  print_summary(records, sweep, out);
  out << "wrote " << (cfg.output_dir / csv).string() << "\n";
  return check_records(records, err);
}

int cmd_bench(const GridFlags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = grid_config(f, {});
  const auto records = bench::run_grid(cfg);
  return write_outputs(records, cfg, cfg.csv_name, cfg.plot_name, cfg.records_name, false, out,
                       err);
}

// Default sweep: one desk-scale cell over the α list.
bench::RunConfig sweep_defaults() {
  bench::RunConfig cfg;
  cfg.grid.sizes = {128};
  cfg.grid.ranks = {5};
  cfg.grid.nnz_ratios = {0.05};
  cfg.grid.q_ratios = {0.6};
  return cfg;
}

int cmd_sweep(const GridFlags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = grid_config(f, sweep_defaults());
  const auto records = bench::run_alpha_sweep(cfg);
  return write_outputs(records, cfg, "alpha_sweep.csv", "alpha_sweep_plot.dat",
                       "alpha_sweep_records.json", true, out, err);
}

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  bench::RunConfig cfg;
  if (!f.config.empty()) cfg = bench::load_config(f.config);
  auto& sv = cfg.solver;
  if (f.tau) sv.tau = *f.tau;
  if (f.eta) sv.eta = *f.eta;
  if (f.tol) sv.tol = *f.tol;
  if (f.max_iter) sv.max_iter = *f.max_iter;
  if (f.beta0) sv.beta0 = *f.beta0;
  if (f.s) sv.s = *f.s;
  if (f.beta_adapt_iters) sv.beta_adapt_iters = *f.beta_adapt_iters;
  if (f.alpha) sv.alpha = *f.alpha;
  bench::Cell cell;
  try {
    cell = {f.m, f.n.value_or(f.m), f.rank, f.nnz_ratio, f.q_ratio,
            numkit::parse_transform_kind(f.transform)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.grid = {{cell.m}, {cell.r}, {cell.nnz_ratio}, {cell.q_ratio}, {cell.kind}};
  if (cell.n != cell.m) {
    if (cell.r > std::min(cell.m, cell.n)) throw UsageError("rank exceeds image size");
  } else {
    cfg.validate();
  }

  const auto spec = bench::instance_spec(cell, f.seed);
  const auto inst = cpcp::generate_instance(spec);
  const auto opt = cfg.cpcp_options();
  const auto res = f.alpha ? cpcp::iladmm_cpcp(inst, vi::InertialSchedule::constant(*f.alpha), opt)
                           : cpcp::ladmm_cpcp(inst, opt);
  const auto met = cpcp::recovery_metrics(res.state, inst, res.trace.converged);

  nlohmann::json j;
  j["solver"] = f.alpha ? "iladmm" : "ladmm";
  j["alpha"] = f.alpha ? nlohmann::json(*f.alpha) : nlohmann::json(nullptr);
  j["cell"] = cell.key();
  j["seed"] = f.seed;
  j["instance_seed"] = spec.seed;
  j["q"] = spec.q;
  j["dof"] = inst.dof;
  j["q_over_dof"] = met.q_over_dof;
  j["expected_failure"] = met.expected_failure;
  j["iters"] = met.iters;
  j["converged"] = met.converged;
  j["relL"] = met.relL;
  j["relS"] = met.relS;
  j["feasibility"] = met.feasibility;
  j["final_beta"] = res.state.beta;
  const std::string text = j.dump(2);
  out << text << "\n";
  if (f.output) {
    std::ofstream file(*f.output);
    if (!file) throw std::runtime_error("cannot write " + *f.output);
    file << text << "\n";
  }
  const bool finite = std::isfinite(met.relL) && std::isfinite(met.relS);
  return finite ? kExitOk : kExitViolation;
}

int cmd_verify(std::uint64_t seed, std::ostream& out) {
  const auto results = bench::run_verify_suite(seed);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << " ("
        << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    out.unsetf(std::ios::floatfield);
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::filesystem::path& from_config) {
  if (flag && !flag->empty()) return *flag;
  if (!from_config.empty()) return from_config;
  if (const char* env = std::getenv("GIPPA_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inertial proximal point and linearized ADMM experiments"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "solve one compressive PCP instance");
  solve->add_option("-c,--config", sf.config, "JSON run configuration (solver section used)");
  solve->add_option("-m,--rows", sf.m, "image rows");
  solve->add_option("-n,--cols", sf.n, "image columns (default: rows)");
  solve->add_option("-r,--rank", sf.rank, "rank of the low-rank part");
  solve->add_option("--nnz-ratio", sf.nnz_ratio, "fraction of nonzeros in the sparse part");
  solve->add_option("--q-ratio", sf.q_ratio, "fraction of measured coefficients");
  solve->add_option("--transform", sf.transform, "DCT2, WHT or FFT2");
  solve->add_option("--seed", sf.seed, "instance seed");
  solve->add_option("--alpha", sf.alpha, "inertial weight; omit for plain linearized ADMM");
  solve->add_option("--tau", sf.tau);
  solve->add_option("--eta", sf.eta);
  solve->add_option("--tol", sf.tol);
  solve->add_option("--max-iter", sf.max_iter);
  solve->add_option("--beta0", sf.beta0);
  solve->add_option("--s", sf.s);
  solve->add_option("--beta-adapt-iters", sf.beta_adapt_iters);
  solve->add_option("--output", sf.output, "also write the JSON result here");

  GridFlags bf;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment grid from a config file");
  add_grid_flags(bench_cmd, bf, true);

  GridFlags wf;
  auto* sweep = app.add_subcommand("sweep-alpha", "iteration counts across inertial weights");
  add_grid_flags(sweep, wf, false);

  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "run the invariant suite on small fixtures");
  verify->add_option("--seed", verify_seed, "offset added to the fixture seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(sf, out);
    if (*bench_cmd) return cmd_bench(bf, out, err);
    if (*sweep) return cmd_sweep(wf, out, err);
    if (*verify) return cmd_verify(verify_seed, out);
  } catch (const bench::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bench::OutputError& e) {
    err << "output error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gippa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gippa::cli
