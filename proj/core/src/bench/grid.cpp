#include "gippa/bench/grid.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <thread>

#include "gippa/cpcp/solver.hpp"

namespace gippa::bench {

namespace {

TrialResult solve_trial(const cpcp::CpcpInstance& inst, std::uint64_t seed, double alpha,
                        bool inertial, const cpcp::CpcpOptions& opt) {
  TrialResult t;
  t.seed = seed;
  t.instance_seed = inst.spec.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const cpcp::CpcpResult res =
        inertial ? cpcp::iladmm_cpcp(inst, vi::InertialSchedule::constant(alpha), opt)
                 : cpcp::ladmm_cpcp(inst, opt);
    const cpcp::RecoveryMetrics m = cpcp::recovery_metrics(res.state, inst, res.trace.converged);
    t.iters = res.trace.iterations;
    t.relL = m.relL;
    t.relS = m.relS;
    t.converged = res.trace.converged;
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  t.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

// Runs tasks on `threads` workers; each task writes only its own slot.
void run_tasks(std::vector<std::function<void()>>& tasks, std::size_t threads) {
  if (threads <= 1 || tasks.size() <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t n = std::min(threads, tasks.size());
  for (std::size_t w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) tasks[i]();
    });
  }
  for (auto& th : pool) th.join();
}

// Shared driver: for every cell and seed builds the instance once and runs
// LADMM plus one iLADMM trial per alpha.
std::vector<RunRecord> run_cells(const RunConfig& config, const std::vector<double>& alphas) {
  config.validate();
  const std::vector<Cell> cells = expand_grid(config.grid);
  const cpcp::CpcpOptions opt = config.cpcp_options();
  const std::size_t ns = config.seeds.size();
  const std::size_t na = alphas.size();

  // records[c * na + a]; every record stores the LADMM baseline too.
  std::vector<RunRecord> records(cells.size() * na);
  std::vector<std::vector<TrialResult>> ladmm(cells.size(), std::vector<TrialResult>(ns));
  std::vector<std::vector<std::vector<TrialResult>>> inertial(
      cells.size(), std::vector<std::vector<TrialResult>>(na, std::vector<TrialResult>(ns)));
  std::vector<std::string> cell_error(cells.size());

  std::vector<std::function<void()>> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t s = 0; s < ns; ++s) {
      tasks.emplace_back([&, c, s] {
        const std::uint64_t seed = config.seeds[s];
        std::optional<cpcp::CpcpInstance> inst;
        try {
          inst = cpcp::generate_instance(instance_spec(cells[c], seed));
        } catch (const std::exception& e) {
          if (s == 0) cell_error[c] = e.what();
          return;
        }
        ladmm[c][s] = solve_trial(*inst, seed, 0.0, false, opt);
        for (std::size_t a = 0; a < na; ++a) {
          inertial[c][a][s] = solve_trial(*inst, seed, alphas[a], true, opt);
        }
      });
    }
  }
  run_tasks(tasks, config.threads);

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    std::size_t q = 0, dof = 0;
    std::string err = cell_error[c];
    try {
      const cpcp::InstanceSpec spec = instance_spec(cell, config.seeds.front());
      q = cell.kind == TransformKind::FFT2 ? 2 * spec.q : spec.q;
      dof = cpcp::degrees_of_freedom(spec.m, spec.n, spec.r, spec.nnz);
    } catch (const std::exception& e) {
      if (err.empty()) err = e.what();
    }
    for (std::size_t a = 0; a < na; ++a) {
      RunRecord& rec = records[c * na + a];
      rec.cell = cell;
      rec.alpha = alphas[a];
      rec.q = q;
      rec.dof = dof;
      rec.q_over_dof = dof ? static_cast<double>(q) / static_cast<double>(dof) : 0.0;
      rec.expected_failure = rec.q_over_dof < cpcp::kRecoverableQOverDof;
      rec.error = err;
      if (err.empty()) {
        rec.ladmm = ladmm[c];
        rec.iladmm = inertial[c][a];
      }
      rec.aggregate();
    }
  }
  return records;
}

SolverAggregate aggregate_trials(const std::vector<TrialResult>& trials) {
  SolverAggregate agg;
  if (trials.empty()) {
    agg.all_converged = false;
    return agg;
  }
  for (const auto& t : trials) {
    agg.mean_iters += static_cast<double>(t.iters);
    agg.mean_relL += t.relL;
    agg.mean_relS += t.relS;
    agg.all_converged = agg.all_converged && t.converged && t.error.empty();
  }
  const double n = static_cast<double>(trials.size());
  agg.mean_iters /= n;
  agg.mean_relL /= n;
  agg.mean_relS /= n;
  return agg;
}

}  // namespace

void RunRecord::aggregate() {
  agg_ladmm = aggregate_trials(ladmm);
  agg_iladmm = aggregate_trials(iladmm);
  ratio = agg_ladmm.mean_iters > 0.0 ? agg_iladmm.mean_iters / agg_ladmm.mean_iters : 0.0;
}

std::vector<RunRecord> run_grid(const RunConfig& config) {
  return run_cells(config, {config.solver.alpha});
}

std::vector<RunRecord> run_alpha_sweep(const RunConfig& config) {
  return run_cells(config, config.solver.alpha_sweep);
}

}  // namespace gippa::bench
