#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gippa/bench/config.hpp"

namespace gippa::bench {

struct TrialResult {
  std::uint64_t seed = 0;
  std::uint64_t instance_seed = 0;
  std::size_t iters = 0;
  double relL = 0.0;
  double relS = 0.0;
  bool converged = false;
  double wall_time = 0.0;  // seconds; informational only
  std::string error;       // nonempty when the trial threw
};

struct SolverAggregate {
  double mean_iters = 0.0;
  double mean_relL = 0.0;
  double mean_relS = 0.0;
  /// False when any trial hit the iteration cap or failed.
  bool all_converged = true;
};

/// One grid cell: paired LADMM and iLADMM trials on identical instances.
struct RunRecord {
  Cell cell;
  double alpha = 0.0;  // inertial weight of the iLADMM trials
  std::size_t q = 0;   // real measurement count
  std::size_t dof = 0;
  double q_over_dof = 0.0;
  bool expected_failure = false;
  std::vector<TrialResult> ladmm;
  std::vector<TrialResult> iladmm;
  SolverAggregate agg_ladmm;
  SolverAggregate agg_iladmm;
  /// mean iLADMM iterations / mean LADMM iterations
  double ratio = 0.0;
  std::string error;  // cell-level failure (e.g. invalid sizes)

  void aggregate();
};

/// Runs every cell × seed of the config. Trials may run concurrently on
/// config.threads workers; results are collected in grid order so the output
/// does not depend on the thread count. A failing cell is recorded and the
/// grid continues.
std::vector<RunRecord> run_grid(const RunConfig& config);

/// For each cell, one LADMM baseline and one iLADMM record per α in
/// config.solver.alpha_sweep, all on the same instances.
std::vector<RunRecord> run_alpha_sweep(const RunConfig& config);


}  // namespace gippa::bench
