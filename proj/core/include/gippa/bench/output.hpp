#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gippa/bench/grid.hpp"

namespace gippa::bench {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header row plus one row per record:
///   m,n,r,nnz_ratio,q_ratio,transform,q_over_dof,relL_ladmm,relS_ladmm,iter1,
///   relL_iladmm,relS_iladmm,iter2,ratio
/// followed by `alpha` when with_alpha is set. Iteration counts of a cell in
/// which any trial hit the cap are written as "-", and so is its ratio.
std::string format_csv(const std::vector<RunRecord>& records, bool with_alpha = false);

/// Writes format_csv() to `path`. Throws OutputError on empty input (no file
/// is created) or when the file cannot be written.
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path,
              bool with_alpha = false);

/// Whitespace-separated columns for plotting: a cell label (or α for sweeps),
/// q/dof, mean LADMM iterations and mean iLADMM iterations.
std::string format_plot_data(const std::vector<RunRecord>& records, bool alpha_axis = false);
void emit_plot_data(const std::vector<RunRecord>& records, const std::filesystem::path& path,
                    bool alpha_axis = false);

/// Full records, including per-trial wall times and environment details.
std::string format_records_json(const std::vector<RunRecord>& records, const RunConfig& config);
void emit_records_json(const std::vector<RunRecord>& records, const RunConfig& config,
                       const std::filesystem::path& path);

/// Library version string.
std::string version();

}  // namespace gippa::bench
