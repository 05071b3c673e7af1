#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gippa/cpcp/instance.hpp"
#include "gippa/cpcp/solver.hpp"

namespace gippa::bench {

using numkit::TransformKind;

/// Square images only: each size is used for both m and n.
struct GridSpec {
  std::vector<std::size_t> sizes{128, 256};
  std::vector<std::size_t> ranks{2, 5};
  std::vector<double> nnz_ratios{0.01, 0.05};
  std::vector<double> q_ratios{0.4, 0.6, 0.8};
  std::vector<TransformKind> transforms{TransformKind::DCT2};
};

struct SolverSpec {
  double tau = 0.99;
  double eta = 0.99;
  double tol = 1e-5;
  std::size_t max_iter = 1000;
  double alpha = 0.28;
  std::vector<double> alpha_sweep{0.05, 0.10, 0.15, 0.20, 0.25, 0.28, 0.30, 0.35};
  std::optional<double> beta0;
  double s = 1.0;
  std::size_t beta_adapt_iters = 30;
};

struct RunConfig {
  GridSpec grid;
  SolverSpec solver;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  /// Empty: left to the caller (the CLI falls back to GIPPA_OUTPUT_DIR, then ".").
  std::filesystem::path output_dir;
  std::string csv_name = "grid.csv";
  std::string plot_name = "grid_plot.dat";
  std::string records_name = "records.json";
  std::size_t threads = 1;
  /// Restrict every α to [0, 1/3), the regime with a rate guarantee.
  bool rate_regime_only = false;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  cpcp::CpcpOptions cpcp_options() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON config. Missing keys keep their defaults; unknown keys are
/// rejected so typos do not pass silently.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& cfg);

/// One grid point.
struct Cell {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  double nnz_ratio = 0.0;
  double q_ratio = 0.0;
  TransformKind kind = TransformKind::DCT2;

  std::string key() const;
};

std::vector<Cell> expand_grid(const GridSpec& grid);

/// nnz = round(nnz_ratio·mn). q = ⌊q_ratio·mn⌋ real measurements for DCT2
/// and WHT; for FFT2 ⌊q_ratio·mn/2⌋ complex samples (2q real numbers).
/// The instance seed is split from `seed` by the cell key.
cpcp::InstanceSpec instance_spec(const Cell& cell, std::uint64_t seed);

}  // namespace gippa::bench
