#include "gippa/bench/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gippa/numkit/rng.hpp"

namespace gippa::bench {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void RunConfig::validate() const {
  auto ratio_ok = [](double v) { return v > 0.0 && v <= 1.0; };
  if (grid.sizes.empty() || grid.ranks.empty() || grid.nnz_ratios.empty() ||
      grid.q_ratios.empty() || grid.transforms.empty()) {
    throw ConfigError("grid: every axis needs at least one value");
  }
  for (auto s : grid.sizes) {
    if (s == 0) throw ConfigError("grid.sizes: sizes must be positive");
  }
  for (auto r : grid.ranks) {
    for (auto s : grid.sizes) {
      if (r > s) throw ConfigError("grid.ranks: rank exceeds image size");
    }
  }
  for (double v : grid.nnz_ratios) {
    if (!ratio_ok(v)) throw ConfigError("grid.nnz_ratios: ratios must lie in (0, 1]");
  }
  for (double v : grid.q_ratios) {
    if (!ratio_ok(v)) throw ConfigError("grid.q_ratios: ratios must lie in (0, 1]");
  }
  if (!(solver.tau > 0.0 && solver.tau <= 1.0) || !(solver.eta > 0.0 && solver.eta <= 1.0)) {
    throw ConfigError("solver: tau and eta must lie in (0, 1]");
  }
  if (!(solver.tol > 0.0)) throw ConfigError("solver.tol must be positive");
  if (solver.max_iter == 0) throw ConfigError("solver.max_iter must be positive");
  const double alpha_cap = rate_regime_only ? 1.0 / 3.0 : 1.0;
  auto alpha_ok = [alpha_cap](double a) { return a >= 0.0 && a < alpha_cap; };
  if (!alpha_ok(solver.alpha)) throw ConfigError("solver.alpha out of range");
  for (double a : solver.alpha_sweep) {
    if (!alpha_ok(a)) throw ConfigError("solver.alpha_sweep: value out of range");
  }
  if (solver.beta0 && !(*solver.beta0 > 0.0)) throw ConfigError("solver.beta0 must be positive");
  if (!(solver.s > 0.0)) throw ConfigError("solver.s must be positive");
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
  if (threads == 0) throw ConfigError("threads must be positive");
}

cpcp::CpcpOptions RunConfig::cpcp_options() const {
  cpcp::CpcpOptions o;
  o.tau = solver.tau;
  o.eta = solver.eta;
  o.stop = {solver.tol, solver.max_iter};
  o.beta0 = solver.beta0;
  o.s = solver.s;
  o.beta_adapt_iters = solver.beta_adapt_iters;
  return o;
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    check_keys(j, {"grid", "solver", "seeds", "output_dir", "csv_name", "plot_name",
                   "records_name", "threads", "rate_regime_only"},
               "config");
    if (j.contains("grid")) {
      const json& g = j["grid"];
      check_keys(g, {"sizes", "ranks", "nnz_ratios", "q_ratios", "transforms"}, "grid");
      read(g, "sizes", cfg.grid.sizes);
      read(g, "ranks", cfg.grid.ranks);
      read(g, "nnz_ratios", cfg.grid.nnz_ratios);
      read(g, "q_ratios", cfg.grid.q_ratios);
      if (g.contains("transforms")) {
        cfg.grid.transforms.clear();
        for (const auto& t : g["transforms"]) {
          cfg.grid.transforms.push_back(numkit::parse_transform_kind(t.get<std::string>()));
        }
      }
    }
    if (j.contains("solver")) {
      const json& s = j["solver"];
      check_keys(s, {"tau", "eta", "tol", "max_iter", "alpha", "alpha_sweep", "beta0", "s",
                     "beta_adapt_iters"},
                 "solver");
      read(s, "tau", cfg.solver.tau);
      read(s, "eta", cfg.solver.eta);
      read(s, "tol", cfg.solver.tol);
      read(s, "max_iter", cfg.solver.max_iter);
      read(s, "alpha", cfg.solver.alpha);
      read(s, "alpha_sweep", cfg.solver.alpha_sweep);
      if (s.contains("beta0") && !s["beta0"].is_null()) cfg.solver.beta0 = s["beta0"].get<double>();
      read(s, "s", cfg.solver.s);
      read(s, "beta_adapt_iters", cfg.solver.beta_adapt_iters);
    }
    read(j, "seeds", cfg.seeds);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    read(j, "csv_name", cfg.csv_name);
    read(j, "plot_name", cfg.plot_name);
    read(j, "records_name", cfg.records_name);
    read(j, "threads", cfg.threads);
    read(j, "rate_regime_only", cfg.rate_regime_only);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  std::vector<std::string> kinds;
  for (auto k : cfg.grid.transforms) kinds.emplace_back(numkit::to_string(k));
  j["grid"] = {{"sizes", cfg.grid.sizes},
               {"ranks", cfg.grid.ranks},
               {"nnz_ratios", cfg.grid.nnz_ratios},
               {"q_ratios", cfg.grid.q_ratios},
               {"transforms", kinds}};
  j["solver"] = {{"tau", cfg.solver.tau},
                 {"eta", cfg.solver.eta},
                 {"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"alpha", cfg.solver.alpha},
                 {"alpha_sweep", cfg.solver.alpha_sweep},
                 {"beta0", cfg.solver.beta0 ? json(*cfg.solver.beta0) : json(nullptr)},
                 {"s", cfg.solver.s},
                 {"beta_adapt_iters", cfg.solver.beta_adapt_iters}};
  j["seeds"] = cfg.seeds;
  j["output_dir"] = cfg.output_dir.string();
  j["csv_name"] = cfg.csv_name;
  j["plot_name"] = cfg.plot_name;
  j["records_name"] = cfg.records_name;
  j["threads"] = cfg.threads;
  j["rate_regime_only"] = cfg.rate_regime_only;
  return j.dump(2);
}

std::string Cell::key() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "m=%zu,n=%zu,r=%zu,nnz=%.6g,q=%.6g,%s", m, n, r, nnz_ratio,
                q_ratio, std::string(numkit::to_string(kind)).c_str());
  return buf;
}

std::vector<Cell> expand_grid(const GridSpec& grid) {
  std::vector<Cell> cells;
  for (auto size : grid.sizes)
    for (auto r : grid.ranks)
      for (double nz : grid.nnz_ratios)
        for (double qr : grid.q_ratios)
          for (auto kind : grid.transforms) cells.push_back({size, size, r, nz, qr, kind});
  return cells;
}

cpcp::InstanceSpec instance_spec(const Cell& cell, std::uint64_t seed) {
  const double mn = static_cast<double>(cell.m * cell.n);
  cpcp::InstanceSpec spec;
  spec.m = cell.m;
  spec.n = cell.n;
  spec.r = cell.r;
  spec.nnz = static_cast<std::size_t>(std::llround(cell.nnz_ratio * mn));
  const double q = cell.kind == TransformKind::FFT2 ? cell.q_ratio * mn / 2.0 : cell.q_ratio * mn;
  spec.q = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(q)));
  spec.q = std::min(spec.q, numkit::MeasurementOp::max_selectable(cell.kind, cell.m, cell.n));
  spec.kind = cell.kind;
  spec.seed = numkit::SeededRng(seed).split(cell.key()).seed();
  return spec;
}

}  // namespace gippa::bench
