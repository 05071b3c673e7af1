#include "gippa/bench/output.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "gippa/numkit/rng.hpp"

#ifndef GIPPA_VERSION
#define GIPPA_VERSION "unknown"
#endif

namespace gippa::bench {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string iter_cell(const SolverAggregate& agg) {
  return agg.all_converged ? fmt("%.1f", agg.mean_iters) : "-";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  if (!out) throw OutputError("write failed for " + path.string());
}

}  // namespace

std::string version() { return GIPPA_VERSION; }

std::string format_csv(const std::vector<RunRecord>& records, bool with_alpha) {
  std::string out =
      "m,n,r,nnz_ratio,q_ratio,transform,q_over_dof,relL_ladmm,relS_ladmm,iter1,"
      "relL_iladmm,relS_iladmm,iter2,ratio";
  out += with_alpha ? ",alpha\n" : "\n";
  for (const auto& rec : records) {
    const auto& c = rec.cell;
    const bool both = rec.agg_ladmm.all_converged && rec.agg_iladmm.all_converged;
    out += std::to_string(c.m) + "," + std::to_string(c.n) + "," + std::to_string(c.r) + ",";
    out += fmt("%.4g", c.nnz_ratio) + "," + fmt("%.4g", c.q_ratio) + ",";
    out += std::string(numkit::to_string(c.kind)) + ",";
    out += fmt("%.2f", rec.q_over_dof) + ",";
    out += fmt("%.2e", rec.agg_ladmm.mean_relL) + "," + fmt("%.2e", rec.agg_ladmm.mean_relS) + ",";
    out += iter_cell(rec.agg_ladmm) + ",";
    out += fmt("%.2e", rec.agg_iladmm.mean_relL) + "," + fmt("%.2e", rec.agg_iladmm.mean_relS) + ",";
    out += iter_cell(rec.agg_iladmm) + ",";
    out += both ? fmt("%.3f", rec.ratio) : "-";
    if (with_alpha) out += "," + fmt("%.4g", rec.alpha);
    out += "\n";
  }
  return out;
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path,
              bool with_alpha) {
  if (records.empty()) throw OutputError("no records to write");
  write_file(path, format_csv(records, with_alpha));
}

std::string format_plot_data(const std::vector<RunRecord>& records, bool alpha_axis) {
  std::string out = alpha_axis ? "# alpha q_over_dof iter_ladmm iter_iladmm\n"
                               : "# cell q_over_dof iter_ladmm iter_iladmm\n";
  for (const auto& rec : records) {
    out += alpha_axis ? fmt("%.4g", rec.alpha) : rec.cell.key();
    out += " " + fmt("%.2f", rec.q_over_dof) + " " + fmt("%.1f", rec.agg_ladmm.mean_iters) + " " +
           fmt("%.1f", rec.agg_iladmm.mean_iters) + "\n";
  }
  return out;
}

void emit_plot_data(const std::vector<RunRecord>& records, const std::filesystem::path& path,
                    bool alpha_axis) {
  if (records.empty()) throw OutputError("no records to write");
  write_file(path, format_plot_data(records, alpha_axis));
}

std::string format_records_json(const std::vector<RunRecord>& records, const RunConfig& config) {
  using nlohmann::json;
  auto trials = [](const std::vector<TrialResult>& ts) {
    json arr = json::array();
    for (const auto& t : ts) {
      arr.push_back({{"seed", t.seed},
                     {"instance_seed", t.instance_seed},
                     {"iters", t.iters},
                     {"relL", t.relL},
                     {"relS", t.relS},
                     {"converged", t.converged},
                     {"wall_time", t.wall_time},
                     {"error", t.error}});
    }
    return arr;
  };
  auto agg = [](const SolverAggregate& a) {
    return json{{"mean_iters", a.mean_iters},
                {"mean_relL", a.mean_relL},
                {"mean_relS", a.mean_relS},
                {"all_converged", a.all_converged}};
  };
  json j;
  j["environment"] = {{"rng", std::string(numkit::SeededRng::kAlgorithmId)},
                      {"version", version()}};
  j["config"] = json::parse(config_to_json(config));
  j["records"] = json::array();
  for (const auto& rec : records) {
    j["records"].push_back({{"cell", rec.cell.key()},
                            {"alpha", rec.alpha},
                            {"q", rec.q},
                            {"dof", rec.dof},
                            {"q_over_dof", rec.q_over_dof},
                            {"expected_failure", rec.expected_failure},
                            {"error", rec.error},
                            {"ladmm", trials(rec.ladmm)},
                            {"iladmm", trials(rec.iladmm)},
                            {"iter1", agg(rec.agg_ladmm)},
                            {"iter2", agg(rec.agg_iladmm)},
                            {"ratio", rec.ratio}});
  }
  return j.dump(2);
}

void emit_records_json(const std::vector<RunRecord>& records, const RunConfig& config,
                       const std::filesystem::path& path) {
  if (records.empty()) throw OutputError("no records to write");
  write_file(path, format_records_json(records, config));
}

}  // namespace gippa::bench
