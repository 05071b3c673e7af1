#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "gippa/bench/config.hpp"
#include "gippa/bench/grid.hpp"
#include "gippa/bench/output.hpp"
#include "gippa/bench/verify.hpp"
#include "gippa/cpcp/instance.hpp"
#include "gippa/numkit/rng.hpp"

using namespace gippa;
using bench::RunConfig;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.grid.sizes = {16};
  cfg.grid.ranks = {1};
  cfg.grid.nnz_ratios = {0.05};
  cfg.grid.q_ratios = {0.8};
  cfg.seeds = {1, 2};
  cfg.solver.max_iter = 300;
  cfg.solver.beta0 = 0.5;
  cfg.solver.beta_adapt_iters = 0;
  return cfg;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gippa_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("measurement counts for the desk-scale cell") {
    const bench::Cell cell{256, 256, 5, 0.05, 0.6, numkit::TransformKind::DCT2};
    const auto spec = bench::instance_spec(cell, 1);
    CHECK(spec.nnz == 3277);
    CHECK(spec.q == 39321);
    const auto dof = cpcp::degrees_of_freedom(256, 256, 5, spec.nnz);
    CHECK(dof == 5812);
    CHECK(static_cast<double>(spec.q) / dof == doctest::Approx(6.77).epsilon(1e-3));
    bench::Cell fft = cell;
    fft.kind = numkit::TransformKind::FFT2;
    CHECK(bench::instance_spec(fft, 1).q == 19660);
    CHECK(bench::instance_spec(cell, 1).seed == bench::instance_spec(cell, 1).seed);
    CHECK(bench::instance_spec(cell, 1).seed != bench::instance_spec(cell, 2).seed);
    CHECK(bench::instance_spec(cell, 1).seed != bench::instance_spec(fft, 1).seed);
  }

  TEST_CASE("defaults and grid expansion") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(bench::expand_grid(cfg.grid).size() == 24);
    const std::vector<double> sweep{0.05, 0.10, 0.15, 0.20, 0.25, 0.28, 0.30, 0.35};
    CHECK(cfg.solver.alpha_sweep == sweep);
    CHECK(cfg.solver.alpha == 0.28);
    CHECK(cfg.seeds.size() == 5);
  }

  TEST_CASE("parsing and validation") {
    const auto cfg = bench::config_from_json(
        R"({"grid": {"sizes": [32], "transforms": ["wht", "FFT2"]}, "solver": {"tol": 1e-4}, "seeds": [3]})");
    CHECK(cfg.grid.sizes == std::vector<std::size_t>{32});
    CHECK(cfg.grid.transforms.size() == 2);
    CHECK(cfg.solver.tol == 1e-4);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3});
    CHECK_THROWS_AS(bench::config_from_json(R"({"grdi": {}})"), bench::ConfigError);
    CHECK_THROWS_AS(bench::config_from_json(R"({"grid": {"q_ratios": [1.5]}})"), bench::ConfigError);
    CHECK_THROWS_AS(bench::config_from_json(R"({"solver": {"alpha": 1.0}})"), bench::ConfigError);
    CHECK_THROWS_AS(bench::config_from_json(R"({"rate_regime_only": true, "solver": {"alpha_sweep": [0.35]}})"),
                    bench::ConfigError);
    CHECK_THROWS_AS(bench::config_from_json("not json"), bench::ConfigError);
    CHECK_THROWS_AS(bench::config_from_json(R"({"grid": {"transforms": ["haar"]}})"), bench::ConfigError);
    CHECK_THROWS_AS(bench::load_config("/nonexistent/cfg.json"), bench::ConfigError);
  }

  TEST_CASE("round trip") {
    auto cfg = tiny_config();
    cfg.grid.transforms = {numkit::TransformKind::WHT};
    const auto back = bench::config_from_json(bench::config_to_json(cfg));
    CHECK(bench::config_to_json(back) == bench::config_to_json(cfg));
  }
}

TEST_SUITE("grid") {
  TEST_CASE("one cell, two seeds, paired trials") {
    const auto recs = bench::run_grid(tiny_config());
    REQUIRE(recs.size() == 1);
    const auto& r = recs[0];
    REQUIRE(r.ladmm.size() == 2);
    REQUIRE(r.iladmm.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(r.ladmm[i].instance_seed == r.iladmm[i].instance_seed);
      CHECK(r.ladmm[i].error.empty());
    }
    const double mean1 = (r.ladmm[0].iters + r.ladmm[1].iters) / 2.0;
    const double mean2 = (r.iladmm[0].iters + r.iladmm[1].iters) / 2.0;
    CHECK(r.agg_ladmm.mean_iters == mean1);
    CHECK(r.agg_iladmm.mean_iters == mean2);
    CHECK(std::abs(r.ratio - mean2 / mean1) <= 1e-12);
    CHECK(r.alpha == 0.28);
  }

  TEST_CASE("alpha sweep covers the configured weights on shared instances") {
    auto cfg = tiny_config();
    cfg.seeds = {4};
    const auto recs = bench::run_alpha_sweep(cfg);
    REQUIRE(recs.size() == cfg.solver.alpha_sweep.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(recs[i].alpha == cfg.solver.alpha_sweep[i]);
      CHECK(recs[i].ladmm[0].iters == recs[0].ladmm[0].iters);
      CHECK(recs[i].iladmm[0].instance_seed == recs[0].ladmm[0].instance_seed);
    }
  }

  TEST_CASE("output does not depend on the thread count") {
    auto cfg = tiny_config();
    cfg.grid.q_ratios = {0.6, 0.8};
    cfg.threads = 1;
    const auto a = bench::format_csv(bench::run_grid(cfg));
    cfg.threads = 3;
    const auto b = bench::format_csv(bench::run_grid(cfg));
    const auto c = bench::format_csv(bench::run_grid(cfg));
    CHECK(a == b);
    CHECK(b == c);
  }

  TEST_CASE("a failing cell is recorded and the grid continues") {
    auto cfg = tiny_config();
    cfg.grid.sizes = {16, 12};
    cfg.grid.transforms = {numkit::TransformKind::WHT};
    const auto recs = bench::run_grid(cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].error.empty());
    CHECK_FALSE(recs[1].error.empty());
  }
}

TEST_SUITE("output") {
  TEST_CASE("csv layout, sentinel and ratio column") {
    auto cfg = tiny_config();
    cfg.grid.q_ratios = {0.8};
    auto recs = bench::run_grid(cfg);
    cfg.solver.max_iter = 2;
    auto capped = bench::run_grid(cfg);
    recs.insert(recs.end(), capped.begin(), capped.end());
    const auto rows = parse_csv(bench::format_csv(recs));
    REQUIRE(rows.size() == 3);
    const std::vector<std::string> header{"m", "n", "r", "nnz_ratio", "q_ratio", "transform", "q_over_dof",
                                          "relL_ladmm", "relS_ladmm", "iter1", "relL_iladmm", "relS_iladmm",
                                          "iter2", "ratio"};
    CHECK(rows[0] == header);
    CHECK(rows[1][9] != "-");
    const double iter1 = std::stod(rows[1][9]), iter2 = std::stod(rows[1][12]);
    CHECK(std::stod(rows[1][13]) == doctest::Approx(iter2 / iter1).epsilon(2e-3));
    CHECK(rows[2][9] == "-");
    CHECK(rows[2][12] == "-");
    CHECK(rows[2][13] == "-");
    const auto sweep_rows = parse_csv(bench::format_csv(recs, true));
    CHECK(sweep_rows[0].back() == "alpha");
  }

  TEST_CASE("empty input writes nothing") {
    const auto dir = temp_dir("empty");
    CHECK_THROWS_AS(bench::emit_csv({}, dir / "x.csv"), bench::OutputError);
    CHECK_FALSE(fs::exists(dir / "x.csv"));
    CHECK_THROWS_AS(bench::emit_plot_data({}, dir / "x.dat"), bench::OutputError);
    CHECK_FALSE(fs::exists(dir / "x.dat"));
  }

  TEST_CASE("files, plot data and records") {
    const auto dir = temp_dir("files");
    const auto cfg = tiny_config();
    const auto recs = bench::run_grid(cfg);
    bench::emit_csv(recs, dir / "g.csv");
    bench::emit_plot_data(recs, dir / "g.dat");
    bench::emit_records_json(recs, cfg, dir / "g.json");
    CHECK(slurp(dir / "g.csv") == bench::format_csv(recs));
    const auto plot = slurp(dir / "g.dat");
    CHECK(plot.rfind("# cell", 0) == 0);
    CHECK(plot.find(recs[0].cell.key()) != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir / "g.json"));
    CHECK(j["environment"]["rng"] == std::string(numkit::SeededRng::kAlgorithmId));
    CHECK(j["environment"]["version"] == bench::version());
    CHECK(j["records"][0]["ladmm"].size() == 2);
    CHECK(j["records"][0]["ladmm"][0].contains("wall_time"));
    CHECK_THROWS_AS(bench::emit_csv(recs, "/proc/definitely/not/here.csv"), bench::OutputError);
  }
}

TEST_SUITE("verify") {
  TEST_CASE("small-fixture suite passes") {
    for (const auto& r : bench::run_verify_suite()) {
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed);
    }
  }

  TEST_CASE("exceptions become failures") {
    const auto r = bench::timed_check("boom", []() -> bench::CheckResult { throw std::runtime_error("x"); });
    CHECK_FALSE(r.passed);
    CHECK(r.name == "boom");
  }
}
