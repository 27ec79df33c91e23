#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "muhs/io.hpp"

using namespace muhs;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "muhs_io_tests";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream out(p);
    out << text;
    return p;
}

const char* kGoodConfig = R"({
  "grid_n": 64,
  "gamma": 0.3,
  "initial": {
    "alpha": 1.0,
    "u0": {"kind": "hat"},
    "rho0": {"kind": "step", "left": 2.0, "right": 1.0}
  },
  "mollifier_n": 8,
  "mollifier_list": [4, 8, 16],
  "time": {"t_end": 0.5, "cfl": 0.3, "dt_max": 0.01, "record_every": 4, "fixed_dt": 0.001},
  "probe_times": [0.25, 0.5],
  "out_dir": "out",
  "seed": 42,
  "declare_global": true,
  "dealias": true
})";

}  // namespace

TEST_CASE("load_config parses a full config") {
    const auto p = write_temp("good.json", kGoodConfig);
    const ExperimentConfig cfg = load_config(p.string());
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.gamma == 0.3);
    CHECK(cfg.initial.alpha == 1.0);
    CHECK(cfg.initial.u0.kind == Profile::Kind::PiecewiseLinear);
    CHECK(cfg.initial.rho0.kind == Profile::Kind::PiecewiseConstant);
    CHECK(cfg.mollifier_n.value() == 8);
    CHECK(cfg.mollifier_list == std::vector<int>{4, 8, 16});
    CHECK(cfg.time.t_end == 0.5);
    CHECK(cfg.time.record_every == 4);
    CHECK(cfg.time.fixed_dt.value() == 0.001);
    CHECK(cfg.probe_times.size() == 2);
    CHECK(cfg.seed == 42);
    CHECK(cfg.declare_global);
    CHECK(cfg.dealias);
}

TEST_CASE("load_config rejects unknown keys with their path") {
    const auto p = write_temp("unknown.json", R"({
  "grid_n": 64,
  "initial": {"alpha": 0, "u0": {"kind": "hat"}, "rho0": {"kind": "constant", "value": 1}},
  "unexpected": 1
})");
    CHECK_THROWS_WITH_AS(load_config(p.string()),
                         doctest::Contains("unknown key 'unexpected'"), ConfigError);

    const auto q = write_temp("unknown2.json", R"({
  "grid_n": 64,
  "initial": {"alpha": 0, "u0": {"kind": "hat", "oops": 2}, "rho0": {"kind": "constant", "value": 1}}
})");
    CHECK_THROWS_WITH_AS(load_config(q.string()), doctest::Contains("oops"), ConfigError);
}

TEST_CASE("load_config reports the line of a syntax error") {
    const auto p = write_temp("broken.json", "{\n \"grid_n\": 64,\n \"gamma\": oops\n}\n");
    CHECK_THROWS_WITH_AS(load_config(p.string()), doctest::Contains("line 3"), ConfigError);
}

TEST_CASE("load_config validates preconditions") {
    auto with = [](const std::string& name, const std::string& body) {
        return write_temp(name, body).string();
    };
    const std::string initial =
        R"("initial": {"alpha": 0, "u0": {"kind": "hat"}, "rho0": {"kind": "constant", "value": 1}})";

    CHECK_THROWS_AS(load_config(with("odd.json", "{\"grid_n\": 65, " + initial + "}")), ConfigError);
    CHECK_THROWS_AS(load_config(with("small.json", "{\"grid_n\": 2, " + initial + "}")), ConfigError);
    CHECK_THROWS_AS(
        load_config(with("cfl.json",
                         "{\"grid_n\": 64, " + initial + ", \"time\": {\"cfl\": 1.5}}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(with("probe.json", "{\"grid_n\": 64, " + initial +
                                           ", \"time\": {\"t_end\": 1.0}, \"probe_times\": [2.0]}")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(with("moll.json", "{\"grid_n\": 64, " + initial + ", \"mollifier_n\": 1}")),
        ConfigError);
    CHECK_THROWS_AS(load_config(with("missing.json", "{\"grid_n\": 64}")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-17, -2.5e300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("archive writers produce the documented files") {
    auto g = make_grid(32);
    State s0{sample(g, [](double x) { return 0.1 * std::sin(2 * 3.14159265358979 * x); }),
             make_field(g, 1.0), 0, false};
    TimeStepConfig tcfg;
    tcfg.t_end = 0.1;
    tcfg.fixed_dt = 0.01;
    const TrajectoryRecord traj = run(s0, Params{0.0}, tcfg);

    const auto dir = std::filesystem::temp_directory_path() / "muhs_io_tests" / "arch";
    std::filesystem::remove_all(dir);
    const RunArchive a = make_archive_dir(dir.string());

    const auto p = write_temp("good2.json", kGoodConfig);
    const ExperimentConfig cfg = load_config(p.string());
    write_manifest(a, cfg, "command: test");
    write_diagnostics_csv(a, traj);
    write_trajectory_csv(a, traj);
    write_bounds_csv(a, traj);

    CHECK(std::filesystem::exists(dir / "manifest.txt"));
    CHECK(std::filesystem::exists(dir / "diagnostics.csv"));
    CHECK(std::filesystem::exists(dir / "trajectory.csv"));
    CHECK(std::filesystem::exists(dir / "bounds.csv"));

    std::ifstream diag(dir / "diagnostics.csv");
    std::string header;
    std::getline(diag, header);
    CHECK(header.find("t,mu0,energy") == 0);
    int rows = 0;
    for (std::string line; std::getline(diag, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == static_cast<int>(traj.snaps.size()));
}
