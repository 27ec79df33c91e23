#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mollify.hpp"
#include "stepper.hpp"
#include "verify.hpp"

namespace muhs {

inline constexpr const char* kVersion = "1.0.0";

// Configuration or usage problem; CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExperimentConfig {
    int grid_n = 128;
    double gamma = 0.0;
    RoughInitialData initial;
    std::optional<int> mollifier_n;
    std::vector<int> mollifier_list;
    TimeStepConfig time;
    std::vector<double> probe_times;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool declare_global = false;
    bool dealias = false;

    std::string echo;  // normalized JSON text of the parsed config
};

// Parses and validates a JSON config file. Unknown keys are rejected; parse
// errors carry the line number. Throws ConfigError.
ExperimentConfig load_config(const std::string& path);

// Formats a double with 17 significant digits (lossless round trip).
std::string format_double(double v);

struct RunArchive {
    std::string dir;
};

RunArchive make_archive_dir(const std::string& dir);
void write_manifest(const RunArchive& a, const ExperimentConfig& cfg, const std::string& extra);
void write_diagnostics_csv(const RunArchive& a, const TrajectoryRecord& traj);
void write_trajectory_csv(const RunArchive& a, const TrajectoryRecord& traj);
void write_bounds_csv(const RunArchive& a, const TrajectoryRecord& traj);
void write_convergence_csv(const RunArchive& a, const ConvergenceReport& rep);
void write_convergence_summary(const RunArchive& a, const ConvergenceReport& rep);
void write_mollifier_inspect(const RunArchive& a, const Field& phi, const MollifyReport& rep,
                             int mollifier_n);

}  // namespace muhs
