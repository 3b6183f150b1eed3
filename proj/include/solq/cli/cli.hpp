#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "solq/report.hpp"

namespace solq::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical failure.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_numerical = 3 };

struct RunConfig {
    std::string command;

    // global
    std::uint64_t seed = 12345;
    unsigned workers = 1;
    std::string label;
    std::filesystem::path output_dir = "runs";
    std::string kernels = "auto";

    // soliton model
    double ell0 = 1.0;
    double lambda = 4.0 * 3.14159265358979323846;
    double omega = 0.9;
    double hbar = 1.0;
    double c = 1.0;
    double c2_lo = 0.05;
    double c2_hi = 1.5;
    double shoot_tol = 1e-14;

    // ensemble
    int n_particles = 1;
    long long n_trials = 10000;
    double support_radius = 1.0;
    double cell_ratio = 100.0; // cell width over proper volume
    int n_cells = 20;
    double packing_alpha = 1.0;
    int repetitions = 200;
    double carrier_k = 1.5;

    // lattice
    int lattice_nodes = 1000;
    double lattice_spacing_factor = 20.0; // spacing in units of ell0
    int lattice_mode = 3;                 // carrier index on the reciprocal grid
    double lattice_tail_factor = 5.0;     // envelope extent in units of the spacing

    // wiener
    std::size_t intervals = 1024;
    long long n_paths = 10000;
    long long n_paths_cov = 100000;

    // epr
    int angle_points = 181;
    long long mc_trials = 10000;
    int mc_pairs = 20;

    // qubit
    long long n_samples = 100000;
    int delta_count = 50;
    std::string chsh_model = "triangle";
    int chsh_resolution = 128;
    int circuit_bits = 8;
};

// Parses argv (CLI flags override config-file keys; unknown keys error).
// Throws CLI11 parse errors; the caller maps them to exit_usage.
RunConfig parse_config(int argc, const char* const* argv);

struct RunReport {
    RunConfig config;
    CheckSet checks;
    std::map<std::string, std::string> tables; // name -> file name
    std::filesystem::path run_dir;
    double wall_ms = 0.0;
};

// Dispatches to the owning module, writes CSV tables and report.json under
// <output_dir>/<command>/<label or timestamp>/.
RunReport execute(const RunConfig& config);

int run_main(int argc, const char* const* argv);

} // namespace solq::cli
