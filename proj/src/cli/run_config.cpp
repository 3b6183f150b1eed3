#include <iostream>

#include <CLI11.hpp>

#include "solq/cli/cli.hpp"

namespace solq::cli {
namespace {

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "soliton-solve",     "soliton-spin",     "ensemble-born", "ensemble-observable",
        "ensemble-chebyshev", "ensemble-lattice", "wiener-check",  "epr-exact",
        "epr-mc",            "qubit-correlation", "qubit-chsh",    "qubit-circuit"};
    return names;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->set_config("--config", "", "flat key = value configuration file");
    cmd->add_option("--seed", cfg.seed, "base RNG seed")->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker thread count")->capture_default_str();
    cmd->add_option("--label", cfg.label, "run directory label (default: timestamp)");
    cmd->add_option("--output-dir", cfg.output_dir, "output root directory")
        ->envname("SOLQ_OUTPUT_DIR")
        ->capture_default_str();
    cmd->add_option("--kernels", cfg.kernels, "kernel variant: auto|scalar|avx2")
        ->capture_default_str();
}

void add_model(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--ell0", cfg.ell0, "characteristic soliton size")->capture_default_str();
    cmd->add_option("--lambda", cfg.lambda, "self-coupling")->capture_default_str();
    cmd->add_option("--omega", cfg.omega, "stationary frequency")->capture_default_str();
    cmd->add_option("--hbar", cfg.hbar, "normalization constant")->capture_default_str();
    cmd->add_option("--c", cfg.c, "speed constant")->capture_default_str();
}

void add_shooting(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--c2-lo", cfg.c2_lo, "bisection bracket low end")->capture_default_str();
    cmd->add_option("--c2-hi", cfg.c2_hi, "bisection bracket high end")->capture_default_str();
    cmd->add_option("--shoot-tol", cfg.shoot_tol, "bisection tolerance")->capture_default_str();
}

} // namespace

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"stochastic-soliton quantum mechanics simulator"};
    app.require_subcommand(1);

    for (const auto& name : command_names()) {
        CLI::App* cmd = app.add_subcommand(name, "");
        add_common(cmd, cfg);
        if (name.rfind("soliton", 0) == 0 || name == "epr-exact" || name == "epr-mc") {
            add_model(cmd, cfg);
            add_shooting(cmd, cfg);
        }
        if (name.rfind("ensemble", 0) == 0) {
            cmd->add_option("--n-particles", cfg.n_particles, "particles per trial")
                ->capture_default_str();
            cmd->add_option("--n-trials", cfg.n_trials, "ensemble size")->capture_default_str();
            cmd->add_option("--support-radius", cfg.support_radius, "bump support radius")
                ->capture_default_str();
            cmd->add_option("--cell-ratio", cfg.cell_ratio, "cell width / proper volume")
                ->capture_default_str();
            cmd->add_option("--cells", cfg.n_cells, "cells per particle axis")
                ->capture_default_str();
            cmd->add_option("--alpha", cfg.packing_alpha, "packing factor")
                ->capture_default_str();
            cmd->add_option("--repetitions", cfg.repetitions, "ensemble repetitions")
                ->capture_default_str();
            cmd->add_option("--carrier-k", cfg.carrier_k, "carrier wavevector")
                ->capture_default_str();
        }
        if (name == "ensemble-lattice") {
            cmd->add_option("--nodes", cfg.lattice_nodes, "lattice node count")
                ->capture_default_str();
            cmd->add_option("--spacing", cfg.lattice_spacing_factor,
                            "lattice spacing in units of ell0")
                ->capture_default_str();
            cmd->add_option("--mode", cfg.lattice_mode, "carrier reciprocal-mode index")
                ->capture_default_str();
            cmd->add_option("--tail-factor", cfg.lattice_tail_factor,
                            "envelope extent in units of the spacing")
                ->capture_default_str();
            cmd->add_option("--ell0", cfg.ell0, "core scale")->capture_default_str();
        }
        if (name == "wiener-check") {
            cmd->add_option("--intervals", cfg.intervals, "partition size of [0,1]")
                ->capture_default_str();
            cmd->add_option("--paths", cfg.n_paths, "path pairs for the unitarity check")
                ->capture_default_str();
            cmd->add_option("--paths-cov", cfg.n_paths_cov, "paths for the covariance check")
                ->capture_default_str();
        }
        if (name.rfind("epr", 0) == 0) {
            cmd->add_option("--angles", cfg.angle_points, "sweep resolution")
                ->capture_default_str();
            cmd->add_option("--mc-trials", cfg.mc_trials, "trials per MC estimate")
                ->capture_default_str();
            cmd->add_option("--pairs", cfg.mc_pairs, "random direction pairs")
                ->capture_default_str();
        }
        if (name == "qubit-correlation") {
            cmd->add_option("--samples", cfg.n_samples, "samples per correlation")
                ->capture_default_str();
            cmd->add_option("--deltas", cfg.delta_count, "random angle separations")
                ->capture_default_str();
        }
        if (name == "qubit-chsh") {
            cmd->add_option("--model", cfg.chsh_model, "triangle|qm_cosine")
                ->capture_default_str();
            cmd->add_option("--resolution", cfg.chsh_resolution, "scan grid per angle")
                ->capture_default_str();
        }
        if (name == "qubit-circuit") {
            cmd->add_option("--bits", cfg.circuit_bits, "register width")->capture_default_str();
            cmd->add_option("--samples", cfg.n_samples, "signal sampling repetitions")
                ->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        throw;
    }
    for (const auto& name : command_names())
        if (app.got_subcommand(name)) cfg.command = name;
    return cfg;
}

} // namespace solq::cli
