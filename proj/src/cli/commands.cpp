#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "solq/cli/cli.hpp"
#include "solq/csv.hpp"
#include "solq/ensemble/checks.hpp"
#include "solq/ensemble/lattice.hpp"
#include "solq/ensemble/observables.hpp"
#include "solq/epr/entangled.hpp"
#include "solq/errors.hpp"
#include "solq/kernels/kernels.hpp"
#include "solq/parallel.hpp"
#include "solq/qubit/chsh.hpp"
#include "solq/qubit/dichotomic.hpp"
#include "solq/qubit/gates.hpp"
#include "solq/rng.hpp"
#include "solq/soliton/profile_io.hpp"
#include "solq/soliton/shooting.hpp"
#include "solq/soliton/spin.hpp"
#include "solq/wiener/wiener.hpp"

namespace solq::cli {
namespace {

using nlohmann::json;

// Documented constant in the ensemble/quadrature mean comparison budget
// C * (v0 / domain volume) * scale. The cross-trial overlap noise scales like
// sqrt(v0/volume), so C = 100 keeps the budget at ~5 sigma of that noise for
// the default geometry while staying first order in v0/volume.
constexpr double kMeanAgreementConstant = 100.0;

std::string timestamp_label() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
    char buf[64];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_utc);
    return std::string(buf) + "-" + std::to_string(ms.count());
}

soliton::ModelParams model_from(const RunConfig& cfg) {
    soliton::ModelParams p;
    p.ell0 = cfg.ell0;
    p.lambda = cfg.lambda;
    p.omega = cfg.omega;
    p.hbar = cfg.hbar;
    p.c = cfg.c;
    return p;
}

soliton::ShootingConfig shooting_from(const RunConfig& cfg) {
    soliton::ShootingConfig s;
    s.c2_lo = cfg.c2_lo;
    s.c2_hi = cfg.c2_hi;
    s.tolerance = cfg.shoot_tol;
    return s;
}

struct SolvedProfile {
    soliton::RadialProfile profile;
    soliton::ModelParams params;
};

SolvedProfile solve_normalized(const RunConfig& cfg) {
    const auto params = model_from(cfg);
    const auto grid = soliton::default_grid(params);
    const auto raw = soliton::shoot_ground_state(params, shooting_from(cfg), grid);
    auto [profile, scaled] = soliton::normalize_profile(raw, params);
    return {std::move(profile), scaled};
}

ensemble::EnsembleConfig ensemble_from(const RunConfig& cfg, double domain_length) {
    ensemble::EnsembleConfig ec;
    ec.n_particles = cfg.n_particles;
    ec.n_trials = cfg.n_trials;
    ec.domain = ensemble::Box{{0.0}, {domain_length}};
    ec.proper_volume = 2.0 * cfg.support_radius;
    ec.cell_volume = cfg.cell_ratio * ec.proper_volume;
    ec.packing_alpha = cfg.packing_alpha;
    ec.seed = cfg.seed;
    return ec;
}

// ---------------------------------------------------------------------------

void cmd_soliton_solve(const RunConfig& cfg, RunReport& report) {
    const auto solved = solve_normalized(cfg);
    const auto& profile = solved.profile;
    const auto& params = solved.params;

    soliton::save_profile(profile, params, report.run_dir / "profile.csv");
    report.tables["profile"] = "profile.csv";

    const auto asym = soliton::decay_constants(params);
    const auto fit = soliton::tail_fit(profile, 0.55 * profile.tail_start,
                                       0.95 * profile.tail_start, params);
    report.checks.add("shooting_converged", true, profile.c2, 0.0, "bisected C2");
    report.checks.add("normalized", std::abs(profile.norm - params.hbar) <= 1e-9 * params.hbar,
                      profile.norm, params.hbar, "radial norm vs hbar");
    const double nu_rel = std::abs(fit.constants.nu - asym.nu) / asym.nu;
    report.checks.add("tail_decay_rate", nu_rel <= 0.02, fit.constants.nu, asym.nu,
                      "fitted nu vs analytic, 2% tolerance");
    report.checks.add("tail_g_law", fit.max_rel_g_dev <= 0.01, fit.max_rel_g_dev, 0.01,
                      "max |g + f'/B| / max |g| in the fit window");
}

void cmd_soliton_spin(const RunConfig& cfg, RunReport& report) {
    const auto solved = solve_normalized(cfg);
    const auto spin = soliton::spin_expectation(solved.profile, solved.params);
    const auto quad = soliton::spin_quadrature_3d(solved.profile);
    const double hb = solved.params.hbar;

    CsvWriter csv({"component", "closed_form", "quadrature_3d"});
    const char* names[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
        csv.cell(std::string(names[i])).cell(spin[i]).cell(quad[i]);
        csv.end_row();
    }
    csv.write(report.run_dir / "spin.csv");
    report.tables["spin"] = "spin.csv";

    report.checks.add("spin_z", std::abs(spin[2] - 0.5 * hb) <= 1e-6 * hb, spin[2], 0.5 * hb);
    report.checks.add("spin_transverse",
                      std::abs(quad[0]) <= 1e-10 * hb && std::abs(quad[1]) <= 1e-10 * hb,
                      std::max(std::abs(quad[0]), std::abs(quad[1])), 1e-10 * hb);
    const double rel = std::abs(quad[2] - spin[2]) / (0.5 * hb);
    report.checks.add("spin_reduction_vs_quadrature", rel <= 1e-6, rel, 1e-6,
                      "closed form vs 3d spherical quadrature");
}

void cmd_ensemble_born(const RunConfig& cfg, RunReport& report) {
    const int n_axis_cells = cfg.n_particles == 1 ? cfg.n_cells : cfg.n_cells;
    ensemble::EnsembleConfig ec =
        ensemble_from(cfg, n_axis_cells * cfg.cell_ratio * 2.0 * cfg.support_radius);
    const auto profile = ensemble::BumpProfile::standard(1, cfg.support_radius, cfg.hbar);
    const auto trials = ensemble::sample_trials(ec, profile, cfg.workers);

    ensemble::CellPartition cells;
    cells.lo = 0.0;
    cells.n_cells = n_axis_cells;
    cells.width = ec.cell_volume;
    const auto born = ensemble::born_rule_check(ec, trials, profile, cells, cfg.workers);

    CsvWriter csv({"cell_index", "rho_cell", "freq", "bound"});
    for (const auto& row : born.rows) {
        csv.cell(row.cell_index).cell(row.scaled_density).cell(row.freq).cell(born.bound);
        csv.end_row();
    }
    csv.write(report.run_dir / "density.csv");
    report.tables["density"] = "density.csv";

    report.checks.add("born_rule_cells", born.pass, born.max_deviation, born.bound,
                      "max cell deviation vs statistical + cross-term budget");
}

void cmd_ensemble_observable(const RunConfig& cfg, RunReport& report) {
    RunConfig base = cfg;
    base.n_particles = 1;
    const double domain_length = 4000.0 * cfg.support_radius;
    ensemble::EnsembleConfig ec = ensemble_from(base, domain_length);
    ec.cell_volume = 100.0 * ec.proper_volume;
    ec.carrier = {cfg.carrier_k};
    const auto profile = ensemble::BumpProfile::standard(1, cfg.support_radius, cfg.hbar);
    const auto trials = ensemble::sample_trials(ec, profile, cfg.workers);

    const std::size_t per_r = 25;
    ensemble::GridSpec grid{{ensemble::GridAxis{
        0.0, domain_length, std::size_t(domain_length / cfg.support_radius) * per_r + 1}}};
    const auto psi = ensemble::assemble_wavefunction(trials, profile, grid);
    const auto means = ensemble::observable_mean(trials, profile,
                                                 ensemble::Generator::translation, 0, psi,
                                                 cfg.workers);

    CsvWriter csv({"generator", "ensemble_mean", "quadrature_mean", "target"});
    csv.cell(std::string("translation"))
        .cell(means.ensemble_mean)
        .cell(means.quadrature_mean)
        .cell(cfg.hbar * cfg.carrier_k);
    csv.end_row();
    csv.write(report.run_dir / "observable.csv");
    report.tables["observable"] = "observable.csv";

    const double target = cfg.hbar * cfg.carrier_k;
    report.checks.add("per_particle_momentum",
                      std::abs(means.per_particle[0] - target) <= 0.01 * std::abs(target),
                      means.per_particle[0], target, "within 1% of hbar k");
    const double budget = kMeanAgreementConstant * (ec.proper_volume / domain_length) *
                          std::abs(target);
    report.checks.add("mean_route_agreement",
                      std::abs(means.ensemble_mean - means.quadrature_mean) <= budget,
                      std::abs(means.ensemble_mean - means.quadrature_mean), budget,
                      "ensemble vs quadrature route");
}

void cmd_ensemble_chebyshev(const RunConfig& cfg, RunReport& report) {
    RunConfig base = cfg;
    if (base.n_trials > 2000) base.n_trials = 1000; // quadratic-cost guard scale
    ensemble::EnsembleConfig ec =
        ensemble_from(base, 10.0 * base.cell_ratio * 2.0 * base.support_radius);
    const auto profile = ensemble::BumpProfile::standard(1, cfg.support_radius, cfg.hbar);
    const auto cheb = ensemble::chebyshev_bound_check(ec, profile, cfg.repetitions, cfg.workers);

    CsvWriter csv({"bound", "exceed_freq", "sigma_binomial", "repetitions"});
    csv.cell(cheb.bound)
        .cell(cheb.exceed_freq)
        .cell(cheb.sigma_binomial)
        .cell((long long)(cheb.repetitions));
    csv.end_row();
    csv.write(report.run_dir / "chebyshev.csv");
    report.tables["chebyshev"] = "chebyshev.csv";

    report.checks.add("chebyshev_exceedance", cheb.pass, cheb.exceed_freq,
                      cheb.bound + 3.0 * cheb.sigma_binomial,
                      "cross-term exceedance frequency vs bound");
}

void cmd_ensemble_lattice(const RunConfig& cfg, RunReport& report) {
    const double spacing = cfg.lattice_spacing_factor * cfg.ell0;
    const double k = 2.0 * M_PI * double(cfg.lattice_mode) / spacing;
    auto profile = ensemble::BumpProfile::standard(
        1, cfg.lattice_tail_factor * spacing, cfg.hbar);
    const auto demo =
        ensemble::lattice_plane_wave_demo(profile, spacing, k, cfg.lattice_nodes);

    CsvWriter csv({"x", "re", "im"});
    for (std::size_t i = 0; i < demo.samples.size(); i += 8) {
        csv.cell(demo.sample_axis.point(i)).cell(demo.samples[i].real()).cell(
            demo.samples[i].imag());
        csv.end_row();
    }
    csv.write(report.run_dir / "lattice.csv");
    report.tables["lattice"] = "lattice.csv";

    report.checks.add("plane_wave_fit", demo.fit_error < 0.05, demo.fit_error, 0.05,
                      "relative L2 misfit over the central region");
    report.checks.add("fitted_amplitude_nonzero", std::abs(demo.fitted_amplitude) > 0.0,
                      std::abs(demo.fitted_amplitude), 0.0);
}

void cmd_wiener_check(const RunConfig& cfg, RunReport& report) {
    using std::complex;
    struct Case {
        const char* name;
        std::function<complex<double>(double)> f;
    };
    const std::vector<Case> cases{
        {"constant_one", [](double) { return complex<double>(1.0, 0.0); }},
        {"sqrt2_sin_pi_s",
         [](double s) { return complex<double>(M_SQRT2 * std::sin(M_PI * s), 0.0); }},
        {"exp_2pi_i_s", [](double s) { return std::polar(1.0, 2.0 * M_PI * s); }},
    };

    CsvWriter csv({"function", "riemann_norm", "mc_mean", "std_error", "z_score"});
    bool all = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto psi = wiener::SampledFunction::from(cfg.intervals, cases[i].f);
        const auto rep = wiener::unitarity_check(psi, std::size_t(cfg.n_paths),
                                                 cfg.seed + i, cfg.workers);
        csv.cell(std::string(cases[i].name))
            .cell(rep.riemann_norm)
            .cell(rep.mc_mean)
            .cell(rep.std_error)
            .cell(rep.z_score);
        csv.end_row();
        report.checks.add(std::string("unitarity_") + cases[i].name, rep.pass,
                          rep.mc_mean, rep.riemann_norm, "two sides within 3 standard errors");
        all = all && rep.pass;
    }
    csv.write(report.run_dir / "wiener.csv");
    report.tables["wiener"] = "wiener.csv";

    // Brownian covariance at fixed grid pairs vs min(s, s').
    const std::vector<std::pair<double, double>> pairs{
        {0.1, 0.3}, {0.3, 0.7}, {0.5, 0.5}, {0.2, 0.9}, {0.7, 0.8},
        {0.15, 0.95}, {1.0, 1.0}, {0.05, 0.6}, {0.4, 0.45}, {0.25, 0.75}};
    const std::size_t m_count = cfg.intervals;
    std::vector<std::size_t> idx;
    for (const auto& [s1, s2] : pairs) {
        idx.push_back(std::size_t(std::llround(s1 * double(m_count))));
        idx.push_back(std::size_t(std::llround(s2 * double(m_count))));
    }
    struct Acc {
        std::array<double, 10> sum{}, sum_sq{};
    };
    const Acc acc = parallel_reduce_ordered<Acc>(
        std::size_t(cfg.n_paths_cov), 1024, cfg.workers, Acc{},
        [&](std::size_t lo, std::size_t hi) {
            Acc a;
            for (std::size_t p = lo; p < hi; ++p) {
                const auto path = wiener::sample_brownian(m_count, cfg.seed ^ 0xc0f, p);
                for (std::size_t q = 0; q < pairs.size(); ++q) {
                    const double prod =
                        path.values[idx[2 * q]] * path.values[idx[2 * q + 1]];
                    a.sum[q] += prod;
                    a.sum_sq[q] += prod * prod;
                }
            }
            return a;
        },
        [](Acc a, Acc b) {
            for (std::size_t q = 0; q < a.sum.size(); ++q) {
                a.sum[q] += b.sum[q];
                a.sum_sq[q] += b.sum_sq[q];
            }
            return a;
        });

    CsvWriter cov({"s1", "s2", "covariance", "expected", "z_score"});
    const double n = double(cfg.n_paths_cov);
    bool cov_pass = true;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
        const double mean = acc.sum[q] / n;
        const double var = (acc.sum_sq[q] - n * mean * mean) / (n - 1.0);
        const double se = std::sqrt(std::max(var, 0.0) / n);
        const double expect = std::min(pairs[q].first, pairs[q].second);
        const double z = se > 0.0 ? (mean - expect) / se : 0.0;
        cov.cell(pairs[q].first).cell(pairs[q].second).cell(mean).cell(expect).cell(z);
        cov.end_row();
        cov_pass = cov_pass && std::abs(z) <= 3.0;
    }
    cov.write(report.run_dir / "covariance.csv");
    report.tables["covariance"] = "covariance.csv";
    report.checks.add("brownian_covariance", cov_pass, 0.0, 3.0,
                      "min(s,s') at 10 grid pairs within 3 sigma");
}

void cmd_epr_exact(const RunConfig& cfg, RunReport& report) {
    const auto solved = solve_normalized(cfg);
    const auto pair = epr::build_entangled_pair(solved.profile, solved.params);

    const double hb2 = solved.params.hbar * solved.params.hbar;
    report.checks.add("pair_normalization",
                      std::abs(pair.norm_pair - hb2) <= 1e-6 * hb2, pair.norm_pair, hb2,
                      "two-particle norm vs hbar^2");

    std::vector<double> angles(std::size_t(cfg.angle_points));
    for (std::size_t i = 0; i < angles.size(); ++i)
        angles[i] = M_PI * double(i) / double(angles.size() - 1);
    const auto rows = epr::correlation_curve(pair, angles, 0, cfg.seed);

    CsvWriter csv({"theta", "qm", "soliton_exact", "soliton_mc", "mc_stderr"});
    double max_dev = 0.0;
    for (const auto& row : rows) {
        csv.cell(row.theta).cell(row.qm).cell(row.soliton_exact).cell(row.soliton_mc).cell(
            row.mc_stderr);
        csv.end_row();
        max_dev = std::max(max_dev, std::abs(row.soliton_exact - (-std::cos(row.theta))));
    }
    csv.write(report.run_dir / "correlation_curve.csv");
    report.tables["correlation_curve"] = "correlation_curve.csv";

    report.checks.add("epr_coincidence", max_dev < 1e-6, max_dev, 1e-6,
                      "max |soliton_exact - (-cos theta)| over the sweep");
}

void cmd_epr_mc(const RunConfig& cfg, RunReport& report) {
    const auto solved = solve_normalized(cfg);
    const auto pair = epr::build_entangled_pair(solved.profile, solved.params);

    CsvWriter csv({"pair_index", "a_dot_b", "estimate", "std_error", "z_score"});
    int within = 0;
    RngStream dir_rng(cfg.seed, 0x64697273ull, 0);
    for (int i = 0; i < cfg.mc_pairs; ++i) {
        // isotropic random directions
        auto draw = [&]() {
            const double z = dir_rng.uniform(-1.0, 1.0);
            const double phi = dir_rng.uniform(0.0, 2.0 * M_PI);
            const double st = std::sqrt(1.0 - z * z);
            return epr::Direction{{st * std::cos(phi), st * std::sin(phi), z}};
        };
        const auto a = draw(), b = draw();
        const auto ens = epr::make_singlet_ensemble(pair, cfg.mc_trials,
                                                    splitmix64(cfg.seed + 7919 * (i + 1)));
        const auto mc = epr::soliton_spin_correlation_mc(ens, a, b);
        const double target = -a.dot(b);
        const double z = mc.std_error > 0.0 ? (mc.estimate - target) / mc.std_error : 0.0;
        if (std::abs(mc.estimate - target) <= 3.0 * mc.std_error) ++within;
        csv.cell((long long)(i)).cell(a.dot(b)).cell(mc.estimate).cell(mc.std_error).cell(z);
        csv.end_row();
    }
    csv.write(report.run_dir / "epr_mc.csv");
    report.tables["epr_mc"] = "epr_mc.csv";

    report.checks.add("mc_within_3se", within == cfg.mc_pairs, double(within),
                      double(cfg.mc_pairs), "every random pair within 3 standard errors");
}

void cmd_qubit_correlation(const RunConfig& cfg, RunReport& report) {
    CsvWriter csv({"theta1", "theta2", "analytic", "estimate", "stderr"});
    RngStream rng(cfg.seed, 0x7164ull, 0);
    int within = 0;
    for (int i = 0; i < cfg.delta_count; ++i) {
        const double t1 = rng.uniform(0.0, 2.0 * M_PI);
        const double t2 = rng.uniform(0.0, 2.0 * M_PI);
        const auto corr = qubit::dichotomic_correlation(t1, t2, cfg.n_samples,
                                                        cfg.seed + 31 * (i + 1), cfg.workers);
        if (std::abs(corr.estimate - corr.analytic) <= 3.0 * corr.std_error) ++within;
        csv.cell(t1).cell(t2).cell(corr.analytic).cell(corr.estimate).cell(corr.std_error);
        csv.end_row();
    }
    csv.write(report.run_dir / "qubit_correlation.csv");
    report.tables["qubit_correlation"] = "qubit_correlation.csv";

    const double frac = double(within) / double(cfg.delta_count);
    report.checks.add("triangle_law_coverage", frac >= 0.96, frac, 0.96,
                      "fraction of separations within 3 standard errors");
}

void cmd_qubit_chsh(const RunConfig& cfg, RunReport& report) {
    const auto model = qubit::chsh_model_from_name(cfg.chsh_model);
    const auto result = qubit::chsh_scan(model, cfg.chsh_resolution, cfg.workers);

    CsvWriter csv({"model", "max_s", "a", "a_prime", "b", "b_prime", "resolution"});
    csv.cell(cfg.chsh_model)
        .cell(result.max_s)
        .cell(result.angles[0])
        .cell(result.angles[1])
        .cell(result.angles[2])
        .cell(result.angles[3])
        .cell((long long)(result.resolution));
    csv.end_row();
    csv.write(report.run_dir / "chsh.csv");
    report.tables["chsh"] = "chsh.csv";

    if (model == qubit::ChshModel::triangle) {
        report.checks.add("chsh_local_bound", result.max_s <= 2.0 + 1e-9, result.max_s,
                          2.0 + 1e-9, "local-model maximum stays at the classical bound");
        report.checks.add("chsh_bound_attained", result.max_s >= 2.0 - 1e-6, result.max_s,
                          2.0 - 1e-6);
    } else {
        report.checks.add("chsh_tsirelson", result.max_s >= 2.8274 && result.max_s <= 2.8285,
                          result.max_s, 2.0 * M_SQRT2, "cosine-model maximum at 2 sqrt 2");
    }
}

void cmd_qubit_circuit(const RunConfig& cfg, RunReport& report) {
    using namespace qubit;
    const SignalRule rule;

    const auto reg_plus = initialize_register_forced(cfg.circuit_bits, rule, +1);
    bool all_zero = true;
    for (const auto& b : reg_plus.bits) all_zero = all_zero && b.amplitude_pair[0] == 1.0;
    report.checks.add("init_green_all_zero", all_zero, all_zero ? 1.0 : 0.0, 1.0);

    const auto reg_minus = initialize_register_forced(cfg.circuit_bits, rule, -1);
    bool all_one = true;
    for (const auto& b : reg_minus.bits) all_one = all_one && b.amplitude_pair[1] == 1.0;
    report.checks.add("init_red_all_one", all_one, all_one ? 1.0 : 0.0, 1.0);

    long long zeros = 0;
    const long long reps = std::max<long long>(cfg.n_samples / 25, 1000);
    for (long long t = 0; t < reps; ++t) {
        const auto reg = initialize_register(1, rule, splitmix64(cfg.seed + t));
        if (reg.bits[0].amplitude_pair[0] == 1.0) ++zeros;
    }
    const double frac = double(zeros) / double(reps);
    report.checks.add("init_unbiased_signal", std::abs(frac - 0.5) <= 3.0 / std::sqrt(reps),
                      frac, 0.5, "fraction of |0> registers");

    const auto h0 = hadamard(prob_bit_zero());
    report.checks.add("hadamard_zero",
                      std::abs(h0.amplitude_pair[0] - M_SQRT1_2) < 1e-15 &&
                          std::abs(h0.amplitude_pair[1] - M_SQRT1_2) < 1e-15,
                      h0.amplitude_pair[0], M_SQRT1_2);
    const auto hq = hadamard(ProbBit{{M_SQRT1_2, M_SQRT1_2}});
    report.checks.add("hadamard_balanced_to_zero",
                      std::abs(hq.amplitude_pair[0] - 1.0) < 1e-15 &&
                          std::abs(hq.amplitude_pair[1]) < 1e-15,
                      hq.amplitude_pair[0], 1.0);

    bool involution = true;
    RngStream rng(cfg.seed, 0x636972ull, 0);
    for (int i = 0; i < 256; ++i) {
        const double angle = rng.uniform(0.0, 2.0 * M_PI);
        const ProbBit b{{std::cos(angle), std::sin(angle)}};
        const auto hh = hadamard(hadamard(b));
        const auto cc = cnot(1, cnot(1, b));
        involution = involution &&
                     std::abs(hh.amplitude_pair[0] - b.amplitude_pair[0]) < 1e-14 &&
                     std::abs(hh.amplitude_pair[1] - b.amplitude_pair[1]) < 1e-14 &&
                     cc.amplitude_pair[0] == b.amplitude_pair[0] &&
                     cc.amplitude_pair[1] == b.amplitude_pair[1];
    }
    report.checks.add("gate_involutions", involution, involution ? 1.0 : 0.0, 1.0,
                      "H^2 = CNOT1^2 = identity");

    const auto flipped = cnot(1, prob_bit_zero());
    report.checks.add("cnot_control_one_flips", flipped.amplitude_pair[1] == 1.0,
                      flipped.amplitude_pair[1], 1.0);
    const auto kept = cnot(0, hq);
    report.checks.add("cnot_control_zero_keeps",
                      kept.amplitude_pair[0] == hq.amplitude_pair[0] &&
                          kept.amplitude_pair[1] == hq.amplitude_pair[1],
                      1.0, 1.0);

    CsvWriter csv({"check", "pass"});
    for (const auto& c : report.checks.checks) {
        csv.cell(c.name).cell((long long)(c.pass ? 1 : 0));
        csv.end_row();
    }
    csv.write(report.run_dir / "circuit.csv");
    report.tables["circuit"] = "circuit.csv";
}

json config_echo(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["kernels_requested"] = cfg.kernels;
    j["kernels_active"] = kernels::active().name;
    j["ell0"] = cfg.ell0;
    j["lambda"] = cfg.lambda;
    j["omega"] = cfg.omega;
    j["hbar"] = cfg.hbar;
    j["c"] = cfg.c;
    j["n_particles"] = cfg.n_particles;
    j["n_trials"] = cfg.n_trials;
    j["support_radius"] = cfg.support_radius;
    j["cell_ratio"] = cfg.cell_ratio;
    j["n_cells"] = cfg.n_cells;
    j["repetitions"] = cfg.repetitions;
    j["carrier_k"] = cfg.carrier_k;
    j["intervals"] = cfg.intervals;
    j["n_paths"] = cfg.n_paths;
    j["angle_points"] = cfg.angle_points;
    j["mc_trials"] = cfg.mc_trials;
    j["n_samples"] = cfg.n_samples;
    j["chsh_model"] = cfg.chsh_model;
    j["chsh_resolution"] = cfg.chsh_resolution;
    return j;
}

} // namespace

RunReport execute(const RunConfig& cfg) {
    if (!kernels::select(cfg.kernels))
        throw std::invalid_argument("unknown or unavailable kernel variant: " + cfg.kernels);

    RunReport report;
    report.config = cfg;
    const std::string label = cfg.label.empty() ? timestamp_label() : cfg.label;
    report.run_dir = cfg.output_dir / cfg.command / label;
    std::filesystem::create_directories(report.run_dir);

    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.command == "soliton-solve") cmd_soliton_solve(cfg, report);
    else if (cfg.command == "soliton-spin") cmd_soliton_spin(cfg, report);
    else if (cfg.command == "ensemble-born") cmd_ensemble_born(cfg, report);
    else if (cfg.command == "ensemble-observable") cmd_ensemble_observable(cfg, report);
    else if (cfg.command == "ensemble-chebyshev") cmd_ensemble_chebyshev(cfg, report);
    else if (cfg.command == "ensemble-lattice") cmd_ensemble_lattice(cfg, report);
    else if (cfg.command == "wiener-check") cmd_wiener_check(cfg, report);
    else if (cfg.command == "epr-exact") cmd_epr_exact(cfg, report);
    else if (cfg.command == "epr-mc") cmd_epr_mc(cfg, report);
    else if (cfg.command == "qubit-correlation") cmd_qubit_correlation(cfg, report);
    else if (cfg.command == "qubit-chsh") cmd_qubit_chsh(cfg, report);
    else if (cfg.command == "qubit-circuit") cmd_qubit_circuit(cfg, report);
    else throw std::invalid_argument("unknown command: " + cfg.command);
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

    json j;
    j["version"] = kVersion;
    j["config"] = config_echo(cfg);
    j["wall_ms"] = report.wall_ms;
    j["checks"] = json::array();
    for (const auto& c : report.checks.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"value", c.value},
                               {"bound", c.bound},
                               {"note", c.note}});
    }
    j["tables"] = report.tables;
    j["all_pass"] = report.checks.all_pass();
    std::ofstream out(report.run_dir / "report.json");
    out << j.dump(2) << "\n";

    for (const auto& c : report.checks.checks)
        std::printf("[%s] %s value=%.12g bound=%.12g %s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.bound, c.note.c_str());
    std::printf("report: %s\n", (report.run_dir / "report.json").c_str());
    return report;
}

int run_main(int argc, const char* const* argv) {
    RunConfig cfg;
    try {
        cfg = parse_config(argc, argv);
    } catch (const CLI::CallForHelp&) {
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        const auto report = execute(cfg);
        return report.checks.all_pass() ? exit_ok : exit_check_failed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const CostGuardError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace solq::cli
