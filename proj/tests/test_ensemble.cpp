#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "solq/ensemble/checks.hpp"
#include "solq/ensemble/lattice.hpp"
#include "solq/ensemble/observables.hpp"
#include "solq/errors.hpp"

using namespace solq;
using namespace solq::ensemble;

namespace {

EnsembleConfig config_1d(long long n_trials, double cell_ratio = 100.0, int n_cells = 20,
                         std::uint64_t seed = 42) {
    EnsembleConfig ec;
    ec.n_particles = 1;
    ec.n_trials = n_trials;
    ec.proper_volume = 2.0;
    ec.cell_volume = cell_ratio * ec.proper_volume;
    ec.domain = Box{{0.0}, {n_cells * ec.cell_volume}};
    ec.seed = seed;
    return ec;
}

} // namespace

TEST_CASE("single-particle field: compact support and center value") {
    const auto profile = BumpProfile::standard(1, 1.0);
    SolitonInstance inst;
    inst.center = {3.0};
    inst.phase = 0.0;
    CHECK(build_single_particle_field(profile, inst, {4.5}) == std::complex<double>(0.0, 0.0));
    CHECK(build_single_particle_field(profile, inst, {-1.0}) == std::complex<double>(0.0, 0.0));
    const auto at_center = build_single_particle_field(profile, inst, {3.0});
    CHECK(at_center.real() == doctest::Approx(profile.nu_k / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(at_center.imag() == 0.0);
}

TEST_CASE("single-particle field: norm integrates to hbar") {
    // quadrature oracle for the normalization, plus the closed form
    const auto profile = BumpProfile::standard(1, 1.7, 2.5);
    SolitonInstance inst;
    inst.center = {0.0};
    inst.phase = 1.234;
    const std::size_t n = 200001;
    const double lo = -2.0, hi = 2.0, h = (hi - lo) / double(n - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + double(i) * h;
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        acc += w * std::norm(build_single_particle_field(profile, inst, {x}));
    }
    CHECK(std::abs(acc - 2.5) / 2.5 < 1e-6);
    const double analytic = profile.amplitude() * profile.amplitude() * profile.shape_norm_sq();
    CHECK(analytic == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("sample_trial: deterministic, uniform, and respects packing limits") {
    const auto profile = BumpProfile::standard(1, 1.0);
    const auto ec = config_1d(10000);

    const auto t1 = sample_trial(ec, profile, 77);
    const auto t2 = sample_trial(ec, profile, 77);
    CHECK(t1.instances[0].center[0] == t2.instances[0].center[0]);
    CHECK(t1.instances[0].phase == t2.instances[0].phase);

    // chi^2 uniformity of centers over 20 bins at the 1% level (crit. 36.19)
    const auto trials = sample_trials(ec, profile);
    const double lo = 1.0, hi = ec.domain.hi[0] - 1.0;
    std::array<double, 20> bins{};
    for (const auto& t : trials) {
        int b = int((t.instances[0].center[0] - lo) / (hi - lo) * 20);
        b = std::clamp(b, 0, 19);
        bins[std::size_t(b)] += 1.0;
    }
    const double expected = double(ec.n_trials) / 20.0;
    double chi2 = 0.0;
    for (double c : bins) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 36.19);

    // two disjoint solitons cannot fit in a 3-radius box
    EnsembleConfig tight = ec;
    tight.n_particles = 2;
    tight.domain = Box{{0.0}, {3.0}};
    tight.cell_volume = 2.5;
    CHECK_THROWS_AS(sample_trial(tight, profile, 0), RejectionOverflowError);
}

TEST_CASE("sample_trials: worker count does not change the stream") {
    const auto profile = BumpProfile::standard(1, 1.0);
    const auto ec = config_1d(500);
    const auto a = sample_trials(ec, profile, 1);
    const auto b = sample_trials(ec, profile, 8);
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j].instances[0].center[0] == b[j].instances[0].center[0]);
        CHECK(a[j].instances[0].phase == b[j].instances[0].phase);
    }
}

TEST_CASE("assemble_wavefunction: single trial is the scaled profile") {
    const auto profile = BumpProfile::standard(1, 1.0);
    TrialConfiguration t;
    t.instances.push_back({1, {5.0}, 0.0, {}});
    GridSpec grid{{GridAxis{0.0, 10.0, 501}}};
    const auto psi = assemble_wavefunction({t}, profile, grid);
    for (std::size_t i = 0; i < grid.axes[0].n; ++i) {
        const auto expect =
            build_single_particle_field(profile, t.instances[0], {grid.axes[0].point(i)}) /
            std::sqrt(profile.hbar);
        CHECK(psi.re[i] == doctest::Approx(expect.real()).epsilon(1e-13));
        CHECK(psi.im[i] == doctest::Approx(expect.imag()).epsilon(1e-13));
    }
}

TEST_CASE("assemble_wavefunction: opposite phases cancel") {
    const auto profile = BumpProfile::standard(1, 1.0);
    TrialConfiguration t1, t2;
    t1.instances.push_back({1, {5.0}, 0.0, {}});
    t2.instances.push_back({1, {5.0}, M_PI, {}});
    GridSpec grid{{GridAxis{0.0, 10.0, 501}}};
    const auto psi = assemble_wavefunction({t1, t2}, profile, grid);
    for (std::size_t i = 0; i < grid.axes[0].n; ++i) {
        CHECK(std::abs(psi.re[i]) < 1e-15);
        CHECK(std::abs(psi.im[i]) < 1e-15);
    }
}

TEST_CASE("assemble_wavefunction: memory guard") {
    const auto profile = BumpProfile::standard(1, 1.0);
    TrialConfiguration t;
    t.instances.push_back({1, {5.0}, 0.0, {}});
    GridSpec grid{{GridAxis{0.0, 10.0, (std::size_t(1) << 27)}}};
    CHECK_THROWS_AS(assemble_wavefunction({t}, profile, grid), CostGuardError);
}

TEST_CASE("cell quadrature: zero field, unit single-soliton cell") {
    const auto profile = BumpProfile::standard(1, 1.0);
    TrialConfiguration t;
    t.instances.push_back({1, {5.0}, 0.3, {}});
    GridSpec grid{{GridAxis{0.0, 20.0, 2001}}};
    const auto psi = assemble_wavefunction({t}, profile, grid);

    CHECK(cell_density(psi, Box{{12.0}, {16.0}}) == 0.0);

    // support fully inside the cell: the probability is exactly 1
    const double p = cell_probability(psi, Box{{2.0}, {8.0}});
    CHECK(p == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cell_density(psi, Box{{2.0}, {8.0}}) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("empirical_counts: degenerate and binomial cases") {
    CHECK(empirical_counts({}, Box{{0.0}, {1.0}}) == 0);

    const auto profile = BumpProfile::standard(1, 1.0);
    const auto ec = config_1d(10000);
    const auto trials = sample_trials(ec, profile);
    const double length = ec.domain.hi[0];

    CHECK(empirical_counts(trials, Box{{0.0}, {length}}) == ec.n_trials);

    const auto half = double(empirical_counts(trials, Box{{0.0}, {0.5 * length}}));
    CHECK(std::abs(half / double(ec.n_trials) - 0.5) < 3.0 / std::sqrt(double(ec.n_trials)));
}

TEST_CASE("born rule: random ensemble passes, identical-phase pile-up fails") {
    const auto profile = BumpProfile::standard(1, 1.0);
    const auto ec = config_1d(10000);
    const auto trials = sample_trials(ec, profile);
    CellPartition cells{0.0, 20, ec.cell_volume};
    const auto report = born_rule_check(ec, trials, profile, cells);
    CHECK(report.pass);
    CHECK(report.rows.size() == 20);
    CHECK(report.bound == doctest::Approx(0.01).epsilon(1e-12));

    // adversarial: all trials at one center with equal phases; the squared
    // sum grows like N^2 and the density side explodes
    std::vector<TrialConfiguration> pile(200);
    for (std::size_t j = 0; j < pile.size(); ++j) {
        pile[j].trial_index = (long long)(j);
        pile[j].instances.push_back({1, {0.5 * ec.domain.hi[0]}, 0.0, {}});
    }
    EnsembleConfig ec_pile = ec;
    ec_pile.n_trials = 200;
    const auto bad = born_rule_check(ec_pile, pile, profile, cells);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("born rule: one cell covering the whole domain") {
    const auto profile = BumpProfile::standard(1, 1.0);
    auto ec = config_1d(400, 100.0, 1);
    ec.cell_volume = 0.4 * ec.domain.volume(); // keep cell << domain at validate()
    const auto trials = sample_trials(ec, profile);
    CellPartition cells{0.0, 1, ec.domain.hi[0]};
    const long long dn = empirical_counts(trials, cells.config_cell({0}));
    CHECK(dn == ec.n_trials);
    const double p = cell_probability_pairsum(trials, profile, cells.config_cell({0}));
    CHECK(std::abs(p - 1.0) < 0.05); // residual is the cross-term fluctuation
}

TEST_CASE("grid quadrature and pair-sum routes agree") {
    const auto profile = BumpProfile::standard(1, 1.0);
    auto ec = config_1d(300, 10.0, 4, 7);
    const auto trials = sample_trials(ec, profile);
    GridSpec grid{{GridAxis{0.0, ec.domain.hi[0], 8001}}};
    const auto psi = assemble_wavefunction(trials, profile, grid);
    for (int c = 0; c < 4; ++c) {
        const Box cell{{c * ec.cell_volume}, {(c + 1) * ec.cell_volume}};
        const double by_grid = cell_probability(psi, cell);
        const double by_pairs = cell_probability_pairsum(trials, profile, cell);
        CHECK(by_grid == doctest::Approx(by_pairs).epsilon(1e-6));
    }
}

TEST_CASE("cross terms: disjoint supports vanish, identical trials give hbar") {
    const auto profile = BumpProfile::standard(1, 1.0, 1.3);
    const Box cell{{0.0}, {40.0}};

    std::vector<TrialConfiguration> apart(2);
    apart[0].instances.push_back({1, {10.0}, 0.2, {}});
    apart[1].instances.push_back({1, {20.0}, 1.2, {}});
    const auto none = cross_term_statistic(apart, profile, cell);
    CHECK(none.s_sum == 0.0);
    CHECK(none.a_offdiag.empty());

    std::vector<TrialConfiguration> same(2);
    same[0].instances.push_back({1, {10.0}, 0.7, {}});
    same[1].instances.push_back({1, {10.0}, 0.7, {}});
    const auto full = cross_term_statistic(same, profile, cell);
    REQUIRE(full.a_offdiag.size() == 1);
    CHECK(full.a_offdiag[0] == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(full.s_sum == doctest::Approx(2.0 * 1.3).epsilon(1e-12));
}

TEST_CASE("cross terms: symmetric under trial exchange, cost-guarded") {
    const auto profile = BumpProfile::standard(1, 1.0);
    const Box cell{{0.0}, {40.0}};
    std::vector<TrialConfiguration> ab(2), ba(2);
    ab[0].instances.push_back({1, {10.0}, 0.9, {}});
    ab[1].instances.push_back({1, {10.8}, 2.3, {}});
    ba[0] = ab[1];
    ba[1] = ab[0];
    const auto s_ab = cross_term_statistic(ab, profile, cell);
    const auto s_ba = cross_term_statistic(ba, profile, cell);
    REQUIRE(s_ab.a_offdiag.size() == 1);
    REQUIRE(s_ba.a_offdiag.size() == 1);
    CHECK(s_ab.a_offdiag[0] == doctest::Approx(s_ba.a_offdiag[0]).epsilon(1e-15));
    CHECK(s_ab.s_sum == doctest::Approx(s_ba.s_sum).epsilon(1e-15));

    std::vector<TrialConfiguration> many(5);
    for (auto& t : many) t.instances.push_back({1, {10.0}, 0.0, {}});
    CHECK_THROWS_AS(cross_term_statistic(many, profile, cell, 4), CostGuardError);
}

TEST_CASE("chebyshev bound: frequency under the bound, arithmetic for n = 2") {
    const auto profile = BumpProfile::standard(1, 1.0);
    auto ec = config_1d(1000, 100.0, 10, 5);
    const auto rep = chebyshev_bound_check(ec, profile, 100);
    CHECK(rep.bound == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rep.pass);
    CHECK(rep.exceed_freq <= rep.bound + 3.0 * rep.sigma_binomial);

    // bound arithmetic for two particles
    EnsembleConfig two = ec;
    two.n_particles = 2;
    const double bound2 = std::pow(two.packing_alpha * two.proper_volume / two.cell_volume, 2.0);
    CHECK(bound2 == doctest::Approx(1e-4).epsilon(1e-12));

    // point-particle surrogate: shrink the support at fixed cells
    const auto tiny_profile = BumpProfile::standard(1, 1e-3);
    EnsembleConfig tiny = ec;
    tiny.proper_volume = 2e-3;
    const auto rep_tiny = chebyshev_bound_check(tiny, tiny_profile, 100);
    CHECK(rep_tiny.exceed_freq == 0.0);
}

TEST_CASE("observable means: carrier-free momentum vanishes") {
    const auto profile = BumpProfile::standard(1, 1.0);
    auto ec = config_1d(2000, 100.0, 20, 11);
    const auto trials = sample_trials(ec, profile);
    GridSpec grid{{GridAxis{0.0, ec.domain.hi[0], 100001}}};
    const auto psi = assemble_wavefunction(trials, profile, grid);
    const auto means = observable_mean(trials, profile, Generator::translation, 0, psi);
    CHECK(std::abs(means.ensemble_mean) < 1e-12);
    CHECK(std::abs(means.quadrature_mean) < 0.02);
}

TEST_CASE("observable means: carrier momentum matches hbar k on both routes") {
    const auto profile = BumpProfile::standard(1, 1.0, 1.5);
    auto ec = config_1d(2000, 100.0, 20, 13);
    ec.carrier = {2.0};
    const auto trials = sample_trials(ec, profile);
    GridSpec grid{{GridAxis{0.0, ec.domain.hi[0], 100001}}};
    const auto psi = assemble_wavefunction(trials, profile, grid);
    const auto means = observable_mean(trials, profile, Generator::translation, 0, psi);
    const double target = 1.5 * 2.0;
    CHECK(means.per_particle[0] == doctest::Approx(target).epsilon(1e-10));
    CHECK(std::abs(means.quadrature_mean - target) < 0.05 * target);
}

TEST_CASE("observable means: additivity for two particles") {
    const auto profile = BumpProfile::standard(1, 1.0);
    EnsembleConfig ec;
    ec.n_particles = 2;
    ec.n_trials = 500;
    ec.proper_volume = 2.0;
    ec.cell_volume = 10.0;
    ec.domain = Box{{0.0}, {100.0}};
    ec.seed = 17;
    ec.carrier = {1.0};
    const auto trials = sample_trials(ec, profile);
    GridSpec grid{{GridAxis{0.0, 100.0, 2501}, GridAxis{0.0, 100.0, 2501}}};
    const auto psi = assemble_wavefunction(trials, profile, grid);
    const auto means = observable_mean(trials, profile, Generator::translation, 0, psi);
    CHECK(means.ensemble_mean ==
          doctest::Approx(means.per_particle[0] + means.per_particle[1]).epsilon(1e-14));
    CHECK(means.per_particle[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(means.quadrature_mean - means.ensemble_mean) < 0.05 * means.ensemble_mean);
}

TEST_CASE("observable means: rotation generator for a single placed soliton") {
    const auto profile = BumpProfile::standard(3, 1.0);
    TrialConfiguration t;
    t.instances.push_back({1, {6.0, 9.0, 10.0}, 0.0, {0.8, -0.5, 0.0}});
    GridSpec grid{{GridAxis{0.0, 20.0, 161}, GridAxis{0.0, 20.0, 161},
                   GridAxis{0.0, 20.0, 161}}};
    const auto psi = assemble_wavefunction({t}, profile, grid);
    const auto means = observable_mean({t}, profile, Generator::rotation, 2, psi);
    // analytic value hbar (c x k)_z for the bump with carrier
    const double expect = 6.0 * (-0.5) - 9.0 * 0.8;
    CHECK(means.ensemble_mean == doctest::Approx(expect).epsilon(1e-6));
    CHECK(means.quadrature_mean == doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("gaussian limit: flat variance, normal shape, silent exclusion") {
    const auto profile = BumpProfile::standard(1, 1.0);
    auto ec = config_1d(1000, 100.0, 10, 23);
    ec.density.excluded = Box{{800.0}, {1200.0}};
    const auto report = gaussian_limit_check(ec, profile, 200);
    CHECK(report.pass);
    bool saw_excluded = false;
    for (const auto& p : report.points) {
        if (p.density == 0.0) {
            saw_excluded = true;
            CHECK(p.var_re + p.var_im < 1e-20);
        } else {
            CHECK(std::abs(p.kurt_re - 3.0) <= 3.0 * std::sqrt(24.0 / 200.0));
        }
    }
    CHECK(saw_excluded);
}

TEST_CASE("lattice demo: single node cannot look like a plane wave") {
    const auto profile = BumpProfile::standard(1, 100.0);
    const auto res = lattice_plane_wave_demo(profile, 20.0, 2.0 * M_PI * 3.0 / 20.0, 1);
    CHECK(res.fit_error > 0.5);
}

TEST_CASE("lattice demo: a thousand overlapping copies synthesize the carrier wave") {
    const double spacing = 20.0;
    const auto profile = BumpProfile::standard(1, 5.0 * spacing);
    const double k = 2.0 * M_PI * 3.0 / spacing;
    const auto res = lattice_plane_wave_demo(profile, spacing, k, 1000);
    CHECK(res.fit_error < 0.05);

    // discrete-Fourier oracle over an exact number of lattice periods: the
    // dominant bin sits at the carrier mode
    const std::size_t per_period = 32;
    const std::size_t periods = 64;
    const std::size_t n_use = per_period * periods;
    REQUIRE(res.samples.size() > n_use);
    double best_mag = 0.0;
    std::size_t best_bin = 0;
    std::complex<double> at_carrier{0.0, 0.0};
    for (std::size_t bin = 0; bin < n_use / 2; ++bin) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n_use; ++j)
            acc += res.samples[j] *
                   std::polar(1.0, -2.0 * M_PI * double(bin) * double(j) / double(n_use));
        if (std::abs(acc) > best_mag) {
            best_mag = std::abs(acc);
            best_bin = bin;
        }
        if (bin == 3 * periods) at_carrier = acc;
    }
    CHECK(best_bin == 3 * periods);
    CHECK(std::abs(at_carrier) / double(n_use) ==
          doctest::Approx(std::abs(res.fitted_amplitude)).epsilon(0.01));
}

TEST_CASE("lattice demo: undersized window is rejected") {
    const auto profile = BumpProfile::standard(1, 100.0);
    CHECK_THROWS_AS(lattice_plane_wave_demo(profile, 20.0, 0.9, 12), std::invalid_argument);
}
