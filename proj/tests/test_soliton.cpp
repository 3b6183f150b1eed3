#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "solq/errors.hpp"
#include "solq/soliton/model.hpp"
#include "solq/soliton/profile_io.hpp"
#include "solq/soliton/shooting.hpp"
#include "solq/soliton/spin.hpp"

using namespace solq;
using namespace solq::soliton;

namespace {

ModelParams params_at(double omega, double lambda = 4.0 * M_PI) {
    ModelParams p;
    p.ell0 = 1.0;
    p.lambda = lambda;
    p.omega = omega;
    return p;
}

const RadialProfile& ground_state(double omega) {
    static std::map<double, RadialProfile> cache;
    auto it = cache.find(omega);
    if (it == cache.end()) {
        const auto p = params_at(omega);
        it = cache.emplace(omega, shoot_ground_state(p, ShootingConfig{}, default_grid(p))).first;
    }
    return it->second;
}

} // namespace

TEST_CASE("radial_rhs: zero field is a fixed point") {
    const auto [df, dg] = radial_rhs(1.0, 0.0, 0.0, params_at(0.5));
    CHECK(df == 0.0);
    CHECK(dg == 0.0);
}

TEST_CASE("radial_rhs: linear case by direct substitution") {
    // f = 1, g = 0, lambda = 0: df = 0, dg = (omega - 1) f = -0.5
    const auto [df, dg] = radial_rhs(1.0, 1.0, 0.0, params_at(0.5, 0.0));
    CHECK(df == 0.0);
    CHECK(dg == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("radial_rhs: hand-evaluated nonlinear point") {
    // r=2, f=0.3, g=0.1, ell0=1, omega=0.9, lambda=4pi (so the cubic factor
    // is f^2-g^2 = 0.08):
    //   dg = -2(0.1)/2 + (0.9-1)(0.3) + 0.08*0.3 = -0.1 - 0.03 + 0.024 = -0.106
    //   df = -[(0.9+1) - 0.08]*0.1 = -0.182
    const auto [df, dg] = radial_rhs(2.0, 0.3, 0.1, params_at(0.9));
    CHECK(dg == doctest::Approx(-0.106).epsilon(1e-14));
    CHECK(df == doctest::Approx(-0.182).epsilon(1e-14));
}

TEST_CASE("radial_rhs: r <= 0 rejected") {
    CHECK_THROWS_AS(radial_rhs(0.0, 1.0, 1.0, params_at(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(radial_rhs(-1.0, 1.0, 1.0, params_at(0.5)), std::invalid_argument);
}

TEST_CASE("series_start: zero amplitude gives the zero solution") {
    const auto s = series_start(params_at(0.9), 0.0, 1e-4);
    CHECK(s.f0 == 0.0);
    CHECK(s.g0 == 0.0);
    CHECK(s.c1 == 0.0);
}

TEST_CASE("series_start: vanishing linear coefficient at omega = c/ell0, lambda = 0") {
    const auto s = series_start(params_at(1.0, 0.0), 1.0, 1e-4);
    CHECK(s.c1 == 0.0);
    CHECK(s.g0 == 0.0);
    CHECK(s.f0 == 1.0);
}

TEST_CASE("series_start: coefficient against a fine integration") {
    // c1 = [(omega-1) c2 + c2^3]/3 = [(-0.1)(0.5) + 0.125]/3 = 0.025
    const auto p = params_at(0.9);
    const auto s = series_start(p, 0.5, 1e-4);
    CHECK(s.c1 == doctest::Approx(0.025).epsilon(1e-15));

    // integrate from a 10x finer start and compare g(r)/r to c1
    const auto grid = RadialGrid::uniform(1e-5, 1e-3, 101);
    const auto res = integrate_profile(p, 0.5, grid, 1e3);
    const double r_probe = res.profile.grid.points.back();
    const double c1_probe = res.profile.g.back() / r_probe;
    CHECK(c1_probe == doctest::Approx(s.c1).epsilon(1e-4));
}

TEST_CASE("integrate_profile: zero amplitude decays with an identically zero profile") {
    const auto p = params_at(0.9);
    const auto res = integrate_profile(p, 0.0, default_grid(p), 1e3);
    CHECK(res.outcome == IntegrationOutcome::decayed);
    CHECK(res.nodes == 0);
    for (double v : res.profile.f) CHECK(v == 0.0);
    for (double v : res.profile.g) CHECK(v == 0.0);
}

TEST_CASE("integrate_profile: very large amplitude diverges immediately") {
    const auto p = params_at(0.9);
    const auto res = integrate_profile(p, 1e6, default_grid(p), 1e3);
    CHECK(res.outcome != IntegrationOutcome::decayed);
}

TEST_CASE("integrate_profile: bracketing around the converged amplitude") {
    const auto p = params_at(0.9);
    const double c2_star = ground_state(0.9).c2;
    const auto below = integrate_profile(p, c2_star - 0.05, default_grid(p), 1e3);
    const auto above = integrate_profile(p, c2_star + 0.05, default_grid(p), 1e3);
    CHECK(below.outcome == IntegrationOutcome::blew_up_positive);
    CHECK(above.outcome == IntegrationOutcome::blew_up_negative);
    CHECK(above.nodes > 0); // the overshoot crosses zero
}

TEST_CASE("decay_constants: displayed arithmetic") {
    auto p = params_at(0.6);
    auto a = decay_constants(p);
    CHECK(a.nu == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(a.b_const == doctest::Approx(1.6).epsilon(1e-15));

    p.ell0 = 2.0;
    p.omega = 0.25;
    a = decay_constants(p);
    CHECK(a.nu == doctest::Approx(std::sqrt(0.25 - 0.0625)).epsilon(1e-15));
    CHECK(a.b_const == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("decay_constants: small-frequency limit") {
    const auto a = decay_constants(params_at(1e-9));
    CHECK(a.nu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.b_const == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("decay_constants: frequency window enforced") {
    CHECK_THROWS_AS(decay_constants(params_at(1.2)), InvalidFrequencyError);
    CHECK_THROWS_AS(decay_constants(params_at(0.0)), InvalidFrequencyError);
    CHECK_THROWS_AS(decay_constants(params_at(1.0)), InvalidFrequencyError);
}

TEST_CASE("shooting: converged nodeless profile at omega = 0.9 (regression)") {
    const auto& prof = ground_state(0.9);
    CHECK(prof.f.front() > 0.0);
    // bisected amplitude, frozen as a regression value
    CHECK(prof.c2 == doctest::Approx(1.064771696497).epsilon(1e-6));
    // monotone tail decay beyond the core
    const auto& r = prof.grid.points;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] > 3.0) CHECK(prof.f[i] < prof.f[i - 1]);
    for (double v : prof.f) CHECK(v > 0.0);
}

TEST_CASE("shooting: regression amplitudes at the other window frequencies") {
    CHECK(ground_state(0.5).c2 == doctest::Approx(1.380565923854).epsilon(1e-6));
    CHECK(ground_state(0.7).c2 == doctest::Approx(1.361479991259).epsilon(1e-6));
}

TEST_CASE("shooting: invalid frequency is rejected") {
    const auto p = params_at(1.2);
    CHECK_THROWS_AS(shoot_ground_state(p, ShootingConfig{}, RadialGrid::uniform(1e-4, 80, 16001)),
                    InvalidFrequencyError);
}

TEST_CASE("shooting: same-sign bracket is rejected") {
    const auto p = params_at(0.9);
    ShootingConfig cfg;
    cfg.c2_lo = 0.05;
    cfg.c2_hi = 0.5; // both below the separatrix
    CHECK_THROWS_AS(shoot_ground_state(p, cfg, default_grid(p)), BracketError);
}

TEST_CASE("tail law: fitted decay rate matches the analytic constants") {
    for (double omega : {0.5, 0.9}) {
        const auto p = params_at(omega);
        const auto& prof = ground_state(omega);
        const auto asym = decay_constants(p);
        const auto fit = tail_fit(prof, 0.55 * prof.tail_start, 0.95 * prof.tail_start, p);
        CHECK(std::abs(fit.constants.nu - asym.nu) / asym.nu < 0.02);
        CHECK(fit.max_rel_g_dev < 0.01);
    }
}

TEST_CASE("tail_fit: exact synthetic model is recovered") {
    // f = exp(-0.8 r)/r with nu = 0.8 <-> omega = 0.6, B = 1.6; g = -f'/B
    const auto p = params_at(0.6);
    RadialProfile prof;
    prof.grid = RadialGrid::uniform(0.1, 30.0, 3000);
    for (double r : prof.grid.points) {
        const double f = std::exp(-0.8 * r) / r;
        prof.f.push_back(f);
        prof.g.push_back(f * (0.8 + 1.0 / r) / 1.6);
    }
    const auto fit = tail_fit(prof, 5.0, 25.0, p);
    CHECK(fit.constants.nu == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(fit.constants.a_tail == doctest::Approx(1.0).epsilon(1e-6));
    // the deviation here is only the finite-difference truncation of f'
    CHECK(fit.max_rel_g_dev < 1e-4);
}

TEST_CASE("tail_fit: bad windows are rejected") {
    const auto p = params_at(0.9);
    const auto& prof = ground_state(0.9);
    CHECK_THROWS_AS(tail_fit(prof, 50.0, 100.0, p), std::invalid_argument);

    RadialProfile negative = prof;
    for (auto& v : negative.f) v = -v;
    CHECK_THROWS_AS(tail_fit(negative, 10.0, 14.0, p), NumericalError);
}

TEST_CASE("normalize_profile: trivial and quartered cases") {
    const auto p = params_at(0.9);
    const auto [normed, scaled] = normalize_profile(ground_state(0.9), p);
    CHECK(normed.norm == doctest::Approx(p.hbar).epsilon(1e-12));

    // already normalized: s = 1, nothing changes
    const auto [again, scaled2] = normalize_profile(normed, scaled);
    CHECK(again.f[100] == doctest::Approx(normed.f[100]).epsilon(1e-12));
    CHECK(scaled2.lambda == doctest::Approx(scaled.lambda).epsilon(1e-12));

    // norm = 4 hbar: amplitudes halve, lambda quadruples
    RadialProfile doubled = normed;
    for (auto& v : doubled.f) v *= 2.0;
    for (auto& v : doubled.g) v *= 2.0;
    doubled.norm = profile_norm(doubled);
    CHECK(doubled.norm == doctest::Approx(4.0 * p.hbar).epsilon(1e-12));
    const auto [halved, scaled4] = normalize_profile(doubled, scaled);
    CHECK(halved.f[100] == doctest::Approx(normed.f[100]).epsilon(1e-12));
    CHECK(scaled4.lambda == doctest::Approx(4.0 * scaled.lambda).epsilon(1e-12));
}

TEST_CASE("normalize_profile: zero profile rejected") {
    RadialProfile zero;
    zero.grid = RadialGrid::uniform(0.1, 1.0, 11);
    zero.f.assign(11, 0.0);
    zero.g.assign(11, 0.0);
    CHECK_THROWS_AS(normalize_profile(zero, params_at(0.9)), NumericalError);
}

TEST_CASE("scaling invariance of the radial system") {
    // (s f, s g, lambda/s^2) satisfies the same equations:
    // radial_rhs(r, s f, s g; lambda/s^2) = s * radial_rhs(r, f, g; lambda)
    const auto p = params_at(0.9);
    for (double s : {0.5, 2.0, 3.7}) {
        auto ps = p;
        ps.lambda = p.lambda / (s * s);
        for (double r : {0.5, 1.0, 4.0}) {
            const auto base = radial_rhs(r, 0.8, -0.3, p);
            const auto scaled = radial_rhs(r, s * 0.8, s * -0.3, ps);
            CHECK(scaled[0] == doctest::Approx(s * base[0]).epsilon(1e-13));
            CHECK(scaled[1] == doctest::Approx(s * base[1]).epsilon(1e-13));
        }
    }
}

TEST_CASE("normalization keeps the profile a solution (re-integration oracle)") {
    const auto p = params_at(0.9);
    const auto& prof = ground_state(0.9);
    const auto [normed, scaled] = normalize_profile(prof, p);
    const auto re = integrate_profile(scaled, normed.c2, normed.grid, 1e3);
    // compare over the numerically trusted radii
    const auto& r = normed.grid.points;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < re.profile.f.size(); ++i) {
        if (r[i] > 0.8 * normed.tail_start) break;
        max_rel = std::max(max_rel, std::abs(re.profile.f[i] - normed.f[i]));
    }
    CHECK(max_rel < 1e-7 * normed.f.front());
}

TEST_CASE("spin: closed form, transverse components and the 3d quadrature") {
    const auto p = params_at(0.9);
    const auto [normed, scaled] = normalize_profile(ground_state(0.9), p);
    const auto spin = spin_expectation(normed, scaled);
    CHECK(std::abs(spin[2] - 0.5 * p.hbar) < 1e-6 * p.hbar);
    CHECK(spin[0] == 0.0);
    CHECK(spin[1] == 0.0);

    const auto quad = spin_quadrature_3d(normed);
    CHECK(std::abs(quad[0]) < 1e-10 * p.hbar);
    CHECK(std::abs(quad[1]) < 1e-10 * p.hbar);
    CHECK(std::abs(quad[2] - spin[2]) / std::abs(spin[2]) < 1e-6);
}

TEST_CASE("spin: unnormalized profiles are rejected, quadrature scales quadratically") {
    const auto p = params_at(0.9);
    const auto& raw = ground_state(0.9); // norm != hbar
    CHECK_THROWS_AS(spin_expectation(raw, p), NumericalError);

    const auto [normed, scaled] = normalize_profile(raw, p);
    RadialProfile stretched = normed;
    for (auto& v : stretched.f) v *= 3.0;
    for (auto& v : stretched.g) v *= 3.0;
    const auto s1 = spin_quadrature_3d(normed);
    const auto s9 = spin_quadrature_3d(stretched);
    CHECK(s9[2] == doctest::Approx(9.0 * s1[2]).epsilon(1e-12));
}

TEST_CASE("normalization idempotence and quadrature grid convergence") {
    const auto p = params_at(0.7);
    const auto& prof = ground_state(0.7);
    const auto [n1, s1] = normalize_profile(prof, p);
    const auto [n2, s2] = normalize_profile(n1, s1);
    CHECK(n2.f[500] == doctest::Approx(n1.f[500]).epsilon(1e-14));
    CHECK(s2.lambda == doctest::Approx(s1.lambda).epsilon(1e-14));

    // re-integrate the same amplitude on a 2x finer grid; the norm moves by
    // less than 1e-8 relative
    const auto fine_grid = RadialGrid::uniform(1e-4, 80.0, 32001);
    const auto fine = integrate_profile(p, prof.c2, fine_grid, 1e3);
    // the fine integration diverges at the same dip; both norms must agree on
    // the shared trusted range, so renormalize both over [r_min, 0.8 tail]
    const double r_cut = 0.8 * prof.tail_start;
    auto cut_norm = [&](const RadialProfile& pr) {
        RadialProfile c;
        std::size_t m = 0;
        while (m < pr.grid.points.size() && pr.grid.points[m] <= r_cut) ++m;
        if (m % 2 == 0) --m; // odd point count for plain Simpson
        c.grid.points.assign(pr.grid.points.begin(), pr.grid.points.begin() + m);
        c.f.assign(pr.f.begin(), pr.f.begin() + m);
        c.g.assign(pr.g.begin(), pr.g.begin() + m);
        return profile_norm(c);
    };
    const double coarse_n = cut_norm(prof);
    const double fine_n = cut_norm(fine.profile);
    CHECK(std::abs(fine_n - coarse_n) / coarse_n < 1e-8);
}

TEST_CASE("profile CSV round trip") {
    const auto p = params_at(0.9);
    const auto [normed, scaled] = normalize_profile(ground_state(0.9), p);
    const auto dir = std::filesystem::temp_directory_path() / "solq_profile_io";
    std::filesystem::create_directories(dir);
    const auto path = dir / "profile.csv";
    save_profile(normed, scaled, path);
    const auto loaded = load_profile(path);
    REQUIRE(loaded.profile.f.size() == normed.f.size());
    CHECK(loaded.profile.f[1234] == doctest::Approx(normed.f[1234]).epsilon(1e-15));
    CHECK(loaded.profile.g[1234] == doctest::Approx(normed.g[1234]).epsilon(1e-15));
    CHECK(loaded.params.omega == scaled.omega);
    CHECK(loaded.profile.c2 == doctest::Approx(normed.c2).epsilon(1e-15));
}
