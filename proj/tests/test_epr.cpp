#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "solq/epr/entangled.hpp"
#include "solq/errors.hpp"
#include "solq/soliton/shooting.hpp"

using namespace solq;
using namespace solq::epr;

namespace {

struct Solved {
    soliton::RadialProfile profile;
    soliton::ModelParams params;
};

const Solved& normalized_ground_state() {
    static const Solved solved = [] {
        soliton::ModelParams p;
        p.ell0 = 1.0;
        p.lambda = 4.0 * M_PI;
        p.omega = 0.9;
        const auto raw =
            soliton::shoot_ground_state(p, soliton::ShootingConfig{}, soliton::default_grid(p));
        auto [prof, scaled] = soliton::normalize_profile(raw, p);
        return Solved{std::move(prof), scaled};
    }();
    return solved;
}

std::array<std::array<double, 3>, 3> random_rotation(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::array<std::array<double, 3>, 3> m{};
    // Gram-Schmidt on two random vectors, third by cross product
    std::array<double, 3> a{n(gen), n(gen), n(gen)}, b{n(gen), n(gen), n(gen)};
    double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    for (auto& v : a) v /= na;
    double d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    for (int i = 0; i < 3; ++i) b[i] -= d * a[i];
    double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    for (auto& v : b) v /= nb;
    m[0] = a;
    m[1] = b;
    m[2] = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    return m;
}

Direction rotate(const std::array<std::array<double, 3>, 3>& m, const Direction& v) {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i] += m[j][i] * v.components[j];
    return Direction{out};
}

} // namespace

TEST_CASE("singlet state: amplitudes, norm and vanishing total z-projection") {
    const auto s = singlet_state();
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.amplitudes[0] == std::complex<double>(0.0, 0.0));
    CHECK(s.amplitudes[1].real() == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(s.amplitudes[2].real() == doctest::Approx(-0.70710678).epsilon(1e-8));
    CHECK(s.amplitudes[3] == std::complex<double>(0.0, 0.0));

    // total z projection: (m1 + m2) weighted by |amplitude|^2
    double mz = 0.0;
    const double m1[4] = {1.0, 1.0, -1.0, -1.0}, m2[4] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) mz += 0.5 * (m1[i] + m2[i]) * std::norm(s.amplitudes[i]);
    CHECK(mz == 0.0);
}

TEST_CASE("qm correlation: parallel, orthogonal and 60 degree separations") {
    const Direction z{{0.0, 0.0, 1.0}}, x{{1.0, 0.0, 0.0}};
    CHECK(qm_spin_correlation(z, z) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(qm_spin_correlation(z, x) == doctest::Approx(0.0).epsilon(1e-14));
    const auto b60 = Direction::from_polar(M_PI / 3.0);
    CHECK(qm_spin_correlation(z, b60) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("qm correlation equals -(a.b) for random directions") {
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto a = Direction::normalized(u(gen), u(gen), u(gen));
        const auto b = Direction::normalized(u(gen), u(gen), u(gen));
        CHECK(qm_spin_correlation(a, b) == doctest::Approx(-a.dot(b)).epsilon(1e-13));
    }
}

TEST_CASE("qm correlation rejects non-unit directions") {
    Direction bad{{0.5, 0.0, 0.0}};
    const Direction z{{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(qm_spin_correlation(bad, z), std::invalid_argument);
}

TEST_CASE("entangled pair: norm equals hbar^2, quartic scaling, label swap") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    const double hb2 = gs.params.hbar * gs.params.hbar;
    CHECK(std::abs(pair.norm_pair - hb2) / hb2 < 1e-6);

    // scale the profile by s and hbar by s^2: the pair norm picks up s^4
    const double s = 1.7;
    auto scaled_profile = gs.profile;
    for (auto& v : scaled_profile.f) v *= s;
    for (auto& v : scaled_profile.g) v *= s;
    scaled_profile.norm = soliton::profile_norm(scaled_profile);
    auto scaled_params = gs.params;
    scaled_params.hbar *= s * s;
    const auto scaled_pair = build_entangled_pair(scaled_profile, scaled_params);
    CHECK(scaled_pair.norm_pair ==
          doctest::Approx(s * s * s * s * pair.norm_pair).epsilon(1e-9));

    // unnormalized input is rejected
    CHECK_THROWS_AS(build_entangled_pair(scaled_profile, gs.params), NumericalError);

    // particle transposition flips the sign of the spin part
    const auto swapped = pair.spin_part.swapped();
    for (int i = 0; i < 4; ++i)
        CHECK(swapped.amplitudes[i] == -pair.spin_part.amplitudes[i]);
    // and leaves the correlation quadratic form unchanged
    const Direction a{{0.0, 0.0, 1.0}};
    const auto b = Direction::from_polar(1.1);
    CHECK(spin_correlation_form(swapped, a, b) ==
          doctest::Approx(spin_correlation_form(pair.spin_part, a, b)).epsilon(1e-14));
}

TEST_CASE("exact soliton correlation: parallel, orthogonal, explicit radial factor") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    const Direction z{{0.0, 0.0, 1.0}}, x{{1.0, 0.0, 0.0}};
    CHECK(std::abs(soliton_spin_correlation_exact(pair, z, z) + 1.0) < 1e-6);
    CHECK(std::abs(soliton_spin_correlation_exact(pair, z, x)) < 1e-8);

    // unnormalized pair with radial integral 2 hbar carries the square factor
    EntangledPair wide = pair;
    wide.radial_integral = 2.0 * gs.params.hbar;
    const auto b = Direction::from_polar(0.7);
    CHECK(soliton_spin_correlation_exact(wide, z, b) ==
          doctest::Approx(-4.0 * z.dot(b)).epsilon(1e-12));
}

TEST_CASE("exact correlation coincides with the qm form and is rotation invariant") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto a0 = Direction::normalized(0.3, -0.5, 1.2);
    const auto b0 = Direction::normalized(-0.9, 0.1, 0.4);
    const double base = soliton_spin_correlation_exact(pair, a0, b0);
    CHECK(base == doctest::Approx(qm_spin_correlation(a0, b0)).epsilon(1e-9));

    double lo = base, hi = base;
    for (int i = 0; i < 100; ++i) {
        const auto rot = random_rotation(gen);
        const double v = soliton_spin_correlation_exact(pair, rotate(rot, a0), rotate(rot, b0));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-9);
}

TEST_CASE("mc correlation: parallel and orthogonal targets at ten thousand trials") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    const Direction z{{0.0, 0.0, 1.0}}, x{{1.0, 0.0, 0.0}};

    const auto ens = make_singlet_ensemble(pair, 10000, 2024);
    const auto par = soliton_spin_correlation_mc(ens, z, z);
    CHECK(par.phases_uniform);
    CHECK(std::abs(par.estimate - (-1.0)) <= 3.0 * par.std_error);

    const auto ort = soliton_spin_correlation_mc(ens, z, x);
    CHECK(std::abs(ort.estimate) <= 3.0 * ort.std_error + 1e-12);
}

TEST_CASE("mc correlation: frozen phases are flagged and biased") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    SingletEnsemble frozen;
    frozen.pair = pair;
    frozen.n_trials = 2000;
    frozen.phases.assign(2000, 0.0);
    const Direction z{{0.0, 0.0, 1.0}};
    const auto mc = soliton_spin_correlation_mc(frozen, z, z);
    CHECK_FALSE(mc.phases_uniform);
    CHECK(std::abs(mc.estimate) > 10.0); // coherent pile-up instead of -1
}

TEST_CASE("mc correlation: 3 sigma coverage across one hundred seeds") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    const Direction z{{0.0, 0.0, 1.0}};
    const auto b = Direction::from_polar(2.0 * M_PI / 5.0);
    const double target = -z.dot(b);
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto ens = make_singlet_ensemble(pair, 10000, 5000 + seed);
        const auto mc = soliton_spin_correlation_mc(ens, z, b);
        if (std::abs(mc.estimate - target) <= 3.0 * mc.std_error) ++covered;
    }
    CHECK(covered >= 99);
}

TEST_CASE("correlation curve: end points and sweep coincidence") {
    const auto& gs = normalized_ground_state();
    const auto pair = build_entangled_pair(gs.profile, gs.params);
    std::vector<double> angles(181);
    for (std::size_t i = 0; i < angles.size(); ++i)
        angles[i] = M_PI * double(i) / 180.0;
    const auto rows = correlation_curve(pair, angles, 0, 1);
    CHECK(rows.front().qm == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rows.front().soliton_exact == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(rows.back().qm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows.back().soliton_exact == doctest::Approx(1.0).epsilon(1e-6));
    double max_dev = 0.0;
    for (const auto& r : rows)
        max_dev = std::max(max_dev, std::abs(r.soliton_exact - r.qm));
    CHECK(max_dev < 1e-6);
}
