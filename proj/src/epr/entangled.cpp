#include "solq/epr/entangled.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "solq/errors.hpp"
#include "solq/quadrature.hpp"
#include "solq/rng.hpp"

namespace solq::epr {
namespace {

using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;

// Cross overlap <phi_up | phi_down> of the opposite-projection solitons via
// the angular quadrature. The integrand vanishes pointwise; evaluating it
// keeps the orthogonality an observed fact rather than an assumption.
cd cross_projection_overlap(const soliton::RadialProfile& profile) {
    const auto& gl = gauss_legendre(8);
    constexpr std::size_t n_alpha = 8;
    const double w_alpha = 2.0 * M_PI / double(n_alpha);

    // v_up = i g sigma_r (1,0)^T -> (cos, sin e^{ia}), v_dn -> (sin e^{-ia}, -cos)
    cd angular{0.0, 0.0};
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double mu = gl.nodes[q];
        const double st = std::sqrt(1.0 - mu * mu);
        for (std::size_t m = 0; m < n_alpha; ++m) {
            const double alpha = w_alpha * double(m);
            const cd up0 = mu, up1 = st * std::polar(1.0, alpha);
            const cd dn0 = st * std::polar(1.0, -alpha), dn1 = -mu;
            angular += gl.weights[q] * w_alpha * (std::conj(up0) * dn0 + std::conj(up1) * dn1);
        }
    }
    // radial factor: integral r^2 g^2 dr (u-spinors are orthogonal exactly)
    const auto& r = profile.grid.points;
    double radial = 0.0;
    const auto w = simpson_weights(r.size(), r[1] - r[0]);
    for (std::size_t i = 0; i < r.size(); ++i)
        radial += w[i] * r[i] * r[i] * profile.g[i] * profile.g[i];
    return angular * radial / (4.0 * M_PI);
}

// Matrix of 2(J.a) on the soliton doublet from the ladder action
//   J+ up = 0,  J3 up = up/2,   J- up = down,
//   J- down = 0, J3 down = -down/2, J+ down = up.
Mat2 doubled_angular_momentum(const Direction& n) {
    const double ax = n.components[0], ay = n.components[1], az = n.components[2];
    Mat2 m{};
    // column: image of |up>
    m[0][0] = az;
    m[1][0] = cd(ax, ay); // from (J+ + J-)/2 and (J+ - J-)/(2i) acting down
    // column: image of |down>
    m[0][1] = cd(ax, -ay);
    m[1][1] = -az;
    return m;
}

double pair_form(const SpinPairState& psi, const Mat2& a, const Mat2& b) {
    cd acc{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l)
                    acc += std::conj(psi.amplitudes[2 * i + k]) * a[i][j] * b[k][l] *
                           psi.amplitudes[2 * j + l];
    return acc.real();
}

} // namespace

EntangledPair build_entangled_pair(const soliton::RadialProfile& profile,
                                   const soliton::ModelParams& params,
                                   double normalization_tolerance) {
    const double norm = soliton::profile_norm(profile);
    if (std::abs(norm - params.hbar) / params.hbar > normalization_tolerance)
        throw NumericalError("build_entangled_pair: profile is not normalized to hbar");
    EntangledPair pair;
    pair.spin_part = singlet_state();
    pair.radial_profile = profile;
    pair.radial_integral = norm;
    pair.hbar = params.hbar;
    const double cross = std::norm(cross_projection_overlap(profile));
    pair.norm_pair = norm * norm - cross;
    return pair;
}

double soliton_spin_correlation_exact(const EntangledPair& pair, const Direction& a,
                                      const Direction& b) {
    a.require_unit();
    b.require_unit();
    const double radial_sq = pair.radial_integral * pair.radial_integral;
    return pair_form(pair.spin_part, doubled_angular_momentum(a), doubled_angular_momentum(b)) *
           radial_sq / (pair.hbar * pair.hbar);
}

SingletEnsemble make_singlet_ensemble(const EntangledPair& pair, long long n_trials,
                                      std::uint64_t seed) {
    SingletEnsemble ensemble;
    ensemble.n_trials = n_trials;
    ensemble.pair = pair;
    ensemble.phases.resize(std::size_t(n_trials));
    for (long long j = 0; j < n_trials; ++j) {
        RngStream rng(seed, stream_tag::phase, std::uint64_t(j));
        ensemble.phases[std::size_t(j)] = rng.uniform(0.0, 2.0 * M_PI);
    }
    return ensemble;
}

McCorrelation soliton_spin_correlation_mc(const SingletEnsemble& ensemble, const Direction& a,
                                          const Direction& b) {
    const long long n = ensemble.n_trials;
    if (n < 1000)
        throw std::invalid_argument("soliton_spin_correlation_mc: need >= 1000 trials");

    const double base = soliton_spin_correlation_exact(ensemble.pair, a, b);

    // Blocks of trials are independent realizations of the ensemble average;
    // each block statistic |sum_j e^{i theta_j}|^2 / M carries the cross-term
    // fluctuations and has unit mean.
    constexpr long long block = 100;
    const long long n_blocks = n / block;
    double sum = 0.0, sum_sq = 0.0;
    for (long long bidx = 0; bidx < n_blocks; ++bidx) {
        cd z{0.0, 0.0};
        for (long long j = bidx * block; j < (bidx + 1) * block; ++j)
            z += std::polar(1.0, ensemble.phases[std::size_t(j)]);
        const double xb = std::norm(z) / double(block);
        sum += xb;
        sum_sq += xb * xb;
    }
    const double nb = double(n_blocks);
    const double mean_x = sum / nb;
    const double var_x = (sum_sq - nb * mean_x * mean_x) / (nb - 1.0);

    McCorrelation out;
    out.estimate = base * mean_x;
    out.std_error = std::abs(base) * std::sqrt(std::max(var_x, 0.0) / nb);

    // chi^2 uniformity of the phase stream on 16 bins (1% critical value for
    // 15 dof is 30.58); a deterministic phase pattern is flagged.
    constexpr int bins = 16;
    std::array<double, bins> counts{};
    for (double phi : ensemble.phases) {
        int bidx = int(phi / (2.0 * M_PI) * bins);
        if (bidx < 0) bidx = 0;
        if (bidx >= bins) bidx = bins - 1;
        counts[bidx] += 1.0;
    }
    const double expected = double(n) / bins;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    out.phase_uniformity_chi2 = chi2;
    out.phases_uniform = chi2 <= 30.578;
    return out;
}

std::vector<CorrelationCurveRow> correlation_curve(const EntangledPair& pair,
                                                   const std::vector<double>& angles,
                                                   long long mc_trials, std::uint64_t seed) {
    std::vector<CorrelationCurveRow> rows;
    rows.reserve(angles.size());
    const Direction a{{0.0, 0.0, 1.0}};
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Direction b = Direction::from_polar(angles[i]);
        CorrelationCurveRow row;
        row.theta = angles[i];
        row.qm = qm_spin_correlation(a, b);
        row.soliton_exact = soliton_spin_correlation_exact(pair, a, b);
        if (mc_trials > 0) {
            const auto ens = make_singlet_ensemble(pair, mc_trials, splitmix64(seed + i));
            const auto mc = soliton_spin_correlation_mc(ens, a, b);
            row.soliton_mc = mc.estimate;
            row.mc_stderr = mc.std_error;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace solq::epr
