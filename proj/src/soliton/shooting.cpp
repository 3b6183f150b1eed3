#include "solq/soliton/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "solq/errors.hpp"

namespace solq::soliton {
namespace {

constexpr double kRtol = 1e-10;
constexpr double kAtol = 1e-12;
constexpr double kRegrowthFactor = 1e4;

struct State {
    double r, f, g;
};

// One embedded Dormand-Prince 5(4) step; returns the error estimate scale.
struct Dopri5 {
    const ModelParams& params;

    std::array<double, 2> rhs(double r, double f, double g) const {
        return radial_rhs(r, f, g, params);
    }

    // Advances y by h; err receives the embedded error estimate.
    State step(const State& y, double h, double err[2]) const {
        const auto k1 = rhs(y.r, y.f, y.g);
        const auto k2 = rhs(y.r + 0.2 * h, y.f + h * 0.2 * k1[0], y.g + h * 0.2 * k1[1]);
        const auto k3 = rhs(y.r + 0.3 * h, y.f + h * (3.0 / 40 * k1[0] + 9.0 / 40 * k2[0]),
                            y.g + h * (3.0 / 40 * k1[1] + 9.0 / 40 * k2[1]));
        const auto k4 =
            rhs(y.r + 0.8 * h, y.f + h * (44.0 / 45 * k1[0] - 56.0 / 15 * k2[0] + 32.0 / 9 * k3[0]),
                y.g + h * (44.0 / 45 * k1[1] - 56.0 / 15 * k2[1] + 32.0 / 9 * k3[1]));
        const auto k5 = rhs(y.r + 8.0 / 9 * h,
                            y.f + h * (19372.0 / 6561 * k1[0] - 25360.0 / 2187 * k2[0] +
                                       64448.0 / 6561 * k3[0] - 212.0 / 729 * k4[0]),
                            y.g + h * (19372.0 / 6561 * k1[1] - 25360.0 / 2187 * k2[1] +
                                       64448.0 / 6561 * k3[1] - 212.0 / 729 * k4[1]));
        const auto k6 =
            rhs(y.r + h,
                y.f + h * (9017.0 / 3168 * k1[0] - 355.0 / 33 * k2[0] + 46732.0 / 5247 * k3[0] +
                           49.0 / 176 * k4[0] - 5103.0 / 18656 * k5[0]),
                y.g + h * (9017.0 / 3168 * k1[1] - 355.0 / 33 * k2[1] + 46732.0 / 5247 * k3[1] +
                           49.0 / 176 * k4[1] - 5103.0 / 18656 * k5[1]));
        State out;
        out.r = y.r + h;
        out.f = y.f + h * (35.0 / 384 * k1[0] + 500.0 / 1113 * k3[0] + 125.0 / 192 * k4[0] -
                           2187.0 / 6784 * k5[0] + 11.0 / 84 * k6[0]);
        out.g = y.g + h * (35.0 / 384 * k1[1] + 500.0 / 1113 * k3[1] + 125.0 / 192 * k4[1] -
                           2187.0 / 6784 * k5[1] + 11.0 / 84 * k6[1]);
        const auto k7 = rhs(out.r, out.f, out.g);
        // difference of the 5th and embedded 4th order weights
        err[0] = h * (71.0 / 57600 * k1[0] - 71.0 / 16695 * k3[0] + 71.0 / 1920 * k4[0] -
                      17253.0 / 339200 * k5[0] + 22.0 / 525 * k6[0] - 1.0 / 40 * k7[0]);
        err[1] = h * (71.0 / 57600 * k1[1] - 71.0 / 16695 * k3[1] + 71.0 / 1920 * k4[1] -
                      17253.0 / 339200 * k5[1] + 22.0 / 525 * k6[1] - 1.0 / 40 * k7[1]);
        return out;
    }
};

// The damped radial flow has a false-vacuum attractor at f^2 = (1/ell0 -
// omega/c) 4pi/lambda. Shots leave the decaying corridor either upward
// (re-capture by +f_vac: "positive") or by crossing f = 0 ("negative");
// genuine amplitude blow-ups only occur far outside the bracket and are
// caught by the hard threshold.
struct Tracker {
    double blowup_threshold;
    double f_vac; // 0 when the model has no false vacuum (lambda <= 0)
    bool stop_on_node;
    double run_min;
    int nodes = 0;
    double prev_f;
    bool diverged = false;
    IntegrationOutcome verdict = IntegrationOutcome::decayed;

    Tracker(const ModelParams& params, double threshold, const State& y0, bool stop_nodes)
        : blowup_threshold(threshold), stop_on_node(stop_nodes),
          run_min(std::abs(y0.f) + std::abs(y0.g)), prev_f(y0.f) {
        const double kappa = 1.0 / params.ell0 - params.omega / params.c;
        f_vac = (params.lambda > 0.0 && kappa > 0.0)
                    ? std::sqrt(kappa * 4.0 * M_PI / params.lambda)
                    : 0.0;
    }

    static IntegrationOutcome sign_of(double f) {
        return f >= 0.0 ? IntegrationOutcome::blew_up_positive
                        : IntegrationOutcome::blew_up_negative;
    }

    // Returns true when the integration is committed to leaving the corridor.
    bool update(const State& y) {
        if (y.f != 0.0 && prev_f != 0.0 && std::signbit(y.f) != std::signbit(prev_f)) {
            ++nodes;
            if (stop_on_node) {
                diverged = true;
                verdict = sign_of(y.f);
                return true;
            }
        }
        if (y.f != 0.0) prev_f = y.f;
        const double m = std::abs(y.f) + std::abs(y.g);
        run_min = std::min(run_min, m);
        if (std::abs(y.f) > blowup_threshold || m > kRegrowthFactor * run_min) {
            diverged = true;
            verdict = sign_of(y.f);
            return true;
        }
        return false;
    }

    // Classification when the horizon is reached without a committed exit.
    IntegrationOutcome at_horizon(const State& y) const {
        if (f_vac > 0.0 && std::abs(y.f) >= 0.5 * f_vac) return sign_of(y.f);
        return IntegrationOutcome::decayed;
    }
};

double error_scale(const State& a, const State& b, const double err[2]) {
    const double sf = kAtol + kRtol * std::max(std::abs(a.f), std::abs(b.f));
    const double sg = kAtol + kRtol * std::max(std::abs(a.g), std::abs(b.g));
    const double ef = err[0] / sf, eg = err[1] / sg;
    const double scale = std::sqrt(0.5 * (ef * ef + eg * eg));
    // An overflowing trial step must look like a rejected one.
    return std::isnan(scale) ? std::numeric_limits<double>::infinity() : scale;
}

struct ShotResult {
    IntegrationOutcome outcome;
    int nodes;
    double r_stop;
};

// Free-step integration used by the bisection loop; nothing is recorded and
// a first node already settles the shot for the nodeless target.
ShotResult fast_shot(const ModelParams& params, double c2, double r_min, double r_max,
                     double blowup_threshold) {
    const Dopri5 ode{params};
    const auto start = series_start(params, c2, r_min);
    State y{r_min, start.f0, start.g0};
    if (c2 == 0.0) return {IntegrationOutcome::decayed, 0, r_max};
    if (std::abs(y.f) > blowup_threshold)
        return {Tracker::sign_of(y.f), 0, r_min};
    Tracker track(params, blowup_threshold, y, /*stop_nodes=*/true);
    double h = 1e-3 * params.ell0;
    while (y.r < r_max) {
        h = std::min(h, r_max - y.r);
        double err[2];
        const State trial = ode.step(y, h, err);
        const double scale = error_scale(y, trial, err);
        if (scale <= 1.0) {
            y = trial;
            if (track.update(y)) return {track.verdict, track.nodes, y.r};
        }
        const double factor =
            std::clamp(0.9 * std::pow(scale > 0.0 ? scale : 1e-10, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < 1e-14 * params.ell0)
            throw IntegrationError("radial integration: step size underflow");
    }
    return {track.at_horizon(y), track.nodes, r_max};
}

} // namespace

ProfileIntegration integrate_profile(const ModelParams& params, double c2,
                                     const RadialGrid& grid, double blowup_threshold) {
    params.validate();
    grid.validate();
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("integrate_profile: blowup_threshold must be > 0");

    ProfileIntegration out;
    const auto& r = grid.points;
    const auto start = series_start(params, c2, r.front());
    out.profile.c2 = c2;
    out.profile.c1 = start.c1;

    if (c2 == 0.0) {
        out.profile.grid = grid;
        out.profile.f.assign(r.size(), 0.0);
        out.profile.g.assign(r.size(), 0.0);
        out.profile.norm = 0.0;
        return out;
    }
    if (std::abs(start.f0) > blowup_threshold) {
        out.outcome = Tracker::sign_of(start.f0);
        out.profile.grid.points = {r.front()};
        out.profile.f = {start.f0};
        out.profile.g = {start.g0};
        return out;
    }

    const Dopri5 ode{params};
    State y{r.front(), start.f0, start.g0};
    Tracker track(params, blowup_threshold, y, /*stop_nodes=*/false);
    out.profile.f.reserve(r.size());
    out.profile.g.reserve(r.size());
    out.profile.f.push_back(y.f);
    out.profile.g.push_back(y.g);

    double h = 1e-3 * params.ell0;
    bool diverged = false;
    std::size_t i = 1;
    for (; i < r.size() && !diverged; ++i) {
        const double target = r[i];
        while (y.r < target) {
            const double hs = std::min(h, target - y.r);
            double err[2];
            const State trial = ode.step(y, hs, err);
            const double scale = error_scale(y, trial, err);
            if (scale <= 1.0) {
                y = trial;
                if (track.update(y)) {
                    out.outcome = track.verdict;
                    diverged = true;
                    break;
                }
            }
            const double factor =
                std::clamp(0.9 * std::pow(scale > 0.0 ? scale : 1e-10, -0.2), 0.2, 5.0);
            h = hs * factor;
            if (h < 1e-14 * params.ell0)
                throw IntegrationError("radial integration: step size underflow");
        }
        if (!diverged) {
            out.profile.f.push_back(y.f);
            out.profile.g.push_back(y.g);
        }
    }
    out.nodes = track.nodes;
    out.profile.grid.points.assign(r.begin(), r.begin() + out.profile.f.size());
    if (!diverged) out.outcome = track.at_horizon(y);
    if (out.profile.grid.points.size() >= 2) out.profile.norm = profile_norm(out.profile);
    return out;
}

namespace {

// Splice the analytic tail beyond r_trust: A fixed by matching f there.
void splice_tail(RadialProfile& profile, const RadialGrid& full_grid, double r_trust,
                 const AsymptoticConstants& asymp) {
    const auto& r = full_grid.points;
    std::size_t j = 0;
    while (j < r.size() && r[j] < r_trust) ++j;
    if (j == 0 || j >= profile.f.size())
        throw ConvergenceError("shooting: trusted region too short for a tail splice");
    const double rj = r[j - 1];
    const double a_tail = profile.f[j - 1] * rj * std::exp(asymp.nu * rj);
    profile.f.resize(r.size());
    profile.g.resize(r.size());
    for (std::size_t k = j; k < r.size(); ++k) {
        const double fr = a_tail * std::exp(-asymp.nu * r[k]) / r[k];
        profile.f[k] = fr;
        profile.g[k] = fr * (asymp.nu + 1.0 / r[k]) / asymp.b_const;
    }
    profile.grid = full_grid;
    profile.tail_start = rj;
}

} // namespace

RadialProfile shoot_ground_state(const ModelParams& params, const ShootingConfig& config,
                                 const RadialGrid& grid) {
    params.require_omega_window();
    config.validate();
    grid.validate();

    const double r_min = grid.r_min(), r_max = grid.r_max();
    double lo = config.c2_lo, hi = config.c2_hi;
    const auto shot_lo = fast_shot(params, lo, r_min, r_max, config.blowup_threshold);
    const auto shot_hi = fast_shot(params, hi, r_min, r_max, config.blowup_threshold);
    if (shot_lo.outcome == IntegrationOutcome::decayed ||
        shot_hi.outcome == IntegrationOutcome::decayed)
        throw BracketError("shooting: bracket endpoint already decays; tighten the bracket");
    if (shot_lo.outcome == shot_hi.outcome)
        throw BracketError("shooting: bracket endpoints blow up with the same sign");
    const IntegrationOutcome lo_sign = shot_lo.outcome;

    double best = 0.5 * (lo + hi);
    bool converged = false;
    for (int it = 0; it < config.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        best = mid;
        const auto shot = fast_shot(params, mid, r_min, r_max, config.blowup_threshold);
        if (shot.outcome == IntegrationOutcome::decayed) {
            converged = true;
            break;
        }
        if (shot.outcome == lo_sign)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= config.tolerance * std::max(1.0, std::abs(hi))) {
            best = 0.5 * (lo + hi);
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("shooting: bisection did not converge within max_iterations");

    auto fine = integrate_profile(params, best, grid, config.blowup_threshold);
    auto& profile = fine.profile;
    if (profile.f.size() < 16)
        throw ConvergenceError("shooting: converged integration range is too short");

    // Trusted radius: pull back from the point of closest approach to the
    // origin in (|f|+|g|) so the re-grown separatrix contamination stays
    // below ~1e-6 of the decaying solution.
    const auto asymp = decay_constants(params);
    const auto& rr = profile.grid.points;
    std::size_t dip = profile.f.size() - 1;
    double dip_val = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < profile.f.size(); ++i) {
        if (rr[i] < 2.0 * params.ell0) continue;
        const double m = std::abs(profile.f[i]) + std::abs(profile.g[i]);
        if (m < dip_val) {
            dip_val = m;
            dip = i;
        }
    }
    const double pullback = std::log(1e6) / (2.0 * asymp.nu);
    const double r_trust = std::max(rr[dip] - pullback, 4.0 * params.ell0);
    splice_tail(profile, grid, r_trust, asymp);

    // Node count over the trusted region only.
    int nodes = 0;
    for (std::size_t i = 1; i < profile.f.size() && profile.grid.points[i] <= r_trust; ++i)
        if (profile.f[i] != 0.0 && profile.f[i - 1] != 0.0 &&
            std::signbit(profile.f[i]) != std::signbit(profile.f[i - 1]))
            ++nodes;
    if (nodes != config.target_nodes)
        throw ConvergenceError("shooting: converged to a state with the wrong node count");

    profile.c2 = best;
    profile.c1 = series_start(params, best, r_min).c1;
    profile.norm = profile_norm(profile);
    return profile;
}

std::pair<RadialProfile, ModelParams> normalize_profile(const RadialProfile& profile,
                                                        const ModelParams& params) {
    const double norm = profile.norm > 0.0 ? profile.norm : profile_norm(profile);
    if (!(norm > 0.0)) throw NumericalError("normalize_profile: zero profile");
    const double s = std::sqrt(params.hbar / norm);
    RadialProfile out = profile;
    for (auto& v : out.f) v *= s;
    for (auto& v : out.g) v *= s;
    out.c2 *= s;
    out.c1 *= s;
    out.norm = profile_norm(out);
    ModelParams scaled = params;
    scaled.lambda = params.lambda / (s * s);
    return {out, scaled};
}

TailFit tail_fit(const RadialProfile& profile, double r_lo, double r_hi,
                 const ModelParams& params) {
    const auto& r = profile.grid.points;
    if (!(r_lo < r_hi) || r_lo < r.front() || r_hi > r.back())
        throw std::invalid_argument("tail_fit: window outside the profile grid");

    std::size_t i_lo = 0;
    while (i_lo < r.size() && r[i_lo] < r_lo) ++i_lo;
    std::size_t i_hi = i_lo;
    while (i_hi < r.size() && r[i_hi] <= r_hi) ++i_hi;
    if (i_hi - i_lo < 8) throw std::invalid_argument("tail_fit: window has too few points");

    // Linear least squares on log(r f) = log A - nu r.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(i_hi - i_lo);
    for (std::size_t i = i_lo; i < i_hi; ++i) {
        if (!(profile.f[i] > 0.0))
            throw NumericalError("tail_fit: non-positive f inside the fit window");
        const double x = r[i], y = std::log(r[i] * profile.f[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;

    TailFit fit;
    fit.constants = decay_constants(params);
    fit.constants.nu = -slope;
    fit.constants.a_tail = std::exp(intercept);

    const double b = 1.0 / params.ell0 + params.omega / params.c;
    double max_dev = 0.0, max_g = 0.0;
    for (std::size_t i = std::max(i_lo, std::size_t(1)); i + 1 < r.size() && i < i_hi; ++i) {
        const double fp = (profile.f[i + 1] - profile.f[i - 1]) / (r[i + 1] - r[i - 1]);
        max_dev = std::max(max_dev, std::abs(profile.g[i] + fp / b));
        max_g = std::max(max_g, std::abs(profile.g[i]));
    }
    if (!(max_g > 0.0)) throw NumericalError("tail_fit: g vanishes over the fit window");
    fit.max_rel_g_dev = max_dev / max_g;
    return fit;
}

} // namespace solq::soliton
