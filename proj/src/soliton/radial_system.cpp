#include "solq/soliton/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "solq/errors.hpp"
#include "solq/quadrature.hpp"

namespace solq::soliton {

void ModelParams::validate() const {
    if (!(ell0 > 0.0)) throw std::invalid_argument("ModelParams: ell0 must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("ModelParams: hbar must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("ModelParams: c must be > 0");
}

void ModelParams::require_omega_window() const {
    validate();
    if (!omega_in_window())
        throw InvalidFrequencyError("omega outside the solvable window (0, c/ell0)");
}

RadialGrid RadialGrid::uniform(double r_min, double r_max, std::size_t n) {
    if (n < 2 || !(r_min > 0.0) || !(r_min < r_max))
        throw std::invalid_argument("RadialGrid::uniform: bad range");
    RadialGrid grid;
    grid.points.resize(n);
    const double h = (r_max - r_min) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid.points[i] = r_min + double(i) * h;
    grid.points.back() = r_max;
    return grid;
}

void RadialGrid::validate() const {
    if (points.size() < 2) throw std::invalid_argument("RadialGrid: need >= 2 points");
    if (!(points.front() > 0.0)) throw std::invalid_argument("RadialGrid: r_min must be > 0");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("RadialGrid: points must increase strictly");
}

void ShootingConfig::validate() const {
    if (!(c2_lo < c2_hi)) throw std::invalid_argument("ShootingConfig: c2_lo < c2_hi required");
    if (!(tolerance > 0.0)) throw std::invalid_argument("ShootingConfig: tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("ShootingConfig: max_iterations < 1");
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("ShootingConfig: blowup_threshold must be > 0");
}

std::array<double, 2> radial_rhs(double r, double f, double g, const ModelParams& params) {
    if (!(r > 0.0)) throw std::invalid_argument("radial_rhs: r must be > 0");
    const double wc = params.omega / params.c;
    const double inv_l = 1.0 / params.ell0;
    const double cubic = params.lambda / (4.0 * M_PI) * (f * f - g * g);
    const double df = -((wc + inv_l) - cubic) * g;
    const double dg = -2.0 * g / r + ((wc - inv_l) + cubic) * f;
    return {df, dg};
}

SeriesStart series_start(const ModelParams& params, double c2, double r_min) {
    params.validate();
    if (!(r_min > 0.0)) throw std::invalid_argument("series_start: r_min must be > 0");
    const double wc = params.omega / params.c;
    const double inv_l = 1.0 / params.ell0;
    const double c1 = ((wc - inv_l) * c2 + params.lambda / (4.0 * M_PI) * c2 * c2 * c2) / 3.0;
    return {c2, c1 * r_min, c1};
}

AsymptoticConstants decay_constants(const ModelParams& params) {
    params.require_omega_window();
    AsymptoticConstants out;
    const double inv_l = 1.0 / params.ell0;
    const double wc = params.omega / params.c;
    out.nu = std::sqrt(inv_l * inv_l - wc * wc);
    out.b_const = inv_l + wc;
    out.a_tail = std::numeric_limits<double>::quiet_NaN();
    return out;
}

double profile_norm(const RadialProfile& profile) {
    const auto& r = profile.grid.points;
    if (r.size() != profile.f.size() || r.size() != profile.g.size())
        throw std::invalid_argument("profile_norm: grid/value size mismatch");
    const double h = r[1] - r[0];
    const auto w = simpson_weights(r.size(), h);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        acc += w[i] * r[i] * r[i] * (profile.f[i] * profile.f[i] + profile.g[i] * profile.g[i]);
    return acc;
}

RadialGrid default_grid(const ModelParams& params) {
    return RadialGrid::uniform(1e-4 * params.ell0, 80.0 * params.ell0, 16001);
}

} // namespace solq::soliton
