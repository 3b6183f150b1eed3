#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace solq::soliton {

using Vec3 = std::array<double, 3>;

// Parameters of the nonlinear spinor model. Units keep hbar and c explicit so
// the normalization constant appears literally in tests; defaults are 1.
struct ModelParams {
    double ell0 = 1.0;   // characteristic soliton size
    double lambda = 0.0; // self-coupling
    double omega = 0.0;  // stationary frequency
    double hbar = 1.0;
    double c = 1.0;

    void validate() const;
    // Regular localized solutions exist only for 0 < omega < c/ell0.
    bool omega_in_window() const { return omega > 0.0 && omega < c / ell0; }
    void require_omega_window() const;
};

struct RadialGrid {
    std::vector<double> points; // strictly increasing, r > 0

    static RadialGrid uniform(double r_min, double r_max, std::size_t n);

    double r_min() const { return points.front(); }
    double r_max() const { return points.back(); }
    std::size_t size() const { return points.size(); }
    void validate() const;
};

// Radial profile (f, g) of the stationary spinor ansatz, plus the origin
// constants and the quadrature norm integral(r^2 (f^2+g^2) dr).
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> f;
    std::vector<double> g;
    double c2 = 0.0;   // f(0)
    double c1 = 0.0;   // g(r) ~ c1 r at the origin
    double norm = 0.0;
    // Radius beyond which the stored values come from the analytic tail
    // spliced onto the numerically trusted region (0 = no splice).
    double tail_start = 0.0;
};

struct AsymptoticConstants {
    double nu = 0.0;      // tail decay rate
    double b_const = 0.0; // slope constant in g = -f'/B
    double a_tail = 0.0;  // fitted tail amplitude (unset unless fitted)
};

struct ShootingConfig {
    // Bracket endpoints must exit the decay corridor with opposite signs: the
    // low end is recaptured by the false vacuum (+), the high end crosses
    // zero (-). Defaults cover the ground state over the acceptance window.
    double c2_lo = 0.05;
    double c2_hi = 1.5;
    double tolerance = 1e-14;     // relative bisection width on c2
    int max_iterations = 200;
    double blowup_threshold = 1e3;
    int target_nodes = 0;

    void validate() const;
};

// Right-hand sides of the coupled radial system (stationary ansatz in the
// Dirac basis; the scalar self-coupling enters the two equations with
// opposite signs):
//   dg/dr = -2 g/r + [(omega/c - 1/ell0) + (lambda/4pi)(f^2 - g^2)] f
//   df/dr = -[(omega/c + 1/ell0) - (lambda/4pi)(f^2 - g^2)] g
std::array<double, 2> radial_rhs(double r, double f, double g, const ModelParams& params);

struct SeriesStart {
    double f0;
    double g0;
    double c1;
};

// Origin series g = C1 r, f = C2, f' -> 0. Inserting the series into the
// g-equation at r -> 0 gives 3 C1 = (omega/c - 1/ell0) C2 + (lambda/4pi) C2^3,
// i.e. C1 = [(omega/c - 1/ell0) C2 + (lambda/4pi) C2^3] / 3.
SeriesStart series_start(const ModelParams& params, double c2, double r_min);

// nu = sqrt(ell0^-2 - omega^2/c^2), B = ell0^-1 + omega/c (a_tail left unset).
AsymptoticConstants decay_constants(const ModelParams& params);

// integral over the grid of r^2 (f^2 + g^2) dr by composite Simpson.
double profile_norm(const RadialProfile& profile);

// Default solver grid: r_min = 1e-4 ell0 avoids the 2g/r singularity, the
// spacing resolves the quadratures to ~1e-9 relative.
RadialGrid default_grid(const ModelParams& params);

} // namespace solq::soliton
