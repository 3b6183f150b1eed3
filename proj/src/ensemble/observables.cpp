#include "solq/ensemble/observables.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "solq/parallel.hpp"
#include "solq/quadrature.hpp"

namespace solq::ensemble {
namespace {

using cd = std::complex<double>;

// d = 1 translation: integral conj(phi) (-i phi') dx over the support. The
// integrand is polynomial times the carrier phase; a 24-node rule resolves it
// far below the comparison budgets.
double momentum_integral_1d(const BumpProfile& profile, const SolitonInstance& inst) {
    const double r = profile.support_radius;
    const double c = inst.center[0];
    const double k = inst.carrier.empty() ? 0.0 : inst.carrier[0];
    const double amp = profile.amplitude();
    const auto& rule = gauss_legendre(24);
    double acc = 0.0; // imaginary parts cancel by parity
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = c + r * rule.nodes[q];
        const double t = (x - c) / r;
        const double s = profile.shape(t);
        // Re[conj(phi)(-i phi')] = amp^2 k s^2
        acc += rule.weights[q] * amp * amp * k * s * s;
    }
    return acc * r;
}

// d = 3 quadrature over the support box. With phi = amp s e^{i Theta} the
// gradient splits into a real radial part and i k s; in Re[conj(phi)(-i M
// phi)] the radial part is purely imaginary and drops out pointwise, leaving
//   translation: amp^2 s^2 k_a
//   rotation:    amp^2 s^2 (x k_y - y k_x)
double generator_integral_3d(const BumpProfile& profile, const SolitonInstance& inst,
                             Generator gen, int component) {
    const double r = profile.support_radius;
    const double amp = profile.amplitude();
    const auto& rule = gauss_legendre(16);
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < inst.carrier.size(); ++a) k[a] = inst.carrier[a];

    double acc = 0.0;
    for (std::size_t qx = 0; qx < rule.nodes.size(); ++qx)
        for (std::size_t qy = 0; qy < rule.nodes.size(); ++qy)
            for (std::size_t qz = 0; qz < rule.nodes.size(); ++qz) {
                const double u[3] = {r * rule.nodes[qx], r * rule.nodes[qy], r * rule.nodes[qz]};
                const double t2 = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) / (r * r);
                if (t2 >= 1.0) continue;
                const double w = rule.weights[qx] * rule.weights[qy] * rule.weights[qz] * r * r * r;
                const double p = 1.0 - t2;
                const double s = p * p;
                double integrand;
                if (gen == Generator::translation) {
                    integrand = amp * amp * s * s * k[component];
                } else {
                    const double x = u[0] + inst.center[0];
                    const double y = u[1] + inst.center[1];
                    integrand = amp * amp * s * s * (x * k[1] - y * k[0]);
                }
                acc += w * integrand;
            }
    return acc;
}

double per_trial_particle_integral(const BumpProfile& profile, const SolitonInstance& inst,
                                   Generator gen, int component) {
    const int d = int(inst.center.size());
    if (gen == Generator::translation && d == 1) return momentum_integral_1d(profile, inst);
    if (d == 3) return generator_integral_3d(profile, inst, gen, component);
    throw std::invalid_argument("observable_mean: unsupported generator/dimension combination");
}

// 4th-order central difference along one axis of the assembled grid.
cd derivative_along(const StochasticWavefunction& psi, std::size_t flat, std::size_t stride,
                    double h) {
    const cd m2 = psi.value(flat - 2 * stride), m1 = psi.value(flat - stride);
    const cd p1 = psi.value(flat + stride), p2 = psi.value(flat + 2 * stride);
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
}

} // namespace

ObservableMeans observable_mean(const std::vector<TrialConfiguration>& trials,
                                const BumpProfile& profile, Generator generator, int component,
                                const StochasticWavefunction& psi, unsigned workers) {
    if (trials.empty()) throw std::invalid_argument("observable_mean: no trials");
    const int n = trials.front().n_particles();
    const double hbar = profile.hbar;

    ObservableMeans out;
    out.per_particle.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double sum = parallel_reduce_ordered<double>(
            trials.size(), 256, workers, 0.0,
            [&](std::size_t lo, std::size_t hi) {
                double acc = 0.0;
                for (std::size_t j = lo; j < hi; ++j)
                    acc += per_trial_particle_integral(profile, trials[j].instances[k],
                                                       generator, component);
                return acc;
            },
            [](double a, double b) { return a + b; });
        out.per_particle[k] = sum / double(trials.size());
        out.ensemble_mean += out.per_particle[k];
    }

    // Quadrature route on the assembled grid.
    const auto& axes = psi.grid.axes;
    std::vector<std::vector<double>> w(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a)
        w[a] = simpson_weights(axes[a].n, axes[a].step());

    double quad = 0.0;
    if (axes.size() == 1) {
        const double h = axes[0].step();
        for (std::size_t i = 2; i + 2 < axes[0].n; ++i) {
            const cd dpsi = derivative_along(psi, i, 1, h);
            quad += w[0][i] * std::imag(std::conj(psi.value(i)) * dpsi);
        }
        quad *= hbar;
    } else if (axes.size() == 2) {
        // A = hbar(-i d/dx1) + hbar(-i d/dx2) on the two particle axes
        const std::size_t n1 = axes[1].n;
        for (std::size_t i = 2; i + 2 < axes[0].n; ++i)
            for (std::size_t j = 2; j + 2 < n1; ++j) {
                const std::size_t flat = i * n1 + j;
                const cd d0 = derivative_along(psi, flat, n1, axes[0].step());
                const cd d1 = derivative_along(psi, flat, 1, axes[1].step());
                quad += w[0][i] * w[1][j] * std::imag(std::conj(psi.value(flat)) * (d0 + d1));
            }
        quad *= hbar;
    } else {
        const std::size_t n1 = axes[1].n, n2 = axes[2].n;
        for (std::size_t i = 2; i + 2 < axes[0].n; ++i)
            for (std::size_t j = 2; j + 2 < n1; ++j)
                for (std::size_t l = 2; l + 2 < n2; ++l) {
                    const std::size_t flat = (i * n1 + j) * n2 + l;
                    const double ww = w[0][i] * w[1][j] * w[2][l];
                    cd op;
                    if (generator == Generator::translation) {
                        const std::size_t stride =
                            component == 0 ? n1 * n2 : (component == 1 ? n2 : 1);
                        const double h = axes[component].step();
                        op = derivative_along(psi, flat, stride, h);
                    } else {
                        const double x = axes[0].point(i), y = axes[1].point(j);
                        const cd dy = derivative_along(psi, flat, n2, axes[1].step());
                        const cd dx = derivative_along(psi, flat, n1 * n2, axes[0].step());
                        op = x * dy - y * dx;
                    }
                    quad += ww * std::imag(std::conj(psi.value(flat)) * op);
                }
        quad *= hbar;
    }
    out.quadrature_mean = quad;
    return out;
}

} // namespace solq::ensemble
