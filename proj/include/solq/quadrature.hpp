#pragma once

#include <cstddef>
#include <vector>

namespace solq {

// Composite Simpson weights for a uniform grid with n points (spacing h).
// Odd n gives the pure Simpson rule; even n closes the last interval with a
// three-point Newton-Cotes correction so the order stays at h^4.
std::vector<double> simpson_weights(std::size_t n, double h);

struct GaussLegendre {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre polynomial.
const GaussLegendre& gauss_legendre(std::size_t n);

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <typename Fn>
double gl_integrate(Fn&& f, double a, double b, std::size_t n) {
    const GaussLegendre& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

} // namespace solq
