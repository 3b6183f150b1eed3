#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "solq/report.hpp"

namespace solq::wiener {

// Function sampled at the left endpoints s_m = m/M of a uniform partition of
// [0, 1] into M intervals.
struct SampledFunction {
    std::size_t intervals = 0;
    std::vector<std::complex<double>> values; // size = intervals

    static SampledFunction from(std::size_t intervals,
                                const std::function<std::complex<double>(double)>& f);
    double norm_sq() const; // left Riemann sum of |psi|^2
};

// Brownian path on the same partition: values at s_m = m/M for m = 0..M,
// x(0) = 0, independent Gaussian increments of variance 1/M.
struct BrownianPath {
    std::size_t intervals = 0;
    std::vector<double> values; // size = intervals + 1
    double label = 0.0;         // path index in [0, 1]
};

struct ComplexBrownianPath {
    BrownianPath x, y;

    std::complex<double> z(std::size_t m) const {
        return {x.values[m] * M_SQRT1_2, y.values[m] * M_SQRT1_2};
    }
};

struct HermitianDecomposition {
    double g_part = 0.0;     // Riemannian inner product
    double omega_part = 0.0; // symplectic form
};

// <psi1|psi2> = G - i Omega with G = (u1,u2)+(v1,v2), Omega = (v1,u2)-(u1,v2)
// in the real/imaginary split psi = u + i v.
HermitianDecomposition hermitian_decompose(const SampledFunction& psi1,
                                           const SampledFunction& psi2);

BrownianPath sample_brownian(std::size_t intervals, std::uint64_t seed, std::uint64_t path_index);
ComplexBrownianPath sample_complex_brownian(std::size_t intervals, std::uint64_t seed,
                                            std::uint64_t pair_index);

// Forward-point (Ito) Riemann-Stieltjes sum  sum_m psi(s_m) (z_{m+1} - z_m).
std::complex<double> stochastic_integral(const SampledFunction& psi,
                                         const ComplexBrownianPath& z);

struct UnitarityReport {
    double riemann_norm = 0.0;   // sum |psi|^2 ds
    double mc_mean = 0.0;        // mean over path pairs of |<a,b|psi>|^2
    double std_error = 0.0;
    double z_score = 0.0;
    std::size_t n_paths = 0;
    bool pass = false; // |z| <= 3
};

UnitarityReport unitarity_check(const SampledFunction& psi, std::size_t n_paths,
                                std::uint64_t seed, unsigned workers = 1);

struct RandomInnerProduct {
    std::complex<double> mean{0.0, 0.0};
    double std_error = 0.0;
};

// Expectation inner product of two random fields from paired samples.
RandomInnerProduct random_inner_product(const std::vector<std::complex<double>>& ensemble1,
                                        const std::vector<std::complex<double>>& ensemble2);

} // namespace solq::wiener
