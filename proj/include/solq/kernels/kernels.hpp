#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace solq::kernels {

// Hot inner loops of the Monte-Carlo ensemble engine. Each kernel has a
// scalar reference implementation and, on x86-64 with AVX2+FMA, a vector
// variant selected at runtime. Elementwise kernels (bump accumulation, sign
// sampling) are specified op-for-op so scalar and vector variants produce
// bit-identical results; reductions may reassociate and are equivalence-
// tested to tight relative tolerances instead.
struct KernelTable {
    const char* name;

    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_i w[i]*(re[i]^2 + im[i]^2)
    double (*abs2_weighted_sum)(const double* re, const double* im, const double* w,
                                std::size_t n);

    // Quartic bump accumulated over a uniform grid slice x_i = x0 + i*dx:
    //   t = (x_i - center)*inv_radius,  s = (1-t^2)^2 for t^2 < 1 else 0,
    //   re[i] += amp_re*s,  im[i] += amp_im*s.
    void (*accumulate_bump)(double* re, double* im, std::size_t n, double x0, double dx,
                            double center, double inv_radius, double amp_re, double amp_im);

    // sum_i f(phi[i], theta1)*f(phi[i], theta2) with f = sign[cos(phi+theta)]
    // realized by phase wrapping; sign ties resolve to +1. phi and theta must
    // already lie in [0, 2*pi).
    std::int64_t (*sign_cos_product_sum)(const double* phi, std::size_t n, double theta1,
                                         double theta2);
};

const KernelTable& scalar_kernels();
#if defined(SOLQ_HAVE_AVX2_TU)
const KernelTable& avx2_kernels();
#endif

// Active table. Defaults to the best variant the CPU supports; the SOLQ_KERNELS
// environment variable or select() can force "scalar"/"avx2"/"auto".
const KernelTable& active();
bool select(const std::string& name);
std::vector<std::string> available();

} // namespace solq::kernels
