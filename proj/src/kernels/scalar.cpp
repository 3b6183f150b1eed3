#include "solq/kernels/kernels.hpp"

#include <cmath>

// Reference kernels. Arithmetic is written as explicit single operations
// (no fused contractions) so the vector variants can match bit-for-bit on
// elementwise paths; this file is compiled with -ffp-contract=off.

namespace solq::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double abs2_weighted_sum_scalar(const double* re, const double* im, const double* w,
                                std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return acc;
}

void accumulate_bump_scalar(double* re, double* im, std::size_t n, double x0, double dx,
                            double center, double inv_radius, double amp_re, double amp_im) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + double(i) * dx;
        const double t = (x - center) * inv_radius;
        const double q = t * t;
        if (q < 1.0) {
            const double p = 1.0 - q;
            const double s = p * p;
            re[i] += amp_re * s;
            im[i] += amp_im * s;
        }
    }
}

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kHalfPi = 1.5707963267948966192313216916398;
constexpr double kThreePiHalf = 4.7123889803846898576939650749193;

// +1 iff the wrapped phase lies where cos >= 0; ties (cos == 0 exactly)
// land on the +1 side by construction.
inline bool sign_bit_plus(double w) { return (w <= kHalfPi) | (w >= kThreePiHalf); }

std::int64_t sign_cos_product_sum_scalar(const double* phi, std::size_t n, double theta1,
                                         double theta2) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double w1 = phi[i] + theta1;
        if (w1 >= kTwoPi) w1 -= kTwoPi;
        double w2 = phi[i] + theta2;
        if (w2 >= kTwoPi) w2 -= kTwoPi;
        acc += (sign_bit_plus(w1) == sign_bit_plus(w2)) ? 1 : -1;
    }
    return acc;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",           dot_scalar,
        abs2_weighted_sum_scalar, accumulate_bump_scalar,
        sign_cos_product_sum_scalar,
    };
    return table;
}

} // namespace solq::kernels
