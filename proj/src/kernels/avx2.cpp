#include "solq/kernels/kernels.hpp"

#if defined(SOLQ_HAVE_AVX2_TU)

#include <immintrin.h>

// AVX2+FMA variants. Elementwise kernels mirror the scalar reference
// operation-for-operation (plain mul/add, no fused ops on those paths) so
// results are bit-identical; reductions use four independent accumulators
// and therefore reassociate. Scalar tails reuse the reference kernels.

namespace solq::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd(), acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double abs2_weighted_sum_avx2(const double* re, const double* im, const double* w,
                              std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        const __m256d a2 = _mm256_fmadd_pd(m, m, _mm256_mul_pd(r, r));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), a2, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return s;
}

void accumulate_bump_avx2(double* re, double* im, std::size_t n, double x0, double dx,
                          double center, double inv_radius, double amp_re, double amp_im) {
    const __m256d vdx = _mm256_set1_pd(dx);
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vir = _mm256_set1_pd(inv_radius);
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vare = _mm256_set1_pd(amp_re);
    const __m256d vaim = _mm256_set1_pd(amp_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d idx =
            _mm256_set_pd(double(i + 3), double(i + 2), double(i + 1), double(i));
        const __m256d x = _mm256_add_pd(_mm256_mul_pd(idx, vdx), vx0);
        const __m256d t = _mm256_mul_pd(_mm256_sub_pd(x, vc), vir);
        const __m256d q = _mm256_mul_pd(t, t);
        const __m256d inside = _mm256_cmp_pd(q, vone, _CMP_LT_OQ);
        if (!_mm256_movemask_pd(inside)) continue;
        const __m256d p = _mm256_sub_pd(vone, q);
        const __m256d s = _mm256_and_pd(_mm256_mul_pd(p, p), inside);
        _mm256_storeu_pd(re + i,
                         _mm256_add_pd(_mm256_loadu_pd(re + i), _mm256_mul_pd(vare, s)));
        _mm256_storeu_pd(im + i,
                         _mm256_add_pd(_mm256_loadu_pd(im + i), _mm256_mul_pd(vaim, s)));
    }
    if (i < n)
        scalar_kernels().accumulate_bump(re + i, im + i, n - i, x0 + double(i) * dx, dx,
                                         center, inv_radius, amp_re, amp_im);
}

std::int64_t sign_cos_product_sum_avx2(const double* phi, std::size_t n, double theta1,
                                       double theta2) {
    const __m256d two_pi = _mm256_set1_pd(6.283185307179586476925286766559);
    const __m256d half_pi = _mm256_set1_pd(1.5707963267948966192313216916398);
    const __m256d three_pi_half = _mm256_set1_pd(4.7123889803846898576939650749193);
    const __m256d t1 = _mm256_set1_pd(theta1);
    const __m256d t2 = _mm256_set1_pd(theta2);
    auto plus_mask = [&](__m256d w) {
        const __m256d wrapped =
            _mm256_sub_pd(w, _mm256_and_pd(two_pi, _mm256_cmp_pd(w, two_pi, _CMP_GE_OQ)));
        return _mm256_or_pd(_mm256_cmp_pd(wrapped, half_pi, _CMP_LE_OQ),
                            _mm256_cmp_pd(wrapped, three_pi_half, _CMP_GE_OQ));
    };
    std::int64_t acc = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_loadu_pd(phi + i);
        const int m1 = _mm256_movemask_pd(plus_mask(_mm256_add_pd(p, t1)));
        const int m2 = _mm256_movemask_pd(plus_mask(_mm256_add_pd(p, t2)));
        const int differ = __builtin_popcount((m1 ^ m2) & 0xf);
        acc += 4 - 2 * differ;
    }
    if (i < n) acc += scalar_kernels().sign_cos_product_sum(phi + i, n - i, theta1, theta2);
    return acc;
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{
        "avx2",          dot_avx2,
        abs2_weighted_sum_avx2, accumulate_bump_avx2,
        sign_cos_product_sum_avx2,
    };
    return table;
}

} // namespace solq::kernels

#endif // SOLQ_HAVE_AVX2_TU
