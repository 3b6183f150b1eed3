#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "solq/kernels/kernels.hpp"

using namespace solq;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo = -1.0,
                               double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(gen);
    return v;
}

bool have_avx2() {
    for (const auto& n : kernels::available())
        if (n == "avx2") return true;
    return false;
}

} // namespace

TEST_CASE("dot matches the library reference") {
    const auto a = random_vec(1037, 1), b = random_vec(1037, 2);
    const double expect = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    const double got = kernels::scalar_kernels().dot(a.data(), b.data(), a.size());
    CHECK(got == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("abs2_weighted_sum matches a direct evaluation") {
    const auto re = random_vec(513, 3), im = random_vec(513, 4), w = random_vec(513, 5, 0.0, 1.0);
    double expect = 0.0;
    for (std::size_t i = 0; i < re.size(); ++i)
        expect += w[i] * (re[i] * re[i] + im[i] * im[i]);
    const double got =
        kernels::scalar_kernels().abs2_weighted_sum(re.data(), im.data(), w.data(), re.size());
    CHECK(got == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("accumulate_bump reproduces the shape and respects the support") {
    const std::size_t n = 301;
    std::vector<double> re(n, 0.0), im(n, 0.0);
    const double x0 = -3.0, dx = 0.02, center = -1.3, radius = 0.7;
    kernels::scalar_kernels().accumulate_bump(re.data(), im.data(), n, x0, dx, center,
                                              1.0 / radius, 2.0, -0.5);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (x0 + double(i) * dx - center) / radius;
        const double s = t * t < 1.0 ? (1.0 - t * t) * (1.0 - t * t) : 0.0;
        CHECK(re[i] == doctest::Approx(2.0 * s).epsilon(1e-14));
        CHECK(im[i] == doctest::Approx(-0.5 * s).epsilon(1e-14));
        if (std::abs(t) >= 1.0) CHECK(re[i] == 0.0);
    }
}

TEST_CASE("sign_cos_product kernel agrees with the cos-based sampler away from ties") {
    const auto phi = random_vec(20000, 7, 0.0, 2.0 * M_PI);
    const double t1 = 0.3, t2 = 2.1;
    std::int64_t expect = 0;
    for (double p : phi) {
        const int f1 = std::cos(p + t1) >= 0.0 ? 1 : -1;
        const int f2 = std::cos(p + t2) >= 0.0 ? 1 : -1;
        expect += f1 * f2;
    }
    const std::int64_t got =
        kernels::scalar_kernels().sign_cos_product_sum(phi.data(), phi.size(), t1, t2);
    // the wrap rule and the cos sign can only disagree within ~1 ulp of a
    // zero crossing, which random draws do not hit
    CHECK(got == expect);
}

TEST_CASE("avx2 variant matches scalar bit-for-bit on elementwise kernels") {
#if defined(SOLQ_HAVE_AVX2_TU)
    if (!have_avx2()) return;
    const auto& scalar = kernels::scalar_kernels();
    const auto& avx2 = kernels::avx2_kernels();

    const std::size_t n = 517; // deliberately not a multiple of the lane width
    std::vector<double> re_s(n, 0.1), im_s(n, -0.2), re_v(n, 0.1), im_v(n, -0.2);
    scalar.accumulate_bump(re_s.data(), im_s.data(), n, -2.0, 0.01, 0.37, 1.7, 0.83, -1.21);
    avx2.accumulate_bump(re_v.data(), im_v.data(), n, -2.0, 0.01, 0.37, 1.7, 0.83, -1.21);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(re_s[i] == re_v[i]);
        CHECK(im_s[i] == im_v[i]);
    }

    const auto phi = random_vec(12345, 11, 0.0, 2.0 * M_PI);
    CHECK(scalar.sign_cos_product_sum(phi.data(), phi.size(), 0.7, 4.4) ==
          avx2.sign_cos_product_sum(phi.data(), phi.size(), 0.7, 4.4));
#endif
}

TEST_CASE("avx2 reductions agree with scalar to tight relative tolerance") {
#if defined(SOLQ_HAVE_AVX2_TU)
    if (!have_avx2()) return;
    const auto& scalar = kernels::scalar_kernels();
    const auto& avx2 = kernels::avx2_kernels();
    for (std::size_t n : {std::size_t(1), std::size_t(3), std::size_t(16), std::size_t(255),
                          std::size_t(4096), std::size_t(100003)}) {
        const auto a = random_vec(n, 100 + n), b = random_vec(n, 200 + n);
        const double ds = scalar.dot(a.data(), b.data(), n);
        const double dv = avx2.dot(a.data(), b.data(), n);
        CHECK(dv == doctest::Approx(ds).epsilon(1e-12));
        const auto w = random_vec(n, 300 + n, 0.0, 1.0);
        const double as = scalar.abs2_weighted_sum(a.data(), b.data(), w.data(), n);
        const double av = avx2.abs2_weighted_sum(a.data(), b.data(), w.data(), n);
        CHECK(av == doctest::Approx(as).epsilon(1e-12));
    }
#endif
}

TEST_CASE("kernel selection honours explicit names") {
    CHECK(kernels::select("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::select("bogus"));
    CHECK(kernels::select("auto"));
    if (have_avx2()) CHECK(std::string(kernels::active().name) == "avx2");
}
