#include "solq/wiener/wiener.hpp"

#include <cmath>
#include <stdexcept>

#include "solq/kernels/kernels.hpp"
#include "solq/parallel.hpp"
#include "solq/rng.hpp"

namespace solq::wiener {

SampledFunction SampledFunction::from(std::size_t intervals,
                                      const std::function<std::complex<double>(double)>& f) {
    SampledFunction out;
    out.intervals = intervals;
    out.values.resize(intervals);
    for (std::size_t m = 0; m < intervals; ++m)
        out.values[m] = f(double(m) / double(intervals));
    return out;
}

double SampledFunction::norm_sq() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return acc / double(intervals);
}

HermitianDecomposition hermitian_decompose(const SampledFunction& psi1,
                                           const SampledFunction& psi2) {
    if (psi1.intervals != psi2.intervals || psi1.values.size() != psi2.values.size())
        throw std::invalid_argument("hermitian_decompose: grid mismatch");
    HermitianDecomposition out;
    for (std::size_t m = 0; m < psi1.values.size(); ++m) {
        const double u1 = psi1.values[m].real(), v1 = psi1.values[m].imag();
        const double u2 = psi2.values[m].real(), v2 = psi2.values[m].imag();
        out.g_part += u1 * u2 + v1 * v2;
        out.omega_part += v1 * u2 - u1 * v2;
    }
    out.g_part /= double(psi1.intervals);
    out.omega_part /= double(psi1.intervals);
    return out;
}

BrownianPath sample_brownian(std::size_t intervals, std::uint64_t seed,
                             std::uint64_t path_index) {
    if (intervals == 0) throw std::invalid_argument("sample_brownian: empty partition");
    RngStream rng(seed, stream_tag::brownian, path_index);
    BrownianPath path;
    path.intervals = intervals;
    path.label = double(splitmix64(path_index) >> 11) * 0x1.0p-53;
    path.values.resize(intervals + 1);
    path.values[0] = 0.0;
    const double sigma = 1.0 / std::sqrt(double(intervals));
    for (std::size_t m = 1; m <= intervals; ++m)
        path.values[m] = path.values[m - 1] + sigma * rng.normal();
    return path;
}

ComplexBrownianPath sample_complex_brownian(std::size_t intervals, std::uint64_t seed,
                                            std::uint64_t pair_index) {
    ComplexBrownianPath z;
    z.x = sample_brownian(intervals, seed, 2 * pair_index);
    z.y = sample_brownian(intervals, seed, 2 * pair_index + 1);
    return z;
}

std::complex<double> stochastic_integral(const SampledFunction& psi,
                                         const ComplexBrownianPath& z) {
    if (psi.intervals != z.x.intervals || psi.intervals != z.y.intervals)
        throw std::invalid_argument("stochastic_integral: grid mismatch");
    const std::size_t m_count = psi.intervals;
    // Split buffers so the dot kernel applies: I = sum psi_m dz_m.
    std::vector<double> pre(m_count), pim(m_count), dre(m_count), dim(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        pre[m] = psi.values[m].real();
        pim[m] = psi.values[m].imag();
        dre[m] = (z.x.values[m + 1] - z.x.values[m]) * M_SQRT1_2;
        dim[m] = (z.y.values[m + 1] - z.y.values[m]) * M_SQRT1_2;
    }
    const auto& k = kernels::active();
    const double re = k.dot(pre.data(), dre.data(), m_count) - k.dot(pim.data(), dim.data(), m_count);
    const double im = k.dot(pre.data(), dim.data(), m_count) + k.dot(pim.data(), dre.data(), m_count);
    return {re, im};
}

UnitarityReport unitarity_check(const SampledFunction& psi, std::size_t n_paths,
                                std::uint64_t seed, unsigned workers) {
    if (n_paths < 1000) throw std::invalid_argument("unitarity_check: need >= 1000 path pairs");
    UnitarityReport report;
    report.n_paths = n_paths;
    report.riemann_norm = psi.norm_sq();

    struct Acc {
        double sum = 0.0, sum_sq = 0.0;
    };
    const Acc total = parallel_reduce_ordered<Acc>(
        n_paths, 512, workers, Acc{},
        [&](std::size_t lo, std::size_t hi) {
            Acc acc;
            for (std::size_t p = lo; p < hi; ++p) {
                const auto z = sample_complex_brownian(psi.intervals, seed, p);
                const double a2 = std::norm(stochastic_integral(psi, z));
                acc.sum += a2;
                acc.sum_sq += a2 * a2;
            }
            return acc;
        },
        [](Acc a, Acc b) {
            return Acc{a.sum + b.sum, a.sum_sq + b.sum_sq};
        });

    const double n = double(n_paths);
    report.mc_mean = total.sum / n;
    const double var = (total.sum_sq - n * report.mc_mean * report.mc_mean) / (n - 1.0);
    report.std_error = std::sqrt(std::max(var, 0.0) / n);
    report.z_score = report.std_error > 0.0
                         ? (report.mc_mean - report.riemann_norm) / report.std_error
                         : 0.0;
    report.pass = std::abs(report.z_score) <= 3.0;
    return report;
}

RandomInnerProduct random_inner_product(const std::vector<std::complex<double>>& ensemble1,
                                        const std::vector<std::complex<double>>& ensemble2) {
    if (ensemble1.size() != ensemble2.size() || ensemble1.empty())
        throw std::invalid_argument("random_inner_product: length mismatch");
    const double n = double(ensemble1.size());
    std::complex<double> mean{0.0, 0.0};
    for (std::size_t i = 0; i < ensemble1.size(); ++i)
        mean += std::conj(ensemble1[i]) * ensemble2[i];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < ensemble1.size(); ++i)
        var += std::norm(std::conj(ensemble1[i]) * ensemble2[i] - mean);
    var /= (n - 1.0);
    RandomInnerProduct out;
    out.mean = mean;
    out.std_error = std::sqrt(var / n);
    return out;
}

} // namespace solq::wiener
