#include "solq/ensemble/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace solq::ensemble {

LatticeDemoResult lattice_plane_wave_demo(const BumpProfile& profile, double spacing, double k,
                                          int n_nodes) {
    profile.validate();
    if (profile.dimension != 1)
        throw std::invalid_argument("lattice_plane_wave_demo: 1d profiles only");
    if (!(spacing > 0.0) || n_nodes < 1)
        throw std::invalid_argument("lattice_plane_wave_demo: bad spacing or node count");

    const double r = profile.support_radius;
    const double half_span = 0.5 * double(n_nodes - 1) * spacing;
    // Central region: clear of the envelope edge by one full support.
    const double margin = r + spacing;
    const double x_half = half_span - margin;
    if (n_nodes > 1 && !(x_half >= 2.0 * spacing))
        throw std::invalid_argument("lattice_plane_wave_demo: window too small");

    LatticeDemoResult out;
    const double step = spacing / 32.0;
    if (n_nodes == 1) {
        // Degenerate case: the sample recovers the single copy itself.
        out.sample_axis = GridAxis{-r, r, std::size_t(std::ceil(2.0 * r / step)) + 1};
    } else {
        out.sample_axis =
            GridAxis{-x_half, x_half, std::size_t(std::ceil(2.0 * x_half / step)) + 1};
    }

    const double amp = profile.amplitude();
    out.samples.resize(out.sample_axis.n);
    for (std::size_t i = 0; i < out.sample_axis.n; ++i) {
        const double x = out.sample_axis.point(i);
        // nodes with |x + d_j| < r, d_j = (j - (n_nodes-1)/2) a
        const double d_lo = -x - r, d_hi = -x + r;
        long long j_lo = (long long)(std::ceil(d_lo / spacing + 0.5 * double(n_nodes - 1)));
        long long j_hi = (long long)(std::floor(d_hi / spacing + 0.5 * double(n_nodes - 1)));
        j_lo = std::max(j_lo, 0ll);
        j_hi = std::min(j_hi, (long long)(n_nodes - 1));
        std::complex<double> acc{0.0, 0.0};
        for (long long j = j_lo; j <= j_hi; ++j) {
            const double d = (double(j) - 0.5 * double(n_nodes - 1)) * spacing;
            const double y = x + d;
            acc += amp * profile.shape(y / r) * std::polar(1.0, k * y);
        }
        out.samples[i] = acc;
    }

    // Least squares against the unit-modulus basis e^{ikx}.
    std::complex<double> corr{0.0, 0.0};
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < out.sample_axis.n; ++i) {
        const double x = out.sample_axis.point(i);
        corr += std::polar(1.0, -k * x) * out.samples[i];
        norm_sq += std::norm(out.samples[i]);
    }
    out.fitted_amplitude = corr / double(out.sample_axis.n);
    double resid = 0.0;
    for (std::size_t i = 0; i < out.sample_axis.n; ++i) {
        const double x = out.sample_axis.point(i);
        resid += std::norm(out.samples[i] - out.fitted_amplitude * std::polar(1.0, k * x));
    }
    out.fit_error = norm_sq > 0.0 ? std::sqrt(resid / norm_sq) : 0.0;
    return out;
}

} // namespace solq::ensemble
