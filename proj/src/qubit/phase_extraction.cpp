#include "solq/qubit/phase_extraction.hpp"

#include <cmath>
#include <stdexcept>

namespace solq::qubit {
namespace {

using cd = std::complex<double>;

// Trapezoid overlap of the grid field against the analytic shifted etalon.
cd overlap_at(const std::vector<cd>& field, const ensemble::GridAxis& axis,
              const EtalonProfile& etalon, double d) {
    const double h = axis.step();
    const double r = etalon.support_radius;
    const double amp = etalon.amplitude();
    const double lo = d - r, hi = d + r;
    long long i_lo = (long long)(std::ceil((lo - axis.lo) / h));
    long long i_hi = (long long)(std::floor((hi - axis.lo) / h));
    i_lo = std::max(i_lo, 0ll);
    i_hi = std::min(i_hi, (long long)(axis.n) - 1);
    cd acc{0.0, 0.0};
    for (long long i = i_lo; i <= i_hi; ++i) {
        const double x = axis.point(std::size_t(i));
        double w = h;
        if (i == i_lo || i == i_hi) w = 0.5 * h; // endpoints carry half weight
        acc += w * std::conj(field[std::size_t(i)]) * (amp * etalon.shape((x - d) / r));
    }
    return acc;
}

} // namespace

PhaseExtraction most_probable_center(const std::vector<cd>& field,
                                     const ensemble::GridAxis& axis,
                                     const EtalonProfile& etalon) {
    if (field.size() != axis.n)
        throw std::invalid_argument("most_probable_center: field/grid size mismatch");
    bool all_zero = true;
    for (const auto& v : field)
        if (v != cd(0.0, 0.0)) {
            all_zero = false;
            break;
        }
    if (all_zero) throw std::invalid_argument("most_probable_center: all-zero field");

    // Coarse scan with a stride of a quarter support radius.
    const double coarse = 0.25 * etalon.support_radius;
    double best_d = axis.lo, best_m = -1.0;
    for (double d = axis.lo; d <= axis.hi; d += coarse) {
        const double m = std::abs(overlap_at(field, axis, etalon, d));
        if (m > best_m) {
            best_m = m;
            best_d = d;
        }
    }

    // Golden-section refinement of |overlap|^2 around the coarse maximizer.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = best_d - coarse, b = best_d + coarse;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::norm(overlap_at(field, axis, etalon, x1));
    double f2 = std::norm(overlap_at(field, axis, etalon, x2));
    for (int it = 0; it < 80 && (b - a) > 1e-12 * etalon.support_radius; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::norm(overlap_at(field, axis, etalon, x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::norm(overlap_at(field, axis, etalon, x1));
        }
    }
    const double d_star = 0.5 * (a + b);
    const cd o = overlap_at(field, axis, etalon, d_star);

    PhaseExtraction out;
    out.best_center = d_star;
    out.overlap_modulus = std::abs(o);
    out.overlap_arg = std::arg(o);
    return out;
}

double random_phase(const std::vector<PhaseExtraction>& extractions) {
    double phi = 0.0;
    for (const auto& e : extractions) phi += e.overlap_arg;
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return phi;
}

} // namespace solq::qubit
