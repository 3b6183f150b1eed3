#include "solq/ensemble/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace solq::ensemble {

void BumpProfile::validate() const {
    if (dimension != 1 && dimension != 2 && dimension != 3)
        throw std::invalid_argument("BumpProfile: dimension must be 1, 2 or 3");
    if (!(support_radius > 0.0)) throw std::invalid_argument("BumpProfile: radius must be > 0");
    if (!(nu_k > 0.0)) throw std::invalid_argument("BumpProfile: nu_k must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("BumpProfile: hbar must be > 0");
}

double BumpProfile::shape_norm_sq() const {
    const double r = support_radius;
    switch (dimension) {
        case 1: return r * 256.0 / 315.0;
        case 2: {
            // 2pi integral_0^1 t (1-t^2)^4 dt = 2pi / 10
            return r * r * M_PI / 5.0;
        }
        default: return r * r * r * 4.0 * M_PI * 128.0 / 3465.0;
    }
}

double BumpProfile::amplitude() const { return nu_k / std::sqrt(2.0); }

BumpProfile BumpProfile::standard(int dimension, double support_radius, double hbar) {
    BumpProfile p;
    p.dimension = dimension;
    p.support_radius = support_radius;
    p.hbar = hbar;
    p.nu_k = 1.0;
    p.validate();
    p.nu_k = std::sqrt(2.0 * hbar / p.shape_norm_sq());
    return p;
}

std::complex<double> build_single_particle_field(const BumpProfile& profile,
                                                 const SolitonInstance& instance,
                                                 const std::vector<double>& point) {
    if (point.size() != instance.center.size())
        throw std::invalid_argument("build_single_particle_field: dimension mismatch");
    double q = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double d = point[i] - instance.center[i];
        q += d * d;
    }
    const double t2 = q / (profile.support_radius * profile.support_radius);
    if (t2 >= 1.0) return {0.0, 0.0};
    const double p = 1.0 - t2;
    double arg = instance.phase;
    if (!instance.carrier.empty()) {
        for (std::size_t i = 0; i < point.size(); ++i)
            arg += instance.carrier[i] * (point[i] - instance.center[i]);
    }
    return std::polar(profile.amplitude() * p * p, arg);
}

} // namespace solq::ensemble
