#pragma once

#include <complex>
#include <vector>

namespace solq::ensemble {

// Compactly supported C^1 bump s(t) = (1 - t^2)^2 on |t| < 1 used as the
// one-particle profile. Exact support realizes the disjoint-support
// requirement; the squared-shape integrals are analytic:
//   d = 1: integral s(x/R)^2 dx       = R * 256/315
//   d = 3: integral s(|x|/R)^2 d^3x   = R^3 * 4pi * 128/3465
struct BumpProfile {
    int dimension = 1;
    double support_radius = 1.0;
    double nu_k = 1.0; // field/momentum mixing constant; fixes the norm
    double hbar = 1.0;

    // nu_k chosen so the complex field (nu_k phi + i pi/nu_k)/sqrt(2) built
    // from the unit-amplitude bump integrates to |.|^2 = hbar (static
    // snapshot, pi = 0).
    static BumpProfile standard(int dimension, double support_radius, double hbar = 1.0);

    double shape(double t) const {
        const double q = t * t;
        if (q >= 1.0) return 0.0;
        const double p = 1.0 - q;
        return p * p;
    }
    // amplitude multiplying the shape in the complex field
    double amplitude() const;
    // integral of shape^2 over R^dimension at this support radius
    double shape_norm_sq() const;

    void validate() const;
};

struct SolitonInstance {
    int particle_index = 1; // 1-based
    std::vector<double> center;
    double phase = 0.0;
    std::vector<double> carrier; // optional wavevector; empty = none
};

struct TrialConfiguration {
    long long trial_index = 0;
    std::vector<SolitonInstance> instances;

    int n_particles() const { return int(instances.size()); }
};

// Complex field value of one soliton instance at a point:
//   amp * s(|x - c|/R) * exp(i [phase + k.(x - c)])
std::complex<double> build_single_particle_field(const BumpProfile& profile,
                                                 const SolitonInstance& instance,
                                                 const std::vector<double>& point);

} // namespace solq::ensemble
