#pragma once

#include <array>
#include <complex>

namespace solq::epr {

struct Direction {
    std::array<double, 3> components{0.0, 0.0, 1.0};

    static Direction normalized(double x, double y, double z);
    // polar angle theta from +z, azimuth phi
    static Direction from_polar(double theta, double phi = 0.0);
    void require_unit() const;
    double dot(const Direction& other) const;
};

// Two-spin-1/2 state in the basis {uu, ud, du, dd}.
struct SpinPairState {
    std::array<std::complex<double>, 4> amplitudes{};

    double norm() const;
    // swap of the two particle labels (basis reordering ud <-> du)
    SpinPairState swapped() const;
};

// (|ud> - |du>)/sqrt(2)
SpinPairState singlet_state();

// psi^+ (sigma.a (x) sigma.b) psi for the singlet; equals -(a.b).
double qm_spin_correlation(const Direction& a, const Direction& b);

// General quadratic form psi^+ (sigma.a (x) sigma.b) psi (real for Hermitian
// operators; used by tests and the soliton route).
double spin_correlation_form(const SpinPairState& psi, const Direction& a, const Direction& b);

} // namespace solq::epr
