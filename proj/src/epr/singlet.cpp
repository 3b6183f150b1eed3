#include "solq/epr/singlet.hpp"

#include <cmath>
#include <stdexcept>

namespace solq::epr {

namespace {
using cd = std::complex<double>;
using Mat2 = std::array<std::array<cd, 2>, 2>;

Mat2 pauli_dot(const Direction& n) {
    const double x = n.components[0], y = n.components[1], z = n.components[2];
    return {{{cd(z, 0.0), cd(x, -y)}, {cd(x, y), cd(-z, 0.0)}}};
}
} // namespace

Direction Direction::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0)) throw std::invalid_argument("Direction: zero vector");
    return Direction{{x / n, y / n, z / n}};
}

Direction Direction::from_polar(double theta, double phi) {
    return Direction{{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                      std::cos(theta)}};
}

void Direction::require_unit() const {
    const double n2 = components[0] * components[0] + components[1] * components[1] +
                      components[2] * components[2];
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("Direction: not unit length");
}

double Direction::dot(const Direction& other) const {
    return components[0] * other.components[0] + components[1] * other.components[1] +
           components[2] * other.components[2];
}

double SpinPairState::norm() const {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    return std::sqrt(n2);
}

SpinPairState SpinPairState::swapped() const {
    return SpinPairState{{amplitudes[0], amplitudes[2], amplitudes[1], amplitudes[3]}};
}

SpinPairState singlet_state() {
    SpinPairState s;
    s.amplitudes = {cd(0.0), cd(M_SQRT1_2), cd(-M_SQRT1_2), cd(0.0)};
    return s;
}

double spin_correlation_form(const SpinPairState& psi, const Direction& a, const Direction& b) {
    a.require_unit();
    b.require_unit();
    const Mat2 sa = pauli_dot(a), sb = pauli_dot(b);
    // (sigma.a (x) sigma.b)[(i,k),(j,l)] = sa[i][j] sb[k][l]
    cd acc{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l)
                    acc += std::conj(psi.amplitudes[2 * i + k]) * sa[i][j] * sb[k][l] *
                           psi.amplitudes[2 * j + l];
    return acc.real();
}

double qm_spin_correlation(const Direction& a, const Direction& b) {
    return spin_correlation_form(singlet_state(), a, b);
}

} // namespace solq::epr
