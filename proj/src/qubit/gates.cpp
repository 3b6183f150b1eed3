#include "solq/qubit/gates.hpp"

#include <cmath>
#include <stdexcept>

#include "solq/qubit/dichotomic.hpp"
#include "solq/rng.hpp"

namespace solq::qubit {

double ProbBit::norm() const {
    return std::sqrt(amplitude_pair[0] * amplitude_pair[0] +
                     amplitude_pair[1] * amplitude_pair[1]);
}

void ProbBit::require_normalized(double tol) const {
    if (std::abs(norm() - 1.0) > tol)
        throw std::invalid_argument("ProbBit: amplitudes not normalized");
}

BitRegister initialize_register(int n_bits, const SignalRule& rule, std::uint64_t seed) {
    RngStream rng(seed, stream_tag::signal, 0);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    return initialize_register_forced(n_bits, rule, dichotomic_sample(phi, 0.0));
}

BitRegister initialize_register_forced(int n_bits, const SignalRule& rule, int signal_value) {
    if (n_bits < 1) throw std::invalid_argument("initialize_register: n_bits >= 1");
    if (signal_value != 1 && signal_value != -1)
        throw std::invalid_argument("initialize_register: signal must be +-1");
    BitRegister reg;
    reg.bits.assign(std::size_t(n_bits), signal_value > 0 ? rule.on_plus : rule.on_minus);
    return reg;
}

ProbBit hadamard(const ProbBit& bit) {
    bit.require_normalized();
    const double a = bit.amplitude_pair[0], b = bit.amplitude_pair[1];
    return {{(a + b) * M_SQRT1_2, (a - b) * M_SQRT1_2}};
}

ProbBit cnot(int control_value, const ProbBit& target) {
    if (control_value != 0 && control_value != 1)
        throw std::invalid_argument("cnot: control must be a sampled 0/1 value");
    target.require_normalized();
    if (control_value == 0) return target;
    return {{target.amplitude_pair[1], target.amplitude_pair[0]}};
}

int sample_bit(const ProbBit& bit, std::uint64_t seed, std::uint64_t index) {
    bit.require_normalized();
    RngStream rng(seed, stream_tag::signal, index + 1);
    return rng.uniform() < bit.prob_one() ? 1 : 0;
}

} // namespace solq::qubit
