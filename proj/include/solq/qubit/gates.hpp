#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace solq::qubit {

// Classically simulable two-state carrier with signed real amplitudes; the
// probabilities are the squared entries. Signed amplitudes (not bare
// probabilities) are needed for the Hadamard to send the balanced bit back
// to |0>.
struct ProbBit {
    std::array<double, 2> amplitude_pair{1.0, 0.0};

    double norm() const;
    void require_normalized(double tol = 1e-12) const;
    double prob_one() const { return amplitude_pair[1] * amplitude_pair[1]; }
};

inline ProbBit prob_bit_zero() { return {{1.0, 0.0}}; }
inline ProbBit prob_bit_one() { return {{0.0, 1.0}}; }

struct BitRegister {
    std::vector<ProbBit> bits;
    std::vector<int> sampled_values; // trial-level {0,1} draws
};

// Maps the +-1 signal variable ("green"/"red") to initial bit states.
struct SignalRule {
    ProbBit on_plus = prob_bit_zero();  // green
    ProbBit on_minus = prob_bit_one(); // red
};

// Samples the register-wide signal variable sign[cos(Phi)] with Phi uniform
// and initializes every bit by the rule.
BitRegister initialize_register(int n_bits, const SignalRule& rule, std::uint64_t seed);
// Deterministic variant with a forced signal value (+1 or -1).
BitRegister initialize_register_forced(int n_bits, const SignalRule& rule, int signal_value);

ProbBit hadamard(const ProbBit& bit);

// The control enters as a definite sampled value; control 1 flips the target
// amplitudes, control 0 leaves them.
ProbBit cnot(int control_value, const ProbBit& target);

// Draws 0/1 from the squared amplitudes.
int sample_bit(const ProbBit& bit, std::uint64_t seed, std::uint64_t index);

} // namespace solq::qubit
