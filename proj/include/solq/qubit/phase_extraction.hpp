#pragma once

#include <complex>
#include <vector>

#include "solq/ensemble/wavefunction.hpp"

namespace solq::qubit {

// The reference soliton shape matched against trial fields.
using EtalonProfile = ensemble::BumpProfile;

struct PhaseExtraction {
    double best_center = 0.0;    // argmax of |overlap(d)|
    double overlap_modulus = 0.0;
    double overlap_arg = 0.0;    // in (-pi, pi]
};

// Variational match of a trial field against the shifted etalon: coarse scan
// of |integral conj(field) etalon(x - d) dx| over d, then parabolic/golden
// refinement of the maximizer.
PhaseExtraction most_probable_center(const std::vector<std::complex<double>>& field,
                                     const ensemble::GridAxis& axis, const EtalonProfile& etalon);

// Sum of the per-particle overlap phases, wrapped into [0, 2pi).
double random_phase(const std::vector<PhaseExtraction>& extractions);

} // namespace solq::qubit
