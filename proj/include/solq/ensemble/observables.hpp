#pragma once

#include <vector>

#include "solq/ensemble/wavefunction.hpp"

namespace solq::ensemble {

enum class Generator {
    translation, // -i d/dx along a component
    rotation     // -i (x d/dy - y d/dx), d = 3
};

struct ObservableMeans {
    double ensemble_mean = 0.0;   // (1/N) sum_j sum_k <phi| hbar M |phi>
    double quadrature_mean = 0.0; // integral Psi^* A Psi with A = sum_k hbar M^(k)
    std::vector<double> per_particle;
};

// Both routes to the observable mean: per-trial one-particle integrals
// averaged over the ensemble, and the grid quadrature against the assembled
// wavefunction. They agree up to the cross-trial overlap noise.
ObservableMeans observable_mean(const std::vector<TrialConfiguration>& trials,
                                const BumpProfile& profile, Generator generator, int component,
                                const StochasticWavefunction& psi, unsigned workers = 1);

} // namespace solq::ensemble
