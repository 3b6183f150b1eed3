#pragma once

#include <cstdint>
#include <vector>

#include "solq/epr/singlet.hpp"
#include "solq/soliton/model.hpp"

namespace solq::epr {

// Antisymmetric two-soliton configuration in factored form: the spin singlet
// times one shared radial profile per particle. The pair norm is the square
// of the one-particle radial integral (the opposite-projection states are
// pointwise orthogonal, which the angular quadrature confirms).
struct EntangledPair {
    SpinPairState spin_part;
    soliton::RadialProfile radial_profile;
    double norm_pair = 0.0; // two-particle normalization integral
    double radial_integral = 0.0;
    double hbar = 1.0;
};

EntangledPair build_entangled_pair(const soliton::RadialProfile& profile,
                                   const soliton::ModelParams& params,
                                   double normalization_tolerance = 1e-6);

// Spin correlation of the pair by the ladder-operator route: 2(J.a) acts on
// the {up, down} soliton doublet exactly as sigma.a, and the radial factor
// contributes (integral r^2 (f^2+g^2))^2 / hbar^2.
double soliton_spin_correlation_exact(const EntangledPair& pair, const Direction& a,
                                      const Direction& b);

struct SingletEnsemble {
    long long n_trials = 0;
    std::vector<double> phases; // one global phase per trial
    EntangledPair pair;
};

SingletEnsemble make_singlet_ensemble(const EntangledPair& pair, long long n_trials,
                                      std::uint64_t seed);

struct McCorrelation {
    double estimate = 0.0;
    double std_error = 0.0;
    double phase_uniformity_chi2 = 0.0; // flags non-random phase streams
    bool phases_uniform = true;
};

// Monte-Carlo route: the ensemble average over random global phases,
// evaluated block-wise so cross-trial terms enter with their fluctuations and
// the block spread yields the standard error.
McCorrelation soliton_spin_correlation_mc(const SingletEnsemble& ensemble, const Direction& a,
                                          const Direction& b);

enum class CorrelationModel { qm_cosine, soliton_exact, soliton_mc };

struct CorrelationCurveRow {
    double theta = 0.0;
    double qm = 0.0;
    double soliton_exact = 0.0;
    double soliton_mc = 0.0;
    double mc_stderr = 0.0;
};

// P(theta) for direction pairs separated by theta, all three routes.
std::vector<CorrelationCurveRow> correlation_curve(const EntangledPair& pair,
                                                   const std::vector<double>& angles,
                                                   long long mc_trials, std::uint64_t seed);

} // namespace solq::epr
