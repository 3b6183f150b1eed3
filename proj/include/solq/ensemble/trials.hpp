#pragma once

#include <cstdint>
#include <vector>

#include "solq/ensemble/bump.hpp"

namespace solq::ensemble {

struct Box {
    std::vector<double> lo, hi;

    int dimension() const { return int(lo.size()); }
    double volume() const;
    bool contains(const std::vector<double>& x) const;
    void validate() const;
};

// Center-sampling density: uniform over the domain inset by one support
// radius (so every field keeps its full norm inside the box), optionally
// with an excluded sub-box.
struct SamplingDensity {
    Box excluded; // empty = plain uniform
    bool has_exclusion() const { return !excluded.lo.empty(); }
};

struct EnsembleConfig {
    int n_particles = 1;
    long long n_trials = 100;
    Box domain;
    double cell_volume = 0.0;   // per-particle cell measure
    double proper_volume = 0.0; // support measure of one soliton
    double packing_alpha = 1.0;
    std::uint64_t seed = 1;
    SamplingDensity density;
    bool disjoint_supports = true;
    std::vector<double> carrier; // optional common carrier wavevector

    void validate() const;
};

// One trial: centers from the sampling density (rejection keeps pairwise
// separation >= 2 support radii in disjoint-support mode), phases uniform on
// [0, 2pi). Deterministic: the stream is derived from (seed, trial_index).
TrialConfiguration sample_trial(const EnsembleConfig& config, const BumpProfile& profile,
                                long long trial_index);

std::vector<TrialConfiguration> sample_trials(const EnsembleConfig& config,
                                              const BumpProfile& profile, unsigned workers = 1);

} // namespace solq::ensemble
