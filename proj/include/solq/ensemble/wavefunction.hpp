#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "solq/ensemble/trials.hpp"

namespace solq::ensemble {

struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 2; // number of points, endpoints included

    double step() const { return (hi - lo) / double(n - 1); }
    double point(std::size_t i) const { return lo + double(i) * step(); }
};

struct GridSpec {
    std::vector<GridAxis> axes;

    std::size_t total_points() const {
        std::size_t t = 1;
        for (const auto& a : axes) t *= a.n;
        return t;
    }
};

// Ensemble sum over trial products on a configuration-space grid, scaled by
// (hbar^n N)^{-1/2}. Values are stored split (re/im) for the vector kernels.
struct StochasticWavefunction {
    GridSpec grid;
    std::vector<double> re, im;
    std::size_t n_trials = 0;

    std::complex<double> value(std::size_t flat) const { return {re[flat], im[flat]}; }
};

// Supported layouts: n = 1 in d = 1, 2, 3 and n = 2 in d = 1. Grids larger
// than ~2^26 points are refused.
StochasticWavefunction assemble_wavefunction(const std::vector<TrialConfiguration>& trials,
                                             const BumpProfile& profile, const GridSpec& grid);

// Quadrature of |Psi|^2 over a cell (axis-aligned, snapped to grid points)
// divided by the cell volume.
double cell_density(const StochasticWavefunction& psi, const Box& cell);

// Plain quadrature of |Psi|^2 over a cell (no volume division).
double cell_probability(const StochasticWavefunction& psi, const Box& cell);

// One-particle field sampled along a 1d grid (used by the phase-extraction
// pipeline and the lattice demo).
std::vector<std::complex<double>> sample_field_1d(const BumpProfile& profile,
                                                  const SolitonInstance& instance,
                                                  const GridAxis& axis);

} // namespace solq::ensemble
