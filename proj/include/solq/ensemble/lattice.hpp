#pragma once

#include <complex>
#include <vector>

#include "solq/ensemble/wavefunction.hpp"

namespace solq::ensemble {

struct LatticeDemoResult {
    double fit_error = 0.0;                     // relative L2 misfit in the central region
    std::complex<double> fitted_amplitude{0.0}; // least-squares coefficient of e^{ikx}
    GridAxis sample_axis;                       // central-region sampling
    std::vector<std::complex<double>> samples;  // lattice sum on the sample axis
};

// Sum of carrier-bearing copies u(x + d) over n_nodes lattice nodes with
// spacing a, least-squares fitted against A e^{ikx} over the central region.
// A plane wave only emerges when the copies overlap coherently, so the
// profile must extend over many nodes (support_radius >> a) and the carrier
// must sit on a reciprocal mode (k = 2 pi m / a); both are checked.
LatticeDemoResult lattice_plane_wave_demo(const BumpProfile& profile, double spacing,
                                          double k, int n_nodes);

} // namespace solq::ensemble
