#pragma once

#include <cstdint>
#include <vector>

#include "solq/ensemble/wavefunction.hpp"
#include "solq/qubit/phase_extraction.hpp"

namespace solq::qubit {

// sign[cos(phi + theta)] with the zero-crossing tie resolved to +1.
int dichotomic_sample(double phi, double theta);

// Exact fmod-based reduction into [0, 2pi); bitwise stable under adding
// multiples of 2pi that are exactly representable.
double wrap_two_pi(double angle);
// Reduction into (-pi, pi].
double wrap_pm_pi(double angle);

struct DichotomicCorrelation {
    double estimate = 0.0;
    double std_error = 0.0;
    double analytic = 0.0; // 1 - (2/pi)|wrapped(theta1 - theta2)|
};

// Correlation of two dichotomic samples over uniform random phases.
DichotomicCorrelation dichotomic_correlation(double theta1, double theta2,
                                             long long n_samples, std::uint64_t seed,
                                             unsigned workers = 1);

double triangle_correlation(double delta_theta); // the analytic value

struct PipelineRow {
    double theta1 = 0.0, theta2 = 0.0;
    double analytic = 0.0;
    double estimate = 0.0;
    double stderr_est = 0.0;
};

struct PipelineReport {
    std::vector<PipelineRow> rows;
    double phase_chi2 = 0.0;
    bool phases_uniform = true; // chi^2 at the 1% level over 16 bins
};

// Full chain: per-trial per-particle phase extraction, the summed random
// phase, dichotomic sampling at each theta, and the correlation table for all
// theta pairs against the analytic triangle law.
PipelineReport end_to_end_phase_pipeline(const std::vector<ensemble::TrialConfiguration>& trials,
                                         const ensemble::BumpProfile& profile,
                                         const EtalonProfile& etalon,
                                         const ensemble::GridAxis& axis,
                                         const std::vector<double>& thetas);

} // namespace solq::qubit
