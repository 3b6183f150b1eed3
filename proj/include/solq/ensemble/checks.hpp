#pragma once

#include <complex>
#include <vector>

#include "solq/ensemble/wavefunction.hpp"
#include "solq/report.hpp"

namespace solq::ensemble {

// Uniform partition of one particle axis into cells of width cell_volume;
// configuration-space cells are products over the n particles.
struct CellPartition {
    double lo = 0.0;
    int n_cells = 1;
    double width = 1.0;

    Box particle_cell(int index) const;
    // Configuration-space cell for per-particle indices.
    Box config_cell(const std::vector<int>& indices) const;
};

// Number of trials whose full center tuple lies in the configuration cell.
long long empirical_counts(const std::vector<TrialConfiguration>& trials, const Box& cell);

// Exact pair-sum evaluation of the |Psi|^2 cell integral via per-axis overlap
// integrals of the trial products (separable in the particle coordinates).
double cell_probability_pairsum(const std::vector<TrialConfiguration>& trials,
                                const BumpProfile& profile, const Box& cell);

struct CrossTermStat {
    double s_sum = 0.0;               // sum over ordered pairs i != j
    std::vector<double> a_offdiag;    // one entry per unordered pair i < j
    double a_diag_sum = 0.0;
};

// Overlap statistics over a cell: a_ij = Re prod_k <phi_i^(k)|phi_j^(k)>_cell.
// The (i,j) and (j,i) terms are conjugate, so s_sum = 2 sum_{i<j} a_ij.
CrossTermStat cross_term_statistic(const std::vector<TrialConfiguration>& trials,
                                   const BumpProfile& profile, const Box& cell,
                                   long long pair_limit = 2000);

struct BornCellRow {
    long long cell_index = 0;
    double scaled_density = 0.0; // cell-integrated |Psi|^2
    double freq = 0.0;           // count fraction
    double deviation = 0.0;
    double budget = 0.0; // 3 sigma binomial + cross-term bound
    bool pass = false;
};

struct BornReport {
    std::vector<BornCellRow> rows;
    double bound = 0.0; // (alpha v0 / dv)^n
    double max_deviation = 0.0;
    bool pass = false;
};

// Per-cell comparison of the cell-integrated density against the trial
// occupancy fraction, with the statistical + cross-term budget
//   |density - freq| <= 3 sqrt(freq (1-freq)/N) + (alpha v0/dv)^n.
BornReport born_rule_check(const EnsembleConfig& config,
                           const std::vector<TrialConfiguration>& trials,
                           const BumpProfile& profile, const CellPartition& cells,
                           unsigned workers = 1);

struct ChebyshevReport {
    double bound = 0.0;        // (alpha v0/dv)^n
    double exceed_freq = 0.0;  // frequency of |S| > hbar^n dN
    double sigma_binomial = 0.0;
    int repetitions = 0;
    bool pass = false;
};

// Re-samples whole ensembles and measures how often the cross term exceeds
// hbar^n dN over the central cell.
ChebyshevReport chebyshev_bound_check(const EnsembleConfig& config, const BumpProfile& profile,
                                      int repetitions, unsigned workers = 1);

struct GaussianPointStat {
    double x = 0.0;
    double density = 0.0; // expected variance of the field at this point
    double var_re = 0.0, var_im = 0.0;
    double skew_re = 0.0, kurt_re = 0.0;
    bool pass = false;
};

struct GaussianReport {
    std::vector<GaussianPointStat> points;
    int repetitions = 0;
    bool pass = false;
};

// Variance/normality of the assembled field value across independent
// ensembles at fixed probe points.
GaussianReport gaussian_limit_check(const EnsembleConfig& config, const BumpProfile& profile,
                                    int repetitions, unsigned workers = 1);

} // namespace solq::ensemble
