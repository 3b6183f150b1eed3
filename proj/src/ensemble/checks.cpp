#include "solq/ensemble/checks.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "solq/errors.hpp"
#include "solq/parallel.hpp"
#include "solq/quadrature.hpp"
#include "solq/rng.hpp"

namespace solq::ensemble {

Box CellPartition::particle_cell(int index) const {
    if (index < 0 || index >= n_cells) throw std::invalid_argument("CellPartition: bad index");
    return Box{{lo + width * index}, {lo + width * (index + 1)}};
}

Box CellPartition::config_cell(const std::vector<int>& indices) const {
    Box cell;
    for (int idx : indices) {
        const Box p = particle_cell(idx);
        cell.lo.push_back(p.lo[0]);
        cell.hi.push_back(p.hi[0]);
    }
    return cell;
}

long long empirical_counts(const std::vector<TrialConfiguration>& trials, const Box& cell) {
    if (trials.empty()) return 0;
    const int n = trials.front().n_particles();
    const int d = int(trials.front().instances.front().center.size());
    if (int(cell.lo.size()) != d * n)
        throw std::invalid_argument("empirical_counts: cell dimension != d*n");
    long long count = 0;
    for (const auto& t : trials) {
        bool inside = true;
        for (int k = 0; k < n && inside; ++k) {
            for (int a = 0; a < d && inside; ++a) {
                const double x = t.instances[k].center[a];
                if (x < cell.lo[k * d + a] || x >= cell.hi[k * d + a]) inside = false;
            }
        }
        if (inside) ++count;
    }
    return count;
}

namespace {

// One-axis overlap integral of conj(phi_i) phi_j restricted to [lo, hi].
// The integrand is a degree-8 polynomial times at most a slow carrier, so a
// 12-node rule is exact on the polynomial part.
std::complex<double> axis_overlap(const BumpProfile& profile, const SolitonInstance& a,
                                  const SolitonInstance& b, int axis, double lo, double hi) {
    const double r = profile.support_radius;
    const double ca = a.center[axis], cb = b.center[axis];
    const double x_lo = std::max({lo, ca - r, cb - r});
    const double x_hi = std::min({hi, ca + r, cb + r});
    if (!(x_lo < x_hi)) return {0.0, 0.0};
    const double amp2 = profile.amplitude() * profile.amplitude();
    const double ka = a.carrier.empty() ? 0.0 : a.carrier[axis];
    const double kb = b.carrier.empty() ? 0.0 : b.carrier[axis];
    const auto& rule = gauss_legendre(12);
    const double mid = 0.5 * (x_lo + x_hi), half = 0.5 * (x_hi - x_lo);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = mid + half * rule.nodes[q];
        const double sa = profile.shape((x - ca) / r);
        const double sb = profile.shape((x - cb) / r);
        const double arg = (b.phase + kb * (x - cb)) - (a.phase + ka * (x - ca));
        acc += rule.weights[q] * sa * sb * std::polar(1.0, arg);
    }
    return amp2 * half * acc;
}

std::complex<double> pair_overlap(const BumpProfile& profile, const TrialConfiguration& ti,
                                  const TrialConfiguration& tj, const Box& cell) {
    const int n = ti.n_particles();
    std::complex<double> prod{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        const auto o = axis_overlap(profile, ti.instances[k], tj.instances[k], 0, cell.lo[k],
                                    cell.hi[k]);
        if (o == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
        prod *= o;
    }
    return prod;
}

// Candidate pairs with overlapping supports on every particle axis
// (d = 1 particles; neighbor search along the first particle's coordinate).
std::vector<std::pair<int, int>> overlap_pairs(const std::vector<TrialConfiguration>& trials,
                                               double radius) {
    const int n_trials = int(trials.size());
    std::vector<int> order(n_trials);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return trials[a].instances[0].center[0] < trials[b].instances[0].center[0];
    });
    const int n = trials.front().n_particles();
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n_trials; ++a) {
        const int i = order[a];
        const double ci = trials[i].instances[0].center[0];
        for (int b = a + 1; b < n_trials; ++b) {
            const int j = order[b];
            if (trials[j].instances[0].center[0] - ci >= 2.0 * radius) break;
            bool all = true;
            for (int k = 1; k < n && all; ++k) {
                if (std::abs(trials[i].instances[k].center[0] -
                             trials[j].instances[k].center[0]) >= 2.0 * radius)
                    all = false;
            }
            if (all) pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    return pairs;
}

} // namespace

double cell_probability_pairsum(const std::vector<TrialConfiguration>& trials,
                                const BumpProfile& profile, const Box& cell) {
    if (trials.empty()) return 0.0;
    const int n = trials.front().n_particles();
    const double hbar_n = std::pow(profile.hbar, double(n));
    double diag = 0.0;
    for (const auto& t : trials) diag += std::real(pair_overlap(profile, t, t, cell));
    double cross = 0.0;
    for (const auto& [i, j] : overlap_pairs(trials, profile.support_radius))
        cross += 2.0 * std::real(pair_overlap(profile, trials[i], trials[j], cell));
    return (diag + cross) / (hbar_n * double(trials.size()));
}

CrossTermStat cross_term_statistic(const std::vector<TrialConfiguration>& trials,
                                   const BumpProfile& profile, const Box& cell,
                                   long long pair_limit) {
    if ((long long)(trials.size()) > pair_limit)
        throw CostGuardError("cross_term_statistic: trial count above the quadratic-cost limit");
    CrossTermStat stat;
    if (trials.empty()) return stat;
    for (const auto& t : trials) stat.a_diag_sum += std::real(pair_overlap(profile, t, t, cell));
    for (const auto& [i, j] : overlap_pairs(trials, profile.support_radius)) {
        const double a_ij = std::real(pair_overlap(profile, trials[i], trials[j], cell));
        if (a_ij != 0.0) stat.a_offdiag.push_back(a_ij);
        stat.s_sum += 2.0 * a_ij;
    }
    return stat;
}

BornReport born_rule_check(const EnsembleConfig& config,
                           const std::vector<TrialConfiguration>& trials,
                           const BumpProfile& profile, const CellPartition& cells,
                           unsigned workers) {
    config.validate();
    if (trials.empty()) throw std::invalid_argument("born_rule_check: no trials");
    const int n = trials.front().n_particles();
    if (n != 1 && n != 2) throw std::invalid_argument("born_rule_check: n in {1, 2} supported");
    const long long n_trials = (long long)(trials.size());
    const double bound =
        std::pow(config.packing_alpha * config.proper_volume / cells.width, double(n));

    // Density side: a materialized grid quadrature for n = 1, the exact
    // separable pair sum for n = 2 (a square grid at this scale is not
    // affordable, the pair sum is the same tensor quadrature in factored
    // form).
    std::vector<double> scaled_density;
    const long long total_cells = n == 1 ? cells.n_cells : cells.n_cells * cells.n_cells;
    scaled_density.assign(total_cells, 0.0);
    if (n == 1) {
        const double span = cells.width * cells.n_cells;
        const std::size_t per_cell = std::size_t(std::ceil(cells.width / (profile.support_radius / 25.0)));
        GridSpec grid{{GridAxis{cells.lo, cells.lo + span, cells.n_cells * per_cell + 1}}};
        const auto psi = assemble_wavefunction(trials, profile, grid);
        parallel_chunks(total_cells, 1, workers, [&](std::size_t c, std::size_t, std::size_t) {
            scaled_density[c] = cell_probability(psi, cells.particle_cell(int(c)));
        });
    } else {
        parallel_chunks(total_cells, 1, workers, [&](std::size_t c, std::size_t, std::size_t) {
            const int a = int(c) / cells.n_cells, b = int(c) % cells.n_cells;
            scaled_density[c] =
                cell_probability_pairsum(trials, profile, cells.config_cell({a, b}));
        });
    }

    BornReport report;
    report.bound = bound;
    for (long long c = 0; c < total_cells; ++c) {
        BornCellRow row;
        row.cell_index = c;
        Box cell = n == 1 ? cells.config_cell({int(c)})
                          : cells.config_cell({int(c) / cells.n_cells, int(c) % cells.n_cells});
        const long long dn = empirical_counts(trials, cell);
        row.freq = double(dn) / double(n_trials);
        row.scaled_density = scaled_density[c];
        row.deviation = std::abs(row.scaled_density - row.freq);
        row.budget =
            3.0 * std::sqrt(row.freq * (1.0 - row.freq) / double(n_trials)) + bound;
        row.pass = row.deviation <= row.budget;
        report.max_deviation = std::max(report.max_deviation, row.deviation);
        report.rows.push_back(row);
    }
    report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                              [](const BornCellRow& r) { return r.pass; });
    return report;
}

ChebyshevReport chebyshev_bound_check(const EnsembleConfig& config, const BumpProfile& profile,
                                      int repetitions, unsigned workers) {
    config.validate();
    if (repetitions < 100)
        throw std::invalid_argument("chebyshev_bound_check: repetitions >= 100 required");
    const int n = config.n_particles;
    const double hbar_n = std::pow(profile.hbar, double(n));

    // Central cell of width cell_volume on every particle axis.
    const double mid = 0.5 * (config.domain.lo[0] + config.domain.hi[0]);
    Box cell;
    for (int k = 0; k < n; ++k) {
        cell.lo.push_back(mid - 0.5 * config.cell_volume);
        cell.hi.push_back(mid + 0.5 * config.cell_volume);
    }

    std::vector<char> exceeded(repetitions, 0);
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_chunks(std::size_t(repetitions), 4, workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        try {
                            for (std::size_t rep = lo; rep < hi; ++rep) {
                                EnsembleConfig sub = config;
                                sub.seed = splitmix64(config.seed ^ (0x9e37 + rep));
                                const auto trials = sample_trials(sub, profile, 1);
                                const auto stat = cross_term_statistic(
                                    trials, profile, cell, config.n_trials);
                                const long long dn = empirical_counts(trials, cell);
                                exceeded[rep] =
                                    std::abs(stat.s_sum) > hbar_n * double(dn) ? 1 : 0;
                            }
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(error_mutex);
                            if (!error) error = std::current_exception();
                        }
                    });
    if (error) std::rethrow_exception(error);

    ChebyshevReport report;
    report.repetitions = repetitions;
    report.bound = std::pow(config.packing_alpha * config.proper_volume / config.cell_volume,
                            double(n));
    long long count = 0;
    for (char e : exceeded) count += e;
    report.exceed_freq = double(count) / double(repetitions);
    report.sigma_binomial = std::sqrt(report.bound * (1.0 - report.bound) / double(repetitions));
    report.pass = report.exceed_freq <= report.bound + 3.0 * report.sigma_binomial;
    return report;
}

GaussianReport gaussian_limit_check(const EnsembleConfig& config, const BumpProfile& profile,
                                    int repetitions, unsigned workers) {
    config.validate();
    if (config.n_particles != 1 || config.domain.dimension() != 1)
        throw std::invalid_argument("gaussian_limit_check: d = 1, n = 1 supported");
    if (repetitions < 100)
        throw std::invalid_argument("gaussian_limit_check: repetitions >= 100 required");
    if (config.n_trials < 1000)
        throw std::invalid_argument("gaussian_limit_check: n_trials >= 1000 required");

    const double r = profile.support_radius;
    const double lo = config.domain.lo[0], hi = config.domain.hi[0];

    // Probe points well inside the inset sampling region (and away from any
    // excluded box boundary).
    std::vector<double> points;
    const double p_lo = lo + 2.0 * r, p_hi = hi - 2.0 * r;
    for (int q = 0; q < 8; ++q) {
        const double x = p_lo + (double(q) + 0.5) / 8.0 * (p_hi - p_lo);
        if (config.density.has_exclusion() && x > config.density.excluded.lo[0] - 2.0 * r &&
            x < config.density.excluded.hi[0] + 2.0 * r)
            continue;
        points.push_back(x);
    }
    if (config.density.has_exclusion())
        points.push_back(0.5 *
                         (config.density.excluded.lo[0] + config.density.excluded.hi[0]));

    // Uniform center density over the allowed inset region.
    double allowed = (hi - lo) - 2.0 * r;
    if (config.density.has_exclusion()) {
        const double ex_lo = std::max(config.density.excluded.lo[0], lo + r);
        const double ex_hi = std::min(config.density.excluded.hi[0], hi - r);
        if (ex_hi > ex_lo) allowed -= ex_hi - ex_lo;
    }
    const double rho_uniform = 1.0 / allowed;

    const std::size_t n_points = points.size();
    std::vector<std::vector<std::complex<double>>> samples(
        n_points, std::vector<std::complex<double>>(repetitions));
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_chunks(std::size_t(repetitions), 4, workers,
                    [&](std::size_t, std::size_t rep_lo, std::size_t rep_hi) {
                        try {
                            for (std::size_t rep = rep_lo; rep < rep_hi; ++rep) {
                                EnsembleConfig sub = config;
                                sub.seed = splitmix64(config.seed ^ (0x6761 + rep));
                                const auto trials = sample_trials(sub, profile, 1);
                                const double scale =
                                    1.0 / std::sqrt(profile.hbar * double(trials.size()));
                                for (std::size_t q = 0; q < n_points; ++q) {
                                    std::complex<double> acc{0.0, 0.0};
                                    for (const auto& t : trials)
                                        acc += build_single_particle_field(
                                            profile, t.instances[0], {points[q]});
                                    samples[q][rep] = scale * acc;
                                }
                            }
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(error_mutex);
                            if (!error) error = std::current_exception();
                        }
                    });
    if (error) std::rethrow_exception(error);

    GaussianReport report;
    report.repetitions = repetitions;
    const double nr = double(repetitions);
    for (std::size_t q = 0; q < n_points; ++q) {
        GaussianPointStat st;
        st.x = points[q];
        const bool excluded_probe =
            config.density.has_exclusion() && config.density.excluded.contains({points[q]});
        st.density = excluded_probe ? 0.0 : rho_uniform;

        double m_re = 0.0, m_im = 0.0;
        for (const auto& v : samples[q]) {
            m_re += v.real();
            m_im += v.imag();
        }
        m_re /= nr;
        m_im /= nr;
        double v_re = 0.0, v_im = 0.0, s3 = 0.0, s4 = 0.0;
        for (const auto& v : samples[q]) {
            const double dr = v.real() - m_re, di = v.imag() - m_im;
            v_re += dr * dr;
            v_im += di * di;
            s3 += dr * dr * dr;
            s4 += dr * dr * dr * dr;
        }
        v_re /= nr - 1.0;
        v_im /= nr - 1.0;
        st.var_re = v_re;
        st.var_im = v_im;
        if (v_re > 0.0) {
            st.skew_re = (s3 / nr) / std::pow(v_re, 1.5);
            st.kurt_re = (s4 / nr) / (v_re * v_re);
        } else {
            st.skew_re = 0.0;
            st.kurt_re = 3.0;
        }

        if (excluded_probe) {
            st.pass = st.var_re + st.var_im < 1e-20;
        } else {
            const double half = 0.5 * st.density;
            const double var_band = 3.0 * half * std::sqrt(2.0 / (nr - 1.0));
            st.pass = std::abs(st.var_re - half) <= var_band &&
                      std::abs(st.var_im - half) <= var_band &&
                      std::abs(st.skew_re) <= 3.0 * std::sqrt(6.0 / nr) &&
                      std::abs(st.kurt_re - 3.0) <= 3.0 * std::sqrt(24.0 / nr);
        }
        report.points.push_back(st);
    }
    report.pass = std::all_of(report.points.begin(), report.points.end(),
                              [](const GaussianPointStat& p) { return p.pass; });
    return report;
}

} // namespace solq::ensemble
