#include "solq/ensemble/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

#include "solq/errors.hpp"
#include "solq/kernels/kernels.hpp"
#include "solq/quadrature.hpp"

namespace solq::ensemble {
namespace {

constexpr std::size_t kMaxGridPoints = std::size_t(1) << 26;

// Grid index window covering [x - R, x + R], clipped.
void support_window(const GridAxis& axis, double center, double radius, std::size_t& i_lo,
                    std::size_t& i_hi) {
    const double h = axis.step();
    const double lo = (center - radius - axis.lo) / h;
    const double hi = (center + radius - axis.lo) / h;
    i_lo = lo <= 0.0 ? 0 : std::size_t(std::ceil(lo));
    const double hi_clamped = std::min(hi, double(axis.n - 1));
    i_hi = hi_clamped < 0.0 ? 0 : std::size_t(std::floor(hi_clamped)) + 1;
    if (i_lo > axis.n) i_lo = axis.n;
    if (i_hi < i_lo) i_hi = i_lo;
}

void accumulate_instance_1d(std::vector<double>& re, std::vector<double>& im,
                            const GridAxis& axis, const BumpProfile& profile,
                            const SolitonInstance& inst) {
    std::size_t i_lo, i_hi;
    support_window(axis, inst.center[0], profile.support_radius, i_lo, i_hi);
    if (i_lo >= i_hi) return;
    const double amp = profile.amplitude();
    if (inst.carrier.empty()) {
        kernels::active().accumulate_bump(re.data() + i_lo, im.data() + i_lo, i_hi - i_lo,
                                          axis.point(i_lo), axis.step(), inst.center[0],
                                          1.0 / profile.support_radius, amp * std::cos(inst.phase),
                                          amp * std::sin(inst.phase));
    } else {
        for (std::size_t i = i_lo; i < i_hi; ++i) {
            const auto v = build_single_particle_field(profile, inst, {axis.point(i)});
            re[i] += v.real();
            im[i] += v.imag();
        }
    }
}

} // namespace

std::vector<std::complex<double>> sample_field_1d(const BumpProfile& profile,
                                                  const SolitonInstance& instance,
                                                  const GridAxis& axis) {
    std::vector<double> re(axis.n, 0.0), im(axis.n, 0.0);
    accumulate_instance_1d(re, im, axis, profile, instance);
    std::vector<std::complex<double>> out(axis.n);
    for (std::size_t i = 0; i < axis.n; ++i) out[i] = {re[i], im[i]};
    return out;
}

StochasticWavefunction assemble_wavefunction(const std::vector<TrialConfiguration>& trials,
                                             const BumpProfile& profile, const GridSpec& grid) {
    if (trials.empty()) throw std::invalid_argument("assemble_wavefunction: no trials");
    const int n = trials.front().n_particles();
    for (const auto& t : trials)
        if (t.n_particles() != n)
            throw std::invalid_argument("assemble_wavefunction: trials disagree on n");
    const int d = int(trials.front().instances.front().center.size());
    if (int(grid.axes.size()) != d * n)
        throw std::invalid_argument("assemble_wavefunction: grid dimension != d*n");
    if (d * n > 3)
        throw std::invalid_argument("assemble_wavefunction: configuration dimension > 3");
    if (grid.total_points() > kMaxGridPoints)
        throw CostGuardError("assemble_wavefunction: grid exceeds the memory guard");
    if (n == 2 && d != 1)
        throw std::invalid_argument("assemble_wavefunction: n = 2 supported in d = 1 only");

    StochasticWavefunction psi;
    psi.grid = grid;
    psi.n_trials = trials.size();
    psi.re.assign(grid.total_points(), 0.0);
    psi.im.assign(grid.total_points(), 0.0);

    if (n == 1 && d == 1) {
        for (const auto& t : trials)
            accumulate_instance_1d(psi.re, psi.im, grid.axes[0], profile, t.instances[0]);
    } else if (n == 2) {
        // Separable trial product: accumulate the outer product of the two
        // one-particle windows.
        const auto& ax0 = grid.axes[0];
        const auto& ax1 = grid.axes[1];
        for (const auto& t : trials) {
            const auto f0 = sample_field_1d(profile, t.instances[0], ax0);
            const auto f1 = sample_field_1d(profile, t.instances[1], ax1);
            std::size_t lo0, hi0, lo1, hi1;
            support_window(ax0, t.instances[0].center[0], profile.support_radius, lo0, hi0);
            support_window(ax1, t.instances[1].center[0], profile.support_radius, lo1, hi1);
            for (std::size_t i = lo0; i < hi0; ++i) {
                const auto a = f0[i];
                if (a == std::complex<double>(0.0, 0.0)) continue;
                double* rrow = psi.re.data() + i * ax1.n;
                double* irow = psi.im.data() + i * ax1.n;
                for (std::size_t j = lo1; j < hi1; ++j) {
                    const auto v = a * f1[j];
                    rrow[j] += v.real();
                    irow[j] += v.imag();
                }
            }
        }
    } else {
        // n = 1, d = 2 or 3: direct evaluation over the support sub-box.
        std::vector<std::size_t> lo(d), hi(d), idx(d);
        for (const auto& t : trials) {
            const auto& inst = t.instances[0];
            for (int a = 0; a < d; ++a)
                support_window(grid.axes[a], inst.center[a], profile.support_radius, lo[a], hi[a]);
            bool empty = false;
            for (int a = 0; a < d; ++a)
                if (lo[a] >= hi[a]) empty = true;
            if (empty) continue;
            idx = lo;
            std::vector<double> x(d);
            for (;;) {
                std::size_t flat = 0;
                for (int a = 0; a < d; ++a) {
                    flat = flat * grid.axes[a].n + idx[a];
                    x[a] = grid.axes[a].point(idx[a]);
                }
                const auto v = build_single_particle_field(profile, inst, x);
                psi.re[flat] += v.real();
                psi.im[flat] += v.imag();
                int a = d - 1;
                while (a >= 0 && ++idx[a] == hi[a]) {
                    idx[a] = lo[a];
                    --a;
                }
                if (a < 0) break;
            }
        }
    }

    const double scale =
        1.0 / std::sqrt(std::pow(profile.hbar, double(n)) * double(trials.size()));
    for (auto& v : psi.re) v *= scale;
    for (auto& v : psi.im) v *= scale;
    return psi;
}

namespace {

struct AxisSlice {
    std::size_t i_lo, count;
    std::vector<double> weights;
};

AxisSlice axis_slice(const GridAxis& axis, double lo, double hi) {
    const double h = axis.step();
    const long long i_lo = std::llround((lo - axis.lo) / h);
    const long long i_hi = std::llround((hi - axis.lo) / h);
    if (i_lo < 0 || i_hi <= i_lo || std::size_t(i_hi) >= axis.n)
        throw std::invalid_argument("cell quadrature: cell outside the grid");
    if (std::abs(axis.point(i_lo) - lo) > 1e-9 * h || std::abs(axis.point(i_hi) - hi) > 1e-9 * h)
        throw std::invalid_argument("cell quadrature: cell edges must lie on grid points");
    AxisSlice s;
    s.i_lo = std::size_t(i_lo);
    s.count = std::size_t(i_hi - i_lo) + 1;
    s.weights = simpson_weights(s.count, h);
    return s;
}

} // namespace

double cell_probability(const StochasticWavefunction& psi, const Box& cell) {
    const auto& axes = psi.grid.axes;
    if (cell.lo.size() != axes.size())
        throw std::invalid_argument("cell_probability: dimension mismatch");
    std::vector<AxisSlice> slices;
    slices.reserve(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a)
        slices.push_back(axis_slice(axes[a], cell.lo[a], cell.hi[a]));

    const auto& k = kernels::active();
    if (axes.size() == 1) {
        return k.abs2_weighted_sum(psi.re.data() + slices[0].i_lo, psi.im.data() + slices[0].i_lo,
                                   slices[0].weights.data(), slices[0].count);
    }
    if (axes.size() == 2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < slices[0].count; ++i) {
            const std::size_t row = (slices[0].i_lo + i) * axes[1].n + slices[1].i_lo;
            acc += slices[0].weights[i] *
                   k.abs2_weighted_sum(psi.re.data() + row, psi.im.data() + row,
                                       slices[1].weights.data(), slices[1].count);
        }
        return acc;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < slices[0].count; ++i) {
        for (std::size_t j = 0; j < slices[1].count; ++j) {
            const std::size_t row =
                ((slices[0].i_lo + i) * axes[1].n + slices[1].i_lo + j) * axes[2].n +
                slices[2].i_lo;
            acc += slices[0].weights[i] * slices[1].weights[j] *
                   k.abs2_weighted_sum(psi.re.data() + row, psi.im.data() + row,
                                       slices[2].weights.data(), slices[2].count);
        }
    }
    return acc;
}

double cell_density(const StochasticWavefunction& psi, const Box& cell) {
    return cell_probability(psi, cell) / cell.volume();
}

} // namespace solq::ensemble
