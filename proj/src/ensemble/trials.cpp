#include "solq/ensemble/trials.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "solq/errors.hpp"
#include "solq/parallel.hpp"
#include "solq/rng.hpp"

namespace solq::ensemble {

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

bool Box::contains(const std::vector<double>& x) const {
    if (x.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] >= hi[i]) return false;
    return true;
}

void Box::validate() const {
    if (lo.empty() || lo.size() != hi.size()) throw std::invalid_argument("Box: bad extents");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: lo must be < hi");
}

void EnsembleConfig::validate() const {
    domain.validate();
    if (n_particles < 1) throw std::invalid_argument("EnsembleConfig: n_particles >= 1");
    if (n_trials < 100) throw std::invalid_argument("EnsembleConfig: n_trials >= 100 required");
    if (!(proper_volume > 0.0) || !(cell_volume > proper_volume))
        throw std::invalid_argument("EnsembleConfig: need proper_volume << cell_volume");
    const double vol = domain.volume();
    if (!(cell_volume < vol))
        throw std::invalid_argument("EnsembleConfig: need cell_volume << domain volume");
    if (!(packing_alpha > 0.0)) throw std::invalid_argument("EnsembleConfig: alpha > 0");
}

namespace {

constexpr int kMaxAttempts = 10000;

bool in_excluded(const SamplingDensity& density, const std::vector<double>& x) {
    return density.has_exclusion() && density.excluded.contains(x);
}

} // namespace

TrialConfiguration sample_trial(const EnsembleConfig& config, const BumpProfile& profile,
                                long long trial_index) {
    const int d = config.domain.dimension();
    const double r = profile.support_radius;
    for (int axis = 0; axis < d; ++axis)
        if (!(config.domain.hi[axis] - config.domain.lo[axis] > 2.0 * r))
            throw std::invalid_argument("sample_trial: domain thinner than one support");

    RngStream rng(config.seed, stream_tag::trial, std::uint64_t(trial_index));
    TrialConfiguration trial;
    trial.trial_index = trial_index;
    trial.instances.resize(config.n_particles);

    const double min_sep_sq = 4.0 * r * r;
    for (int k = 0; k < config.n_particles; ++k) {
        auto& inst = trial.instances[k];
        inst.particle_index = k + 1;
        inst.carrier = config.carrier;
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            std::vector<double> c(d);
            for (int axis = 0; axis < d; ++axis)
                c[axis] = rng.uniform(config.domain.lo[axis] + r, config.domain.hi[axis] - r);
            if (in_excluded(config.density, c)) continue;
            placed = true;
            if (config.disjoint_supports) {
                for (int k2 = 0; k2 < k && placed; ++k2) {
                    double dist_sq = 0.0;
                    for (int axis = 0; axis < d; ++axis) {
                        const double dx = c[axis] - trial.instances[k2].center[axis];
                        dist_sq += dx * dx;
                    }
                    if (dist_sq < min_sep_sq) placed = false;
                }
            }
            if (placed) inst.center = std::move(c);
        }
        if (!placed)
            throw RejectionOverflowError(
                "sample_trial: could not place disjoint solitons in the box");
    }
    for (auto& inst : trial.instances) inst.phase = rng.uniform(0.0, 2.0 * M_PI);
    return trial;
}

std::vector<TrialConfiguration> sample_trials(const EnsembleConfig& config,
                                              const BumpProfile& profile, unsigned workers) {
    std::vector<TrialConfiguration> trials(config.n_trials);
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_chunks(std::size_t(config.n_trials), 256, workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        try {
                            for (std::size_t j = lo; j < hi; ++j)
                                trials[j] = sample_trial(config, profile, (long long)(j));
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(error_mutex);
                            if (!error) error = std::current_exception();
                        }
                    });
    if (error) std::rethrow_exception(error);
    return trials;
}

} // namespace solq::ensemble
