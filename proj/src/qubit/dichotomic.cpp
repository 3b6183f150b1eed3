#include "solq/qubit/dichotomic.hpp"

#include <cmath>
#include <stdexcept>

#include "solq/kernels/kernels.hpp"
#include "solq/parallel.hpp"
#include "solq/rng.hpp"

namespace solq::qubit {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

int dichotomic_sample(double phi, double theta) {
    const double c = std::cos(phi + theta);
    return c >= 0.0 ? 1 : -1;
}

double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double wrap_pm_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w > M_PI) w -= kTwoPi;
    if (w <= -M_PI) w += kTwoPi;
    return w;
}

double triangle_correlation(double delta_theta) {
    return 1.0 - 2.0 / M_PI * std::abs(wrap_pm_pi(delta_theta));
}

DichotomicCorrelation dichotomic_correlation(double theta1, double theta2, long long n_samples,
                                             std::uint64_t seed, unsigned workers) {
    if (n_samples < 1000)
        throw std::invalid_argument("dichotomic_correlation: need >= 1000 samples");
    const double t1 = wrap_two_pi(theta1);
    const double t2 = wrap_two_pi(theta2);

    // Uniform phases in deterministic per-block substreams, summed by the
    // sign-product kernel.
    constexpr std::size_t block = 4096;
    const std::int64_t total = parallel_reduce_ordered<std::int64_t>(
        std::size_t(n_samples), block, workers, 0,
        [&](std::size_t lo, std::size_t hi) {
            RngStream rng(seed, stream_tag::dichotomic, lo / block);
            std::vector<double> phi(hi - lo);
            for (auto& p : phi) p = rng.uniform(0.0, kTwoPi);
            return kernels::active().sign_cos_product_sum(phi.data(), phi.size(), t1, t2);
        },
        [](std::int64_t a, std::int64_t b) { return a + b; });

    DichotomicCorrelation out;
    const double n = double(n_samples);
    out.estimate = double(total) / n;
    out.std_error = std::sqrt(std::max(0.0, (1.0 - out.estimate * out.estimate) / (n - 1.0)));
    out.analytic = triangle_correlation(t1 - t2);
    return out;
}

PipelineReport end_to_end_phase_pipeline(const std::vector<ensemble::TrialConfiguration>& trials,
                                         const ensemble::BumpProfile& profile,
                                         const EtalonProfile& etalon,
                                         const ensemble::GridAxis& axis,
                                         const std::vector<double>& thetas) {
    if (trials.empty()) throw std::invalid_argument("phase pipeline: no trials");
    if (thetas.empty()) throw std::invalid_argument("phase pipeline: no thetas");

    // Extract the summed phase per trial.
    std::vector<double> phis(trials.size());
    for (std::size_t j = 0; j < trials.size(); ++j) {
        std::vector<PhaseExtraction> ex;
        ex.reserve(trials[j].instances.size());
        for (const auto& inst : trials[j].instances) {
            const auto field = ensemble::sample_field_1d(profile, inst, axis);
            ex.push_back(most_probable_center(field, axis, etalon));
        }
        phis[j] = random_phase(ex);
    }

    PipelineReport report;
    const double n = double(trials.size());
    for (std::size_t s = 0; s < thetas.size(); ++s) {
        for (std::size_t t = s + 1; t < thetas.size(); ++t) {
            PipelineRow row;
            row.theta1 = thetas[s];
            row.theta2 = thetas[t];
            row.analytic = triangle_correlation(thetas[s] - thetas[t]);
            const std::int64_t sum = kernels::active().sign_cos_product_sum(
                phis.data(), phis.size(), wrap_two_pi(thetas[s]), wrap_two_pi(thetas[t]));
            row.estimate = double(sum) / n;
            row.stderr_est =
                std::sqrt(std::max(0.0, (1.0 - row.estimate * row.estimate) / (n - 1.0)));
            report.rows.push_back(row);
        }
    }
    if (thetas.size() == 1) {
        // single theta: the table degenerates to the self-correlation, 1
        report.rows.push_back({thetas[0], thetas[0], 1.0, 1.0, 0.0});
    }

    constexpr int bins = 16;
    std::vector<double> counts(bins, 0.0);
    for (double phi : phis) {
        int b = int(phi / kTwoPi * bins);
        if (b < 0) b = 0;
        if (b >= bins) b = bins - 1;
        counts[std::size_t(b)] += 1.0;
    }
    const double expected = n / bins;
    for (double c : counts)
        report.phase_chi2 += (c - expected) * (c - expected) / expected;
    report.phases_uniform = report.phase_chi2 <= 30.578; // 1% tail, 15 dof
    return report;
}

} // namespace solq::qubit
