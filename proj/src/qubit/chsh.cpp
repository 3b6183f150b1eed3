#include "solq/qubit/chsh.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "solq/parallel.hpp"
#include "solq/qubit/dichotomic.hpp"

namespace solq::qubit {
namespace {

double model_correlation(ChshModel model, double delta) {
    return model == ChshModel::triangle ? triangle_correlation(delta) : -std::cos(delta);
}

// Golden-section maximization of a 1d slice.
template <typename Fn>
double golden_max(Fn&& f, double lo, double hi, double* argmax) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    *argmax = 0.5 * (lo + hi);
    return f(*argmax);
}

} // namespace

ChshModel chsh_model_from_name(const std::string& name) {
    if (name == "triangle") return ChshModel::triangle;
    if (name == "qm_cosine" || name == "cosine") return ChshModel::qm_cosine;
    throw std::invalid_argument("unknown CHSH model: " + name);
}

double chsh_functional(ChshModel model, double a, double ap, double b, double bp) {
    return model_correlation(model, a - b) - model_correlation(model, a - bp) +
           model_correlation(model, ap - b) + model_correlation(model, ap - bp);
}

ChshResult chsh_scan(ChshModel model, int grid_resolution, unsigned workers) {
    if (grid_resolution < 64)
        throw std::invalid_argument("chsh_scan: grid_resolution >= 64 required");
    const int g = grid_resolution;
    const double step = 2.0 * M_PI / double(g);

    // E depends only on angle differences, so precompute E on the difference
    // grid; the scan over (a, a') then needs only the best/worst of two
    // g-point slices, which keeps the whole search at O(g^3).
    std::vector<double> e(std::size_t(2 * g));
    for (int i = 0; i < 2 * g; ++i) e[std::size_t(i)] = model_correlation(model, double(i) * step);
    auto e_at = [&](int i, int j) { // E(theta_i - theta_j), indices mod g
        int d = i - j;
        if (d < 0) d += 2 * g;
        return e[std::size_t(d)];
    };

    struct Best {
        double s = -1.0;
        std::array<int, 4> idx{0, 0, 0, 0};

        bool better_than(const Best& o) const {
            if (s != o.s) return s > o.s;
            return idx < o.idx; // deterministic tie-break
        }
    };

    const Best best = parallel_reduce_ordered<Best>(
        std::size_t(g), 8, workers, Best{},
        [&](std::size_t lo, std::size_t hi) {
            Best local;
            for (std::size_t ia = lo; ia < hi; ++ia) {
                for (int iap = 0; iap < g; ++iap) {
                    // |S| = |g1(b) + g2(b')| maximized termwise:
                    //   g1(b) = E(a-b) + E(a'-b), g2(b') = E(a'-b') - E(a-b')
                    double g1_max = -4.0, g1_min = 4.0, g2_max = -4.0, g2_min = 4.0;
                    int b_max = 0, b_min = 0, bp_max = 0, bp_min = 0;
                    for (int ib = 0; ib < g; ++ib) {
                        const double g1 = e_at(int(ia), ib) + e_at(iap, ib);
                        if (g1 > g1_max) {
                            g1_max = g1;
                            b_max = ib;
                        }
                        if (g1 < g1_min) {
                            g1_min = g1;
                            b_min = ib;
                        }
                        const double g2 = e_at(iap, ib) - e_at(int(ia), ib);
                        if (g2 > g2_max) {
                            g2_max = g2;
                            bp_max = ib;
                        }
                        if (g2 < g2_min) {
                            g2_min = g2;
                            bp_min = ib;
                        }
                    }
                    Best cand;
                    if (g1_max + g2_max >= -(g1_min + g2_min)) {
                        cand.s = g1_max + g2_max;
                        cand.idx = {int(ia), iap, b_max, bp_max};
                    } else {
                        cand.s = -(g1_min + g2_min);
                        cand.idx = {int(ia), iap, b_min, bp_min};
                    }
                    if (cand.better_than(local)) local = cand;
                }
            }
            return local;
        },
        [](Best a, Best b) { return a.better_than(b) ? a : b; });

    // Local refinement: coordinate-wise golden section around the grid
    // maximizer of |S|.
    std::array<double, 4> x{double(best.idx[0]) * step, double(best.idx[1]) * step,
                            double(best.idx[2]) * step, double(best.idx[3]) * step};
    auto value = [&](const std::array<double, 4>& v) {
        return std::abs(chsh_functional(model, v[0], v[1], v[2], v[3]));
    };
    double current = value(x);
    for (int round = 0; round < 24; ++round) {
        const double prev = current;
        for (int c = 0; c < 4; ++c) {
            auto slice = [&](double t) {
                std::array<double, 4> v = x;
                v[std::size_t(c)] = t;
                return value(v);
            };
            double arg;
            const double val =
                golden_max(slice, x[std::size_t(c)] - step, x[std::size_t(c)] + step, &arg);
            if (val > current) {
                current = val;
                x[std::size_t(c)] = arg;
            }
        }
        if (current - prev < 1e-13) break;
    }

    ChshResult out;
    out.max_s = current;
    out.angles = x;
    out.resolution = grid_resolution;
    return out;
}

} // namespace solq::qubit
