#pragma once

#include <utility>

#include "solq/soliton/model.hpp"

namespace solq::soliton {

enum class IntegrationOutcome { decayed, blew_up_positive, blew_up_negative };

struct ProfileIntegration {
    RadialProfile profile; // grid truncated where the integration stopped
    IntegrationOutcome outcome = IntegrationOutcome::decayed;
    int nodes = 0; // sign changes of f over the integrated range
};

// Integrate the radial system from grid.r_min() with series-start data,
// forcing output at every grid point. Integration stops once |f| exceeds
// blowup_threshold or once the solution re-grows by 1e4 from its running
// minimum of |f|+|g| (the divergence is then committed and its sign fixed).
ProfileIntegration integrate_profile(const ModelParams& params, double c2,
                                     const RadialGrid& grid, double blowup_threshold);

// Bisection on C2 at fixed (omega, lambda) between bracket endpoints with
// opposite blow-up signs. The converged profile is truncated at the last
// trusted radius and continued with the analytic tail f = A exp(-nu r)/r,
// g = -f'/B on the remaining grid points.
RadialProfile shoot_ground_state(const ModelParams& params, const ShootingConfig& config,
                                 const RadialGrid& grid);

// Rescale (f, g) -> s (f, g) with s = sqrt(hbar/norm) and lambda -> lambda/s^2.
// The radial system is invariant under this joint rescaling, so the rescaled
// profile still solves it; the returned profile has norm = hbar.
std::pair<RadialProfile, ModelParams> normalize_profile(const RadialProfile& profile,
                                                        const ModelParams& params);

struct TailFit {
    AsymptoticConstants constants; // nu and a_tail from the fit, b_const from params
    double max_rel_g_dev = 0.0;    // max |g + f'/B| / max |g| over the window
};

// Least-squares fit of log(r f) against -nu r + log A over [r_lo, r_hi],
// plus the g = -f'/B consistency deviation (f' by central differences).
TailFit tail_fit(const RadialProfile& profile, double r_lo, double r_hi,
                 const ModelParams& params);

} // namespace solq::soliton
