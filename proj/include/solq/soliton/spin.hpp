#pragma once

#include "solq/soliton/model.hpp"

namespace solq::soliton {

// Spin vector of a normalized profile. Under the stationary ansatz the spinor
// is a J_z eigenstate with m = 1/2, and pointwise
//   phi^+ (L_z + S_z) phi = (1/2) phi^+ phi,
// so the closed reduction is S_z = (1/2) integral r^2 (f^2 + g^2) dr and the
// transverse components vanish identically. Throws if |norm - hbar|/hbar
// exceeds normalization_tolerance.
Vec3 spin_expectation(const RadialProfile& profile, const ModelParams& params,
                      double normalization_tolerance = 1e-6);

// Independent route: direct spherical quadrature of phi^+ J phi with
// J = -i r x grad + (1/2) diag(sigma, sigma), using the analytic angular
// derivatives of the ansatz factors {1, cos(theta), sin(theta) e^{i alpha}}.
Vec3 spin_quadrature_3d(const RadialProfile& profile);

} // namespace solq::soliton
