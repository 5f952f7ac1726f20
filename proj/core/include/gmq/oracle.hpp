#pragma once

#include <gmq/params.hpp>

namespace gmq {

// Independent evaluation of the transform by regularized radial quadrature:
// the integrand is damped by exp(-eps r^2), integrated over half-period
// panels of the oscillation, and the family of values is extrapolated to
// eps = 0 (Neville, geometric eps ladder scaled by min(1, s^2)).
//
// Supported for n in {1, 3}; c = 0 is allowed.  Throws numerical_failure
// with the full eps table when the extrapolation fails to contract.
double phi_hat_oracle(const RbfParams& p, double s, double rel_tol);

} // namespace gmq
