#pragma once

namespace gmq {

enum class GammaKind { gamma, log_abs_gamma, digamma };

// Real gamma-family evaluation with a uniform pole policy: any request at a
// nonpositive integer throws invalid_parameter naming the pole.  Relative
// accuracy is 1e-13 or better away from poles (checked against frozen
// high-precision values in the unit tests).
double gamma_real(double x, GammaKind which);

// sign of Gamma(x) for non-pole x: +1 on (0,inf), alternating on the
// negative axis starting with -1 on (-1,0)
int gamma_sign(double x);

// Gamma(x) for half-integer or integer rational arguments comes up in every
// residue; these call gamma_real and exist only for readability.
inline double tgamma_checked(double x) { return gamma_real(x, GammaKind::gamma); }
inline double digamma(double x) { return gamma_real(x, GammaKind::digamma); }

} // namespace gmq
