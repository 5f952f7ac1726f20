#pragma once

#include <gmq/errors.hpp>

namespace gmq {

// Parameters of the basis function phi(x) = sqrt(c^(2d) + |x|^(2d)) on R^n.
// c may be zero (the polyharmonic limit); d and n are positive integers.
struct RbfParams {
    double c = 1.0;
    int d = 1;
    int n = 1;
};

inline void validate(const RbfParams& p) {
    if (!(p.c >= 0.0))
        throw invalid_parameter("c must be a finite nonnegative real",
                                {{"c", p.c}});
    if (p.d < 1)
        throw invalid_parameter("d must be a positive integer", {{"d", p.d}});
    if (p.n < 1)
        throw invalid_parameter("n must be a positive integer", {{"n", p.n}});
}

// Stencil construction is only supported where the symbol calculus below is
// valid: both the dimension and the exponent parameter odd.
inline void require_odd_odd(const RbfParams& p) {
    validate(p);
    if (p.n % 2 == 0 || p.d % 2 == 0)
        throw invalid_parameter(
            "stencil construction requires odd n and odd d",
            {{"n", p.n}, {"d", p.d}});
}

} // namespace gmq
