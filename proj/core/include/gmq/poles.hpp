#pragma once

#include <vector>

#include <gmq/params.hpp>
#include <gmq/rational.hpp>

namespace gmq {

// The transform of phi is a contour integral of
//
//     g(t) = Gamma(-1/2 - t) Gamma(t) Gamma(n/2 - d t) / Gamma(d t) * z^t
//
// closed to the right over t >= -1/2.  Candidate poles come from two
// families; a candidate is cancelled when d*t is a nonpositive integer
// (the 1/Gamma(d t) factor has a zero there), and two families landing on
// the same point merge into a double pole.
enum class PoleFamily { half_integer, gamma_third, merged };

struct Pole {
    Rat t;             // exact location
    int order = 1;     // 1 or 2
    PoleFamily family = PoleFamily::half_integer;
    int m_half = -1;   // index within t = m - 1/2, if applicable
    int m_third = -1;  // index within t = (n + 2m)/(2d), if applicable
};

// All contributing poles with t <= t_max, sorted ascending by location.
// Cancelled candidates are omitted.
std::vector<Pole> enumerate_poles(const RbfParams& p, const Rat& t_max);

} // namespace gmq
