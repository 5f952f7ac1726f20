#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include <gmq/dd.hpp>
#include <gmq/stencil.hpp>

namespace gmq {

// Truncation control for lattice sums.  The tail of sum f(jh) Psi(x/h - j)
// over |j - x/h|_inf > R is budgeted a priori through the decay
// |Psi(x)| <= K |x|^(-n-2d) and the growth hint |f| ~ |j|^degree_hint.
struct LatticeSumSettings {
    long long R = 2000;
    double tail_tolerance = 1e-8;
    int degree_hint = 0;
    // Richardson step in R for the marginal degree 2d-1, where the a-priori
    // bound decays only like 1/R: value = 2 S(R) - S(R/2), tail_estimate =
    // |S(R) - S(R/2)|.  Rejected for any other degree_hint.
    bool use_extrapolation = false;
};

struct QuasiInterpResult {
    double value = 0.0;
    double tail_estimate = 0.0;
};

// plain finite sum sum_k mu_k phi(x - k), double arithmetic, fixed order
double psi_eval(const Stencil& st, const std::array<double, 3>& x);

// Internal evaluator used by every accumulation that must see below the
// double rounding of the weights.  For n = 1 it switches to the far-field
// rearrangement
//     Psi(t) = sum_l binom(d,l) (-1)^l M_l t^(d-l)
//            + sum_{j>=1} binom(1/2,j) c^(2dj) sum_l binom(q+l-1,l) M_l t^(-q-l)
// (q = (2j-1)d, M_l the refined signed moments) beyond t_split, where the
// direct form would cancel 17 digits.  For n = 3 it is a compensated direct
// sum; supports there never exceed radius 4 and tolerances are coarser.
class PsiEvaluator {
public:
    explicit PsiEvaluator(const Stencil& st);

    double t_split() const { return t_split_; }
    dd eval_dd(double t) const;                          // n = 1
    dd eval3_dd(const std::array<double, 3>& x) const;   // n = 3
    double operator()(const std::array<double, 3>& x) const;

private:
    const Stencil& st_;
    int n_;
    double t_split_ = 0.0;
    dd c2d_;
    std::vector<dd> moments_;  // signed moments of the refined weights
    std::vector<std::array<int, 3>> points_;
    std::vector<dd> point_w_;

    dd direct_dd(double t) const;
    dd far_dd(double t) const;
};

// K R^(degree_hint - 2d) / (2d - degree_hint) with K calibrated from |Psi|
// on the outermost sampled shell (times the shell cardinality constant and
// a safety factor 4).  degree_hint >= 2d leaves a divergent tail -> domain
// error quoting the limit.
double tail_bound(const Stencil& st, const LatticeSumSettings& settings);

// Truncated quasi-interpolant Q f(x) = sum_{|j - x/h|_inf <= R} f(jh) Psi(x/h - j).
// Terms are accumulated in ascending distance order with lexicographic tie
// breaks, so equal-distance permutations cannot change the result.  Throws
// when the tail budget is unsatisfiable, suggesting the largest feasible
// degree_hint and the smallest sufficient R.
QuasiInterpResult quasi_interp(const Stencil& st,
                               const std::function<double(const std::array<double, 3>&)>& f,
                               double h, const std::array<double, 3>& x,
                               const LatticeSumSettings& settings);

struct DecayFitReport {
    double slope = 0.0;   // -inf when every sample sits below the noise floor
    std::vector<double> radii;
    std::vector<double> values;
    int excluded_noise = 0;
    bool truncated_underflow = false;
    bool all_below_floor = false;
};

// Least-squares slope of log|Psi(r u)| against log r.  Radii must all exceed
// support_radius + 5 and span at least 1.5 decades.  Samples below 1e-300
// truncate the list; samples below the weight-residual noise floor are
// excluded (they measure rounding, not decay).
DecayFitReport psi_decay_fit(const Stencil& st, const std::array<double, 3>& direction,
                             std::vector<double> radii);

} // namespace gmq
