#pragma once

#include <vector>

#include <gmq/params.hpp>
#include <gmq/rational.hpp>

namespace gmq {

// One term of the small-s expansion of the (generalized) transform,
//
//     phihat(s) = sum_e  C_e s^e  +  sum_e  L_e s^e log(c s).
//
// log_flag distinguishes the two sums; coefficient already contains the
// full c dependence of the given parameter set.
struct ExpansionTerm {
    Rat exponent;
    double coefficient = 0.0;
    bool log_flag = false;
};

// Leading behaviour as s -> 0, classified by the shape of the dominant term.
//   d_odd       : C s^(-n-d), C independent of c
//   even_n_lt_d : constant limit C (d even, n < d)
//   even_n_gt_d : C s^(d-n)          (d even, n > d)
//   even_n_eq_d : C_log s^0 log(c s) + C_const
enum class LeadingCase { d_odd, even_n_lt_d, even_n_gt_d, even_n_eq_d };

struct LeadingTerm {
    LeadingCase which;
    Rat exponent;
    double coefficient = 0.0;   // coefficient of s^e (of log(c s) in the log case)
    double constant = 0.0;      // accompanying constant, log case only
    bool log_flag = false;
};

// Radial profile phi(r) = sqrt(c^(2d) + r^(2d)).
double phi_radial(const RbfParams& p, double r);

// Transform by residue summation.  Preconditions: s > 0 and c > 0.  The
// series is numerically trustworthy only while c*s <= 20; beyond that the
// value is delegated to the quadrature oracle when the dimension supports
// one (n in {1,3}), otherwise numerical_failure.
double phi_hat_series(const RbfParams& p, double s);

// Expansion terms with exponent <= max_order, sorted by (exponent, log).
// Supported for n odd with d odd, and for all even n.
std::vector<ExpansionTerm> expansion_at_zero(const RbfParams& p, int max_order);

// Closed-form leading term, computed independently of the residue series.
LeadingTerm asymptotic_leading(const RbfParams& p);

// d = 1 closed forms (modified Bessel), available for n in {1,3}.
double phi_hat_closed_d1(const RbfParams& p, double s);

} // namespace gmq
