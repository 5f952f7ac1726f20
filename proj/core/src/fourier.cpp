#include <gmq/fourier.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gmq/gamma.hpp>
#include <gmq/oracle.hpp>
#include <gmq/poles.hpp>

namespace gmq {

namespace {

constexpr double kSeriesGuard = 20.0;  // largest c*s the alternating series tolerates

// log-magnitude and sign of Gamma(x), x not a nonpositive integer
struct LogGamma {
    double log_abs;
    int sign;
};

LogGamma lg(double x) {
    return {gamma_real(x, GammaKind::log_abs_gamma), gamma_sign(x)};
}

// Residue of g at a pole (the sweep over the right half plane collects
// +sum Res; each blocking Gamma factor contributes its own -(-1)^m/m!).
// Everything is assembled in log space so that large-m terms neither
// overflow nor underflow prematurely.
//
//   simple, t0 = m - 1/2:
//     Res = -(-1)^m / m! * Gamma(t0) Gamma(n/2 - d t0) / Gamma(d t0) * z^t0
//   simple, t0 = (n + 2m)/(2d):
//     Res = -(-1)^m / (m! d) * Gamma(-1/2 - t0) Gamma(t0) / Gamma(d t0) * z^t0
//   double (m1 half-integer index, m2 family-2 index):
//     Res = (-1)^(m1+m2) / (m1! m2! d) * Gamma(t0)/Gamma(d t0) * z^t0
//           * [log z + psi(t0) - d psi(d t0) - psi(m1+1) - d psi(m2+1)]
double pole_residue(const RbfParams& p, const Pole& pole, double log_z) {
    double t0 = pole.t.value();
    double dt0 = p.d * t0;

    if (pole.order == 1 && pole.family == PoleFamily::half_integer) {
        int m = pole.m_half;
        LogGamma a = lg(t0), b = lg(p.n / 2.0 - dt0), c = lg(dt0);
        double mag = a.log_abs + b.log_abs - c.log_abs
                   - gamma_real(m + 1.0, GammaKind::log_abs_gamma)
                   + t0 * log_z;
        int sign = ((m % 2) ? -1 : 1) * a.sign * b.sign * c.sign;
        return -sign * std::exp(mag);
    }
    if (pole.order == 1) {
        int m = pole.m_third;
        LogGamma a = lg(-0.5 - t0), b = lg(t0), c = lg(dt0);
        double mag = a.log_abs + b.log_abs - c.log_abs
                   - gamma_real(m + 1.0, GammaKind::log_abs_gamma)
                   - std::log(double(p.d)) + t0 * log_z;
        int sign = ((m % 2) ? -1 : 1) * a.sign * b.sign * c.sign;
        return -sign * std::exp(mag);
    }

    int m1 = pole.m_half, m2 = pole.m_third;
    LogGamma a = lg(t0), c = lg(dt0);
    double mag = a.log_abs - c.log_abs
               - gamma_real(m1 + 1.0, GammaKind::log_abs_gamma)
               - gamma_real(m2 + 1.0, GammaKind::log_abs_gamma)
               - std::log(double(p.d)) + t0 * log_z;
    int sign = (((m1 + m2) % 2) ? -1 : 1) * a.sign * c.sign;
    double bracket = log_z + digamma(t0) - p.d * digamma(dt0)
                   - digamma(m1 + 1.0) - p.d * digamma(m2 + 1.0);
    return sign * std::exp(mag) * bracket;
}

// shared prefactor 2^(n-1) pi^((n-1)/2) c^d s^(-n), in log space
double log_prefactor(const RbfParams& p, double s) {
    return (p.n - 1) * std::numbers::ln2_v<double>
         + 0.5 * (p.n - 1) * std::log(M_PI)
         + p.d * std::log(p.c) - p.n * std::log(s);
}

} // namespace

double phi_radial(const RbfParams& p, double r) {
    validate(p);
    return std::sqrt(std::pow(p.c, 2 * p.d) + std::pow(std::fabs(r), 2 * p.d));
}

double phi_hat_series(const RbfParams& p, double s) {
    validate(p);
    if (!(s > 0.0))
        throw invalid_parameter("series requires s > 0", {{"s", s}});
    if (!(p.c > 0.0))
        throw invalid_parameter("series requires c > 0; use the polyharmonic "
                                "closed form for c = 0", {{"c", p.c}});

    if (p.c * s > kSeriesGuard) {
        // The terms alternate with exponentially large intermediate size;
        // past the guard the cancellation exceeds double precision.
        if (p.n == 1 || p.n == 3)
            return phi_hat_oracle(p, s, 1e-9);
        throw numerical_failure(
            "residue series unusable for c*s > 20 and no quadrature "
            "fallback exists in this dimension",
            {{"c", p.c}, {"s", s}, {"n", p.n}});
    }

    double z = std::pow(p.c * s / 2.0, 2 * p.d);
    double log_z = 2.0 * p.d * std::log(p.c * s / 2.0);

    double sum = 0.0;
    double scale = 0.0;  // largest |term| seen, for the stop rule
    int quiet = 0;       // consecutive negligible terms

    // Extend the pole horizon in blocks; the factorials win long before
    // t = 64 for any c*s within the guard.
    Rat t_done(-1, 1);
    for (int block = 1; block <= 16 && quiet < 3; ++block) {
        Rat t_hi(4 * block, 1);
        auto poles = enumerate_poles(p, t_hi);
        for (const auto& pole : poles) {
            if (!(pole.t > t_done)) continue;
            double term = pole_residue(p, pole, log_z);
            sum += term;
            scale = std::max(scale, std::fabs(term));
            if (std::fabs(term) < 1e-16 * std::max(std::fabs(sum), 1e-300))
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 3) break;
        }
        t_done = t_hi;
    }
    if (quiet < 3)
        throw numerical_failure("residue series did not settle by t = 64",
                                {{"partial_sum", sum}, {"z", z}});
    (void)scale;
    return std::exp(log_prefactor(p, s)) * sum;
}

std::vector<ExpansionTerm> expansion_at_zero(const RbfParams& p, int max_order) {
    validate(p);
    if (!(p.c > 0.0))
        throw invalid_parameter("expansion requires c > 0", {{"c", p.c}});
    if (p.n % 2 == 1 && p.d % 2 == 0)
        throw invalid_parameter(
            "expansion at zero is available for odd n with odd d, or any even n",
            {{"n", p.n}, {"d", p.d}});

    // exponent e = -n + 2 d t <= max_order  ==>  t <= (n + max_order)/(2d)
    Rat t_max(p.n + std::int64_t(max_order), 2 * std::int64_t(p.d));

    // Drop the s^(-n) prefactor into each term: with z = (c s/2)^(2d),
    //   P * C * z^t = [P_c * C * (c/2)^(2 d t)] * s^e.
    // For double poles the bracket [log z + S] splits into
    //   2 d log(c s) + (S - 2 d log 2), giving the log and power parts.
    double log_pc = (p.n - 1) * std::numbers::ln2_v<double>
                  + 0.5 * (p.n - 1) * std::log(M_PI) + p.d * std::log(p.c);

    std::vector<ExpansionTerm> terms;
    for (const auto& pole : enumerate_poles(p, t_max)) {
        double t0 = pole.t.value();
        double dt0 = p.d * t0;
        Rat e = Rat(-p.n) + 2 * std::int64_t(p.d) * pole.t;
        double log_radial = log_pc + 2.0 * dt0 * std::log(p.c / 2.0);

        if (pole.order == 1) {
            LogGamma a, b;
            double extra_log;
            int msign;
            if (pole.family == PoleFamily::half_integer) {
                a = lg(t0); b = lg(p.n / 2.0 - dt0);
                extra_log = -gamma_real(pole.m_half + 1.0, GammaKind::log_abs_gamma);
                msign = (pole.m_half % 2) ? -1 : 1;
            } else {
                a = lg(-0.5 - t0); b = lg(t0);
                extra_log = -gamma_real(pole.m_third + 1.0, GammaKind::log_abs_gamma)
                          - std::log(double(p.d));
                msign = (pole.m_third % 2) ? -1 : 1;
            }
            LogGamma c = lg(dt0);
            double mag = a.log_abs + b.log_abs - c.log_abs + extra_log + log_radial;
            int sign = msign * a.sign * b.sign * c.sign;
            terms.push_back({e, -sign * std::exp(mag), false});
            continue;
        }

        int m1 = pole.m_half, m2 = pole.m_third;
        LogGamma a = lg(t0), c = lg(dt0);
        double mag = a.log_abs - c.log_abs
                   - gamma_real(m1 + 1.0, GammaKind::log_abs_gamma)
                   - gamma_real(m2 + 1.0, GammaKind::log_abs_gamma)
                   - std::log(double(p.d)) + log_radial;
        int sign = (((m1 + m2) % 2) ? -1 : 1) * a.sign * c.sign;
        double base = sign * std::exp(mag);
        double S = digamma(t0) - p.d * digamma(dt0)
                 - digamma(m1 + 1.0) - p.d * digamma(m2 + 1.0);
        terms.push_back({e, base * 2.0 * p.d, true});
        terms.push_back({e, base * (S - 2.0 * p.d * std::numbers::ln2_v<double>), false});
    }

    std::sort(terms.begin(), terms.end(), [](const ExpansionTerm& x, const ExpansionTerm& y) {
        if (x.exponent != y.exponent) return x.exponent < y.exponent;
        return x.log_flag < y.log_flag;
    });
    return terms;
}

LeadingTerm asymptotic_leading(const RbfParams& p) {
    validate(p);
    if (!(p.c > 0.0))
        throw invalid_parameter("leading term requires c > 0", {{"c", p.c}});
    double n = p.n, d = p.d;

    if (p.d % 2 == 1) {
        // the t = -1/2 residue; all c powers cancel
        double C = std::pow(2.0, n + d) * std::pow(M_PI, n / 2)
                 * tgamma_checked((n + d) / 2) / tgamma_checked(-d / 2);
        return {LeadingCase::d_odd, Rat(-p.n - p.d), C, 0.0, false};
    }
    double cpow = std::pow(p.c, 2.0 * d);
    if (p.n < p.d) {
        double C = -std::pow(M_PI, (n - 1) / 2) * std::pow(p.c, n + d) / (2 * d)
                 * tgamma_checked(-0.5 - n / (2 * d)) * tgamma_checked(n / (2 * d))
                 / tgamma_checked(n / 2);
        return {LeadingCase::even_n_lt_d, Rat(0), C, 0.0, false};
    }
    if (p.n > p.d) {
        double C = std::pow(2.0, n - 1 - d) * std::pow(M_PI, (n - 1) / 2) * cpow
                 * tgamma_checked(0.5) * tgamma_checked((n - d) / 2)
                 / tgamma_checked(d / 2);
        return {LeadingCase::even_n_gt_d, Rat(p.d - p.n), C, 0.0, false};
    }
    // n = d: constant-with-log case, written against log(c s)
    double gn2 = tgamma_checked(n / 2);
    double C_log = -std::pow(M_PI, n / 2) * cpow / gn2;
    double gamma_euler = -digamma(1.0);
    double C_const = -std::pow(M_PI, n / 2) * cpow / (2 * d * gn2)
                   * (d * gamma_euler - d * digamma(n / 2) - 1.0
                      - (2 * d + 2) * std::numbers::ln2_v<double>);
    return {LeadingCase::even_n_eq_d, Rat(0), C_log, C_const, true};
}

double phi_hat_closed_d1(const RbfParams& p, double s) {
    validate(p);
    if (p.d != 1 || (p.n != 1 && p.n != 3))
        throw invalid_parameter("closed form available for d = 1, n in {1,3}",
                                {{"n", p.n}, {"d", p.d}});
    if (!(s > 0.0) || !(p.c > 0.0))
        throw invalid_parameter("closed form requires c > 0, s > 0",
                                {{"c", p.c}, {"s", s}});
    if (p.n == 1)
        return -(2.0 * p.c / s) * std::cyl_bessel_k(1.0, p.c * s);
    double cs = p.c / s;
    return -4.0 * M_PI * cs * cs * std::cyl_bessel_k(2.0, p.c * s);
}

} // namespace gmq
