#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace gmq {

// Gauss-Legendre nodes/weights on [-1,1], generated once per order by
// Newton iteration on the Legendre polynomial (standard construction;
// converges to full double precision in < 10 iterations).
template <int N>
struct GaussLegendre {
    std::array<double, N> x{}, w{};

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double p0, p1;
            for (int it = 0; it < 64; ++it) {
                p0 = 1.0; p1 = 0.0;
                for (int j = 0; j < N; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
                }
                double dp = N * (t * p0 - p1) / (t * t - 1.0);
                double dt = p0 / dp;
                t -= dt;
                if (std::fabs(dt) < 1e-16) break;
            }
            p0 = 1.0; p1 = 0.0;
            for (int j = 0; j < N; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
            }
            double dp = N * (t * p0 - p1) / (t * t - 1.0);
            x[i] = -t;
            x[N - 1 - i] = t;
            w[i] = w[N - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

// Adaptive panel integration with an embedded GL10/GL20 error estimate.
// Deterministic: bisection recursion, no work stealing, fixed node tables.
class AdaptiveQuad {
public:
    double integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth = 24) const {
        return refine(f, a, b, abs_tol, max_depth);
    }

private:
    GaussLegendre<10> lo_;
    GaussLegendre<20> hi_;

    double panel(const std::function<double(double)>& f, double a, double b,
                 const std::array<double, 10>& x, const std::array<double, 10>& w) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
        for (int i = 0; i < 10; ++i) s += w[i] * f(mid + half * x[i]);
        return half * s;
    }
    double panel20(const std::function<double(double)>& f, double a, double b) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
        for (int i = 0; i < 20; ++i) s += hi_.w[i] * f(mid + half * hi_.x[i]);
        return half * s;
    }

    double refine(const std::function<double(double)>& f, double a, double b,
                  double abs_tol, int depth) const {
        double coarse = panel(f, a, b, lo_.x, lo_.w);
        double fine = panel20(f, a, b);
        if (std::fabs(fine - coarse) <= abs_tol || depth == 0)
            return fine;
        double mid = 0.5 * (a + b);
        return refine(f, a, mid, 0.5 * abs_tol, depth - 1)
             + refine(f, mid, b, 0.5 * abs_tol, depth - 1);
    }
};

} // namespace gmq
