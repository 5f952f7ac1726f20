#include <gmq/stencil.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include <gmq/fourier.hpp>
#include <gmq/oracle.hpp>

namespace gmq {

namespace {

constexpr int kRadiusCap1d = 16;
constexpr int kRadiusCap3d = 4;
constexpr double kResidualTol = 1e-10;

long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

std::vector<std::array<int, 3>> canonical_reps(int n, int radius) {
    std::vector<std::array<int, 3>> reps;
    if (n == 1) {
        for (int k = 0; k <= radius; ++k) reps.push_back({k, 0, 0});
        return reps;
    }
    for (int a = 0; a <= radius; ++a)
        for (int b = a; b <= radius; ++b)
            for (int c = b; c <= radius; ++c)
                reps.push_back({a, b, c});
    return reps;
}

// componentwise-even multi-indices, canonical (sorted descending), |beta| < limit
std::vector<std::array<int, 3>> even_moment_indices(int n, int limit) {
    std::vector<std::array<int, 3>> out;
    if (n == 1) {
        for (int b = 0; b < limit; b += 2) out.push_back({b, 0, 0});
        return out;
    }
    for (int s = 0; s < limit; s += 2)
        for (int a = s; a >= 0; a -= 2)
            for (int b = std::min(a, s - a); b >= 0; b -= 2) {
                int c = s - a - b;
                if (c <= b && c % 2 == 0) out.push_back({a, b, c});
            }
    return out;
}

// partitions of j into at most n parts, descending, deterministic order
std::vector<std::array<int, 3>> partitions_of(int j, int n) {
    std::vector<std::array<int, 3>> out;
    if (n == 1) {
        out.push_back({j, 0, 0});
        return out;
    }
    for (int a = j; a >= 1; --a)
        for (int b = std::min(a, j - a); b >= 0; --b) {
            int c = j - a - b;
            if (c < 0 || c > b) continue;
            out.push_back({a, b, c});
        }
    return out;
}

// exact power sum  sum_{k in orbit} prod_i k_i^{beta_i}
long long orbit_power_sum(const std::array<int, 3>& rep, int n,
                          const std::array<int, 3>& beta) {
    long long s = 0;
    for (const auto& k : orbit_points(rep, n)) {
        long long t = 1;
        for (int i = 0; i < n; ++i) t *= ipow_ll(k[i], beta[i]);
        s += t;
    }
    return s;
}

struct ConstraintSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    std::vector<std::vector<dd>> A_dd;
    std::vector<dd> b_dd;
    int moment_rows = 0;
};

// Rows, in order:
//   1. vanishing moments, componentwise-even |beta| < n + d  (odd ones hold
//      by symmetry and are omitted)
//   2. radiality: for every even order n+d+2r used by a window condition,
//      the normalized moments xi(gamma) = m_{2 gamma} gamma! / (2 gamma)!
//      agree across partitions gamma of the half-order
//   3. window conditions: the Taylor coefficient of r^(2q) in
//      p(y) phihat(r), expressed through lambda_j = (-1)^j m_(2j,0,..)/(2j)!
//      and the expansion coefficients C_e, equals delta_{q,0}
ConstraintSystem assemble_system(const RbfParams& p,
                                 const std::vector<std::array<int, 3>>& reps,
                                 int target_order, bool moments_only = false) {
    const int n = p.n;
    const int q_max = (target_order - 1) / 2;
    const int j_min = (n + p.d) / 2;

    struct Row {
        std::vector<dd> coeff;
        dd rhs;
    };
    std::vector<Row> rows;
    auto blank = [&] { return Row{std::vector<dd>(reps.size()), dd(0.0)}; };

    for (const auto& beta : even_moment_indices(n, n + p.d)) {
        Row row = blank();
        for (size_t o = 0; o < reps.size(); ++o)
            row.coeff[o] = dd(double(orbit_power_sum(reps[o], n, beta)));
        rows.push_back(std::move(row));
    }
    const int moment_rows = int(rows.size());

    if (!moments_only) {
        for (int r = 0; r <= q_max; ++r) {
            int j = j_min + r;
            auto parts = partitions_of(j, n);
            for (size_t i = 0; i + 1 < parts.size(); ++i) {
                Row row = blank();
                for (int which : {0, 1}) {
                    const auto& g = parts[i + which];
                    dd ratio = dd(factorial(g[0]) * factorial(g[1]) * factorial(g[2]))
                             / dd(factorial(2 * g[0]) * factorial(2 * g[1]) * factorial(2 * g[2]));
                    std::array<int, 3> beta{2 * g[0], 2 * g[1], 2 * g[2]};
                    for (size_t o = 0; o < reps.size(); ++o) {
                        dd v = ratio * dd(double(orbit_power_sum(reps[o], n, beta)));
                        row.coeff[o] += (which == 0) ? v : -v;
                    }
                }
                rows.push_back(std::move(row));
            }
        }

        auto terms = expansion_at_zero(p, 2 * q_max);
        for (int q = 0; q <= q_max; ++q) {
            Row row = blank();
            row.rhs = dd(q == 0 ? 1.0 : 0.0);
            for (const auto& term : terms) {
                if (term.log_flag) continue;  // cannot reach r^(2q) below q_max here
                long long e2 = 2 * q - term.exponent.num;  // exponents are even ints
                if (e2 < 0 || e2 % 2 != 0) continue;
                int j = int(e2 / 2);
                std::array<int, 3> beta{2 * j, 0, 0};
                dd factor = dd(term.coefficient) / dd(factorial(2 * j));
                if (j % 2 != 0) factor = -factor;
                for (size_t o = 0; o < reps.size(); ++o)
                    row.coeff[o] += factor * dd(double(orbit_power_sum(reps[o], n, beta)));
            }
            rows.push_back(std::move(row));
        }
    }

    ConstraintSystem sys;
    sys.moment_rows = moment_rows;
    sys.A.resize(rows.size(), reps.size());
    sys.b.resize(rows.size());
    sys.A_dd.resize(rows.size());
    sys.b_dd.resize(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        sys.A_dd[r] = rows[r].coeff;
        sys.b_dd[r] = rows[r].rhs;
        for (size_t o = 0; o < reps.size(); ++o)
            sys.A(r, o) = double(rows[r].coeff[o]);
        sys.b(r) = double(rows[r].rhs);
    }
    return sys;
}

double max_residual(const ConstraintSystem& sys, const Eigen::VectorXd& w) {
    return (sys.A * w - sys.b).cwiseAbs().maxCoeff();
}

// two double-double Newton corrections against the full stored system, then
// a polish of the moment block alone; afterwards the moment residuals of
// weights_dd sit around 1e-31 instead of the 1e-17 of rounded doubles
void refine_weights(Stencil& st, const ConstraintSystem& sys,
                    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>& cod) {
    const size_t m = sys.A_dd.size(), nw = st.weights.size();
    st.weights_dd.assign(st.weights.begin(), st.weights.end());

    auto residual_dd = [&](size_t row_count) {
        std::vector<dd> r(row_count);
        for (size_t i = 0; i < row_count; ++i) {
            dd acc = -sys.b_dd[i];
            for (size_t o = 0; o < nw; ++o)
                acc += sys.A_dd[i][o] * st.weights_dd[o];
            r[i] = acc;
        }
        return r;
    };

    for (int pass = 0; pass < 2; ++pass) {
        auto r = residual_dd(m);
        Eigen::VectorXd rv(m);
        for (size_t i = 0; i < m; ++i) rv(i) = double(r[i]);
        Eigen::VectorXd delta = cod.solve(rv);
        for (size_t o = 0; o < nw; ++o) st.weights_dd[o] -= dd(delta(o));
    }

    const int mr = sys.moment_rows;
    if (mr == 0) return;
    Eigen::MatrixXd M = sys.A.topRows(mr);
    Eigen::PartialPivLU<Eigen::MatrixXd> mmt(M * M.transpose());
    for (int pass = 0; pass < 2; ++pass) {
        auto r = residual_dd(mr);
        Eigen::VectorXd rv(mr);
        for (int i = 0; i < mr; ++i) rv(i) = double(r[i]);
        Eigen::VectorXd delta = M.transpose() * mmt.solve(rv);
        for (size_t o = 0; o < nw; ++o) st.weights_dd[o] -= dd(delta(o));
    }
}

struct Attempt {
    Stencil st;
    ConstraintSystem sys;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
};

Attempt attempt_build(const RbfParams& p, int radius, int target_order) {
    Attempt a;
    a.st.params = p;
    a.st.support_radius = radius;
    a.st.target_order = target_order;
    a.st.reps = canonical_reps(p.n, radius);
    a.sys = assemble_system(p, a.st.reps, target_order);
    a.cod.compute(a.sys.A);
    Eigen::VectorXd w = a.cod.solve(a.sys.b);
    a.st.weights.assign(w.data(), w.data() + w.size());
    a.st.solve_residual = max_residual(a.sys, w);
    return a;
}

void check_build_domain(const RbfParams& p, int radius) {
    require_odd_odd(p);
    if (p.n != 1 && p.n != 3)
        throw invalid_parameter("stencil construction supports n in {1,3}",
                                {{"n", p.n}});
    if (p.n == 3 && p.d > 3)
        throw invalid_parameter("n = 3 construction is limited to d <= 3",
                                {{"n", p.n}, {"d", p.d}});
    int cap = (p.n == 3) ? kRadiusCap3d : kRadiusCap1d;
    if (radius < 0 || radius > cap)
        throw invalid_parameter("support radius outside supported range",
                                {{"support_radius", radius}, {"cap", cap}});
}

} // namespace

std::vector<std::array<int, 3>> orbit_points(const std::array<int, 3>& rep, int n) {
    std::set<std::array<int, 3>> pts;
    if (n == 1) {
        pts.insert({rep[0], 0, 0});
        pts.insert({-rep[0], 0, 0});
    } else {
        std::array<int, 3> base = rep;
        std::sort(base.begin(), base.end());
        do {
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    for (int sz : {1, -1})
                        pts.insert({sx * base[0], sy * base[1], sz * base[2]});
        } while (std::next_permutation(base.begin(), base.end()));
    }
    return {pts.begin(), pts.end()};
}

Stencil build_stencil(const RbfParams& p, int support_radius, int target_order) {
    check_build_domain(p, support_radius);
    if (target_order < 0) target_order = 2 * p.d - 1;
    if (target_order < 1)
        throw invalid_parameter("target_order must be >= 1",
                                {{"target_order", target_order}});

    Attempt a = attempt_build(p, support_radius, target_order);
    if (a.st.solve_residual <= kResidualTol) {
        refine_weights(a.st, a.sys, a.cod);
        return a.st;
    }

    // inconsistent at this radius: find the smallest radius that works
    int cap = (p.n == 3) ? kRadiusCap3d : kRadiusCap1d;
    for (int r = support_radius + 1; r <= cap; ++r) {
        Attempt bigger = attempt_build(p, r, target_order);
        if (bigger.st.solve_residual <= kResidualTol)
            throw infeasible_construction(
                "constraint system inconsistent at support radius "
                    + std::to_string(support_radius)
                    + "; smallest sufficient radius is " + std::to_string(r),
                {{"support_radius", support_radius},
                 {"target_order", target_order},
                 {"residual", a.st.solve_residual},
                 {"smallest_sufficient_radius", r}});
    }
    throw infeasible_construction(
        "constraint system inconsistent at support radius "
            + std::to_string(support_radius)
            + "; no feasible radius up to cap " + std::to_string(cap),
        {{"support_radius", support_radius},
         {"target_order", target_order},
         {"residual", a.st.solve_residual},
         {"radius_cap", cap}});
}

Stencil build_stencil_1d_closed(const RbfParams& p) {
    require_odd_odd(p);
    if (p.n != 1)
        throw invalid_parameter("closed ansatz is one-dimensional", {{"n", p.n}});
    const int d = p.d;
    const int half = (1 + d) / 2;
    const int kmax = half + d - 1;  // = (3d - 1)/2

    // integer cosine coefficients of (2 - 2 cos y)^half, two-sided, offset kmax
    std::vector<long long> base(2 * kmax + 1, 0);
    base[kmax] = 1;
    for (int it = 0; it < half; ++it) {
        std::vector<long long> next(2 * kmax + 1, 0);
        for (int k = -kmax; k <= kmax; ++k) {
            long long v = base[k + kmax];
            if (v == 0) continue;
            next[k + kmax] += 2 * v;
            if (k - 1 >= -kmax) next[k - 1 + kmax] -= v;
            if (k + 1 <= kmax) next[k + 1 + kmax] -= v;
        }
        base.swap(next);
    }

    // G_m = base * cos(m y);  halves of integers, exact in double
    std::vector<std::vector<double>> G(d, std::vector<double>(2 * kmax + 1, 0.0));
    for (int m = 0; m < d; ++m)
        for (int k = -kmax; k <= kmax; ++k) {
            double v = double(base[k + kmax]);
            if (v == 0.0) continue;
            if (m == 0) {
                G[m][k + kmax] += v;
            } else {
                if (k + m <= kmax && k + m >= -kmax) G[m][k + m + kmax] += 0.5 * v;
                if (k - m >= -kmax && k - m <= kmax) G[m][k - m + kmax] += 0.5 * v;
            }
        }

    // window conditions q = 0..d-1 on the ansatz coefficients
    auto terms = expansion_at_zero(p, 2 * (d - 1));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    b(0) = 1.0;
    for (int q = 0; q < d; ++q)
        for (const auto& term : terms) {
            if (term.log_flag) continue;
            long long e2 = 2 * q - term.exponent.num;
            if (e2 < 0 || e2 % 2 != 0) continue;
            int j = int(e2 / 2);
            double sgn = (j % 2) ? -1.0 : 1.0;
            for (int m = 0; m < d; ++m) {
                double ps = 0.0;
                for (int k = -kmax; k <= kmax; ++k)
                    ps += G[m][k + kmax] * std::pow(double(k), 2 * j);
                A(q, m) += term.coefficient * sgn * ps / factorial(2 * j);
            }
        }
    Eigen::VectorXd a = A.partialPivLu().solve(b);

    Stencil st;
    st.params = p;
    st.support_radius = kmax;
    st.target_order = 2 * d - 1;
    st.reps = canonical_reps(1, kmax);
    st.weights.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        double w = 0.0;
        for (int m = 0; m < d; ++m) w += a(m) * G[m][k + kmax];
        st.weights[k] = w;
    }

    // residual and refined companion against the generic system
    ConstraintSystem sys = assemble_system(p, st.reps, st.target_order);
    Eigen::Map<Eigen::VectorXd> wv(st.weights.data(), st.weights.size());
    st.solve_residual = max_residual(sys, wv);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.A);
    refine_weights(st, sys, cod);
    return st;
}

namespace {

double phi_hat_any(const RbfParams& p, double s) {
    if (p.c == 0.0) return phi_hat_oracle(p, s, 1e-10);  // exact closed form
    return phi_hat_series(p, s);
}

// Neumaier-compensated cosine/sine sums over the full stencil
void trig_sums(const Stencil& st, const std::array<double, 3>& y,
               double& cos_sum, double& sin_sum, double& abs_scale) {
    double c_acc = 0.0, c_comp = 0.0, s_acc = 0.0, s_comp = 0.0, scale = 0.0;
    for (size_t o = 0; o < st.reps.size(); ++o) {
        double w = st.weights[o];
        for (const auto& k : orbit_points(st.reps[o], st.params.n)) {
            double phase = 0.0;
            for (int i = 0; i < st.params.n; ++i) phase += k[i] * y[i];
            double cv = w * std::cos(phase), sv = w * std::sin(phase);
            double t = c_acc + cv;
            c_comp += (std::fabs(c_acc) >= std::fabs(cv)) ? (c_acc - t) + cv : (cv - t) + c_acc;
            c_acc = t;
            t = s_acc + sv;
            s_comp += (std::fabs(s_acc) >= std::fabs(sv)) ? (s_acc - t) + sv : (sv - t) + s_acc;
            s_acc = t;
            scale += std::fabs(w);
        }
    }
    cos_sum = c_acc + c_comp;
    sin_sum = s_acc + s_comp;
    abs_scale = scale;
}

// tail of the cosine series past the even Taylor prefix of order q:
// cos(u) - sum_{2j <= q} (-1)^j u^(2j) / (2j)!
dd cos_tail(double u, int q) {
    const dd u2 = dd(u) * dd(u);
    const int j0 = q / 2 + 1;
    dd term(1.0);
    for (int j = 0; j < j0; ++j) term = term * u2 / dd(double((2 * j + 1) * (2 * j + 2)));
    if (j0 % 2) term = -term;
    dd acc = term;
    double top = std::fabs(double(term));
    for (int j = j0; j < j0 + 80; ++j) {
        term = -(term * u2 / dd(double((2 * j + 1) * (2 * j + 2))));
        acc += term;
        top = std::max(top, std::fabs(double(term)));
        if (std::fabs(double(term)) < 1e-38 * top) break;
    }
    return acc;
}

} // namespace

double symbol_eval(const Stencil& st, const std::array<double, 3>& y) {
    const int n = st.params.n;
    const double twopi = 2.0 * M_PI;

    // reduce to the fundamental cell (the symbol is 2pi-periodic per
    // coordinate); near the lattice the plain cosine sum cancels its leading
    // n + d orders across k and double precision keeps none of them, so the
    // Taylor prefix of each cosine (whose lattice moments vanish exactly, to
    // the refined-weight residual) is subtracted term by term instead
    std::array<double, 3> yr{0.0, 0.0, 0.0};
    double rim = 0.0;
    for (int i = 0; i < n; ++i) {
        yr[i] = y[i] - twopi * std::nearbyint(y[i] / twopi);
        rim = std::max(rim, std::fabs(yr[i]));
    }
    if (rim < 0.7) {
        int q = st.params.n + st.params.d - 1;
        if (q % 2) --q;  // odd moments vanish by the sign symmetry alone
        dd acc(0.0);
        for (size_t o = 0; o < st.reps.size(); ++o) {
            const dd w = st.weights_dd[o];
            for (const auto& k : orbit_points(st.reps[o], n)) {
                double u = 0.0;
                for (int i = 0; i < n; ++i) u += k[i] * yr[i];
                acc += w * cos_tail(u, q);
            }
        }
        return double(acc);
    }

    double c, s, scale;
    trig_sums(st, y, c, s, scale);
    if (std::fabs(s) > 1e-13 * std::max(scale, 1.0))
        throw numerical_failure("symbol acquired an imaginary part",
                                {{"sin_sum", s}, {"scale", scale}});
    return c;
}

double psi_hat_eval(const Stencil& st, const std::array<double, 3>& y) {
    double r2 = 0.0;
    for (int i = 0; i < st.params.n; ++i) r2 += y[i] * y[i];
    double r = std::sqrt(r2);
    if (r == 0.0)
        throw invalid_parameter("transform factor has a pole at y = 0; the "
                                "product extends continuously but is not "
                                "evaluated here", {{"y", 0.0}});
    return symbol_eval(st, y) * phi_hat_any(st.params, r);
}

namespace {

// cancellation-free 1D symbol: p(y) = (2 sin^2(y/2))^h * Q(cos y) where
// P(u) = mu0 + 2 sum mu_k T_k(u) and (1-u)^h divides P exactly up to the
// refined-weight residual (~1e-31, asserted then dropped)
struct FactoredSymbol1d {
    int h = 0;
    std::vector<double> q;  // monomial coefficients of Q

    FactoredSymbol1d() = default;

    explicit FactoredSymbol1d(const Stencil& st) {
        const int K = st.support_radius;
        h = (st.params.n + st.params.d) / 2;
        // monomial coefficients of P via the Chebyshev recurrence
        std::vector<std::vector<long long>> T(K + 1);
        T[0] = {1};
        if (K >= 1) T[1] = {0, 1};
        for (int k = 2; k <= K; ++k) {
            T[k].assign(k + 1, 0);
            for (size_t i = 0; i < T[k - 1].size(); ++i) T[k][i + 1] += 2 * T[k - 1][i];
            for (size_t i = 0; i < T[k - 2].size(); ++i) T[k][i] -= T[k - 2][i];
        }
        std::vector<dd> P(K + 1, dd(0.0));
        for (int k = 0; k <= K; ++k) {
            dd w = st.weights_dd[k];
            if (k > 0) w = w * dd(2.0);
            for (size_t i = 0; i < T[k].size(); ++i)
                P[i] += w * dd(double(T[k][i]));
        }
        // synthetic division by (1 - u), h times
        double top = 0.0;
        for (const auto& c : P) top = std::max(top, std::fabs(double(c)));
        for (int pass = 0; pass < h; ++pass) {
            // P = (1-u) Q + R with q_{N-1} = -p_N, q_{i-1} = q_i - p_i
            std::vector<dd> Q(P.size() - 1, dd(0.0));
            int N = int(P.size()) - 1;
            Q[N - 1] = -P[N];
            for (int i = N - 1; i >= 1; --i) Q[i - 1] = Q[i] - P[i];
            dd rem = P[0] - Q[0];
            if (std::fabs(double(rem)) > 1e-8 * std::max(top, 1.0))
                throw numerical_failure("symbol does not vanish to the stated "
                                        "order at the lattice",
                                        {{"remainder", double(rem)}});
            P = std::move(Q);
        }
        q.resize(P.size());
        for (size_t i = 0; i < P.size(); ++i) q[i] = double(P[i]);
    }

    double eval(double y) const {
        double u = std::cos(y);
        double acc = 0.0;
        for (int i = int(q.size()) - 1; i >= 0; --i) acc = acc * u + q[i];
        double sh = std::sin(0.5 * y);
        return std::pow(2.0 * sh * sh, h) * acc;
    }
};

double fit_slope(const std::vector<double>& logr, const std::vector<double>& logv) {
    double mr = 0.0, mv = 0.0;
    for (size_t i = 0; i < logr.size(); ++i) { mr += logr[i]; mv += logv[i]; }
    mr /= logr.size(); mv /= logv.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < logr.size(); ++i) {
        num += (logr[i] - mr) * (logv[i] - mv);
        den += (logr[i] - mr) * (logr[i] - mr);
    }
    return num / den;
}

} // namespace

FlatnessReport flatness_order(const Stencil& st, const std::array<int, 3>& at,
                              double r_lo, double r_hi) {
    if (!(0.0 < r_lo && r_lo < r_hi && r_hi < M_PI))
        throw invalid_parameter("flatness window must satisfy 0 < lo < hi < pi",
                                {{"r_lo", r_lo}, {"r_hi", r_hi}});
    const int n = st.params.n;
    const bool origin = (at[0] == 0 && at[1] == 0 && at[2] == 0);

    std::vector<std::array<double, 3>> dirs;
    if (n == 1) {
        dirs.push_back({1.0, 0.0, 0.0});
    } else {
        double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
        dirs = {{1.0, 0.0, 0.0}, {s2, s2, 0.0}, {s3, s3, s3}};
    }

    constexpr int kSamples = 13;
    FlatnessReport rep;
    rep.at = at;
    for (int i = 0; i < kSamples; ++i)
        rep.radii.push_back(r_lo * std::pow(r_hi / r_lo, double(i) / (kSamples - 1)));

    FactoredSymbol1d* fs = nullptr;
    FactoredSymbol1d storage = (n == 1) ? FactoredSymbol1d(st) : FactoredSymbol1d{};
    if (n == 1) fs = &storage;

    std::vector<double> pooled_r, pooled_v;
    for (const auto& u : dirs) {
        std::vector<double> lv, lr;
        std::vector<double> raw;
        for (double r : rep.radii) {
            std::array<double, 3> y{};
            double norm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                y[i] = 2.0 * M_PI * at[i] + r * u[i];
                norm2 += y[i] * y[i];
            }
            double symbol = (n == 1) ? fs->eval(y[0]) : symbol_eval(st, y);
            double v = symbol * phi_hat_any(st.params, std::sqrt(norm2));
            if (origin) v -= 1.0;
            raw.push_back(std::fabs(v));
            lr.push_back(std::log(r));
            lv.push_back(std::log(std::max(std::fabs(v), 1e-300)));
        }
        rep.values.push_back(raw);
        rep.per_direction.push_back(fit_slope(lr, lv));
        pooled_r.insert(pooled_r.end(), lr.begin(), lr.end());
        pooled_v.insert(pooled_v.end(), lv.begin(), lv.end());
    }
    // shared radii, so the pooled slope is the mean of per-direction slopes
    rep.pooled_order = 0.0;
    for (double s : rep.per_direction) rep.pooled_order += s;
    rep.pooled_order /= rep.per_direction.size();
    return rep;
}

nlohmann::json stencil_to_json(const Stencil& st) {
    nlohmann::json orbits = nlohmann::json::array();
    for (size_t o = 0; o < st.reps.size(); ++o) {
        nlohmann::json rep = nlohmann::json::array();
        for (int i = 0; i < st.params.n; ++i) rep.push_back(st.reps[o][i]);
        orbits.push_back({{"representative", rep}, {"weight", st.weights[o]}});
    }
    return {{"params", {{"c", st.params.c}, {"d", st.params.d}, {"n", st.params.n}}},
            {"orbits", orbits}};
}

Stencil stencil_from_json(const nlohmann::json& j) {
    Stencil st;
    st.params.c = j.at("params").at("c").get<double>();
    st.params.d = j.at("params").at("d").get<int>();
    st.params.n = j.at("params").at("n").get<int>();
    validate(st.params);
    st.target_order = 2 * st.params.d - 1;
    for (const auto& orbit : j.at("orbits")) {
        std::array<int, 3> rep{};
        auto arr = orbit.at("representative");
        if (int(arr.size()) != st.params.n)
            throw invalid_parameter("representative length must equal n",
                                    {{"n", st.params.n}});
        for (int i = 0; i < st.params.n; ++i) rep[i] = arr[i].get<int>();
        st.reps.push_back(rep);
        st.weights.push_back(orbit.at("weight").get<double>());
        st.support_radius = std::max({st.support_radius, rep[0], rep[1], rep[2]});
    }

    // deserialized weights are taken as-is; only the moment block of the
    // refined companion can be reconstructed without knowing target_order
    ConstraintSystem sys = assemble_system(st.params, st.reps, st.target_order,
                                           /*moments_only=*/true);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.A);
    refine_weights(st, sys, cod);
    return st;
}

} // namespace gmq
