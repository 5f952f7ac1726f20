#include <gmq/lattice.hpp>

#include <algorithm>
#include <cmath>

#include <gmq/fourier.hpp>

namespace gmq {

double psi_eval(const Stencil& st, const std::array<double, 3>& x) {
    const int n = st.params.n;
    double acc = 0.0;
    for (size_t o = 0; o < st.reps.size(); ++o)
        for (const auto& k : orbit_points(st.reps[o], n)) {
            double r2 = 0.0;
            for (int i = 0; i < n; ++i) r2 += (x[i] - k[i]) * (x[i] - k[i]);
            acc += st.weights[o] * phi_radial(st.params, std::sqrt(r2));
        }
    return acc;
}

PsiEvaluator::PsiEvaluator(const Stencil& st) : st_(st), n_(st.params.n) {
    const int d = st.params.d;
    c2d_ = powi(dd(st.params.c), 2 * d);
    for (size_t o = 0; o < st.reps.size(); ++o)
        for (const auto& k : orbit_points(st.reps[o], n_)) {
            points_.push_back(k);
            point_w_.push_back(st.weights_dd[o]);
        }
    if (n_ == 1) {
        t_split_ = std::max({2.0 * st.support_radius + 4.0, 2.0 * st.params.c + 4.0, 12.0});
        constexpr int L = 80;
        moments_.assign(L + 1, dd(0.0));
        for (size_t i = 0; i < points_.size(); ++i) {
            dd kp(1.0);
            dd k(double(points_[i][0]));
            for (int l = 0; l <= L; ++l) {
                moments_[l] += point_w_[i] * kp;
                kp *= k;
            }
        }
    }
}

dd PsiEvaluator::direct_dd(double t) const {
    const int d = st_.params.d;
    dd acc(0.0);
    for (size_t i = 0; i < points_.size(); ++i) {
        dd u = dd(t) - dd(double(points_[i][0]));
        acc += point_w_[i] * sqrt(c2d_ + powi(u, 2 * d));
    }
    return acc;
}

dd PsiEvaluator::far_dd(double t) const {
    const int d = st_.params.d;
    dd acc(0.0);
    // j = 0: the polynomial part; exactly the residual moments
    for (int l = 0; l <= d; ++l) {
        double binom = 1.0;
        for (int i = 0; i < l; ++i) binom *= double(d - i) / double(i + 1);
        dd term = dd(binom) * moments_[l] * powi(dd(t), d - l);
        if (l % 2) term = -term;
        acc += term;
    }
    // j >= 1: binom(1/2,j) c^(2dj) sum_l binom(q+l-1,l) M_l t^(-q-l)
    if (st_.params.c != 0.0) {
        dd inv_t = dd(1.0) / dd(t);
        dd c2dj = c2d_;
        double half_binom = 0.5;  // binom(1/2, 1)
        for (int j = 1; j <= 24; ++j) {
            int q = (2 * j - 1) * d;
            dd tpow = powi(inv_t, q);
            dd B(1.0);
            dd inner(0.0);
            double envelope = 0.0;
            int quiet = 0;  // parity makes every other moment exactly zero,
                            // so a single small term proves nothing
            for (int l = 0; l < int(moments_.size()) && quiet < 3; ++l) {
                dd term = B * moments_[l] * tpow;
                inner += term;
                envelope = std::max(envelope, std::fabs(double(term)));
                if (l > 2 * st_.support_radius
                    && std::fabs(double(term)) < 1e-42 * std::max(envelope, 1e-300))
                    ++quiet;
                else if (l > 2 * st_.support_radius)
                    quiet = 0;
                B *= dd(double(q + l)) / dd(double(l + 1));
                tpow *= inv_t;
            }
            dd jterm = dd(half_binom) * c2dj * inner;
            acc += jterm;
            // the j-terms shrink by (c/t)^(2d) >= 12^(2d) per step, so one
            // negligible term ends the sweep
            if (std::fabs(double(jterm)) < 1e-42 * std::max(std::fabs(double(acc)), 1e-300))
                break;
            half_binom *= (0.5 - j) / double(j + 1);
            c2dj *= c2d_;
        }
    }
    return acc;
}

dd PsiEvaluator::eval_dd(double t) const {
    t = std::fabs(t);
    return (t <= t_split_) ? direct_dd(t) : far_dd(t);
}

dd PsiEvaluator::eval3_dd(const std::array<double, 3>& x) const {
    const int d = st_.params.d;
    dd acc(0.0);
    for (size_t i = 0; i < points_.size(); ++i) {
        dd r2(0.0);
        for (int c = 0; c < 3; ++c) {
            dd diff = dd(x[c]) - dd(double(points_[i][c]));
            r2 += diff * diff;
        }
        acc += point_w_[i] * sqrt(c2d_ + powi(r2, d));
    }
    return acc;
}

double PsiEvaluator::operator()(const std::array<double, 3>& x) const {
    return (n_ == 1) ? double(eval_dd(x[0])) : double(eval3_dd(x));
}

double tail_bound(const Stencil& st, const LatticeSumSettings& settings) {
    const int d = st.params.d, n = st.params.n;
    const int g = settings.degree_hint;
    if (g >= 2 * d)
        throw invalid_parameter(
            "tail diverges: degree_hint must stay below 2d, the decay order "
            "of the lattice function",
            {{"degree_hint", g}, {"limit", 2 * d}});
    if (settings.R < st.support_radius + 2)
        throw invalid_parameter("truncation radius too small",
                                {{"R", settings.R},
                                 {"support_radius", st.support_radius}});

    PsiEvaluator psi(st);
    double R = double(settings.R);
    double K = 0.0;
    if (n == 1) {
        for (double t : {R, R + 0.25, R + 0.5})
            K = std::max(K, std::fabs(double(psi.eval_dd(t))) * std::pow(t, n + 2 * d));
        K *= 4.0 * 2.0;  // safety * shell cardinality
    } else {
        double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
        for (const auto& u : std::vector<std::array<double, 3>>{
                 {1, 0, 0}, {s2, s2, 0}, {s3, s3, s3}}) {
            std::array<double, 3> x{u[0] * R, u[1] * R, u[2] * R};
            K = std::max(K, std::fabs(double(psi.eval3_dd(x))) * std::pow(R, n + 2 * d));
        }
        K *= 4.0 * 24.0;
    }
    return K * std::pow(R, double(g - 2 * d)) / double(2 * d - g);
}

namespace {

void check_tail_budget(const Stencil& st, const LatticeSumSettings& settings,
                       double tb) {
    if (tb <= settings.tail_tolerance) return;
    const int d = st.params.d;
    // suggestions: largest degree whose budget fits, and the R that would fit this one
    int max_g = -1;
    for (int g = 2 * d - 1; g >= 0; --g) {
        LatticeSumSettings probe = settings;
        probe.degree_hint = g;
        if (tail_bound(st, probe) <= settings.tail_tolerance) { max_g = g; break; }
    }
    double K = tb * (2 * d - settings.degree_hint)
             / std::pow(double(settings.R), double(settings.degree_hint - 2 * d));
    double minR = std::pow(K / ((2 * d - settings.degree_hint) * settings.tail_tolerance),
                           1.0 / (2 * d - settings.degree_hint));
    throw invalid_parameter(
        "tail budget unsatisfiable at this truncation radius",
        {{"tail_bound", tb},
         {"tail_tolerance", settings.tail_tolerance},
         {"degree_hint", settings.degree_hint},
         {"R", settings.R},
         {"max_feasible_degree", max_g},
         {"min_radius_for_degree", std::ceil(minR)}});
}

} // namespace

namespace {

double window_sum(const Stencil& st, const PsiEvaluator& psi,
                  const std::function<double(const std::array<double, 3>&)>& f,
                  double h, const std::array<double, 3>& x, long long R) {
    const int n = st.params.n;

    if (n == 1) {
        double u = x[0] / h;
        long long jlo = (long long)std::ceil(u - double(R));
        long long jhi = (long long)std::floor(u + double(R));
        struct Term {
            double dist;
            long long j;
            dd value;
        };
        std::vector<Term> terms;
        terms.reserve(jhi - jlo + 1);
        for (long long j = jlo; j <= jhi; ++j) {
            std::array<double, 3> arg{double(j) * h, 0.0, 0.0};
            dd v = dd(f(arg)) * psi.eval_dd(u - double(j));
            terms.push_back({std::fabs(u - double(j)), j, v});
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            if (a.dist != b.dist) return a.dist < b.dist;
            return a.j < b.j;
        });
        dd acc(0.0);
        for (const auto& t : terms) acc += t.value;
        return double(acc);
    }

    // n = 3: convolve the weights into f first (exact rearrangement of the
    // double sum), then one radial evaluation per shifted point
    std::array<double, 3> u{x[0] / h, x[1] / h, x[2] / h};
    std::array<long long, 3> blo{}, bhi{};
    for (int i = 0; i < 3; ++i) {
        blo[i] = (long long)std::ceil(u[i] - double(R));
        bhi[i] = (long long)std::floor(u[i] + double(R));
    }
    const int rho = st.support_radius;
    std::vector<std::array<int, 3>> pts;
    std::vector<double> ptw;
    for (size_t o = 0; o < st.reps.size(); ++o)
        for (const auto& k : orbit_points(st.reps[o], 3)) {
            pts.push_back(k);
            ptw.push_back(st.weights[o]);
        }

    struct Term {
        double dist;
        std::array<long long, 3> m;
        double value;
    };
    std::vector<Term> terms;
    for (long long mx = blo[0] - rho; mx <= bhi[0] + rho; ++mx)
        for (long long my = blo[1] - rho; my <= bhi[1] + rho; ++my)
            for (long long mz = blo[2] - rho; mz <= bhi[2] + rho; ++mz) {
                double g = 0.0;
                for (size_t i = 0; i < pts.size(); ++i) {
                    long long jx = mx - pts[i][0], jy = my - pts[i][1], jz = mz - pts[i][2];
                    if (jx < blo[0] || jx > bhi[0] || jy < blo[1] || jy > bhi[1]
                        || jz < blo[2] || jz > bhi[2])
                        continue;
                    std::array<double, 3> arg{jx * h, jy * h, jz * h};
                    g += ptw[i] * f(arg);
                }
                if (g == 0.0) continue;
                double dx = u[0] - mx, dy = u[1] - my, dz = u[2] - mz;
                double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
                terms.push_back({dist, {mx, my, mz}, g * phi_radial(st.params, dist)});
            }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.m < b.m;
    });
    dd acc(0.0);
    for (const auto& t : terms) acc += dd(t.value);
    return double(acc);
}

} // namespace

QuasiInterpResult quasi_interp(const Stencil& st,
                               const std::function<double(const std::array<double, 3>&)>& f,
                               double h, const std::array<double, 3>& x,
                               const LatticeSumSettings& settings) {
    if (!(h > 0.0))
        throw invalid_parameter("spacing h must be positive", {{"h", h}});

    LatticeSumSettings eff = settings;
    // the volume term makes wider windows impractical in three dimensions:
    // R = 60 already visits ~1.7M lattice points per evaluation
    if (st.params.n == 3 && eff.R > 60) eff.R = 60;

    if (eff.use_extrapolation && eff.degree_hint != 2 * st.params.d - 1)
        throw invalid_parameter(
            "extrapolation in R applies only to the marginal degree 2d - 1",
            {{"degree_hint", eff.degree_hint}, {"marginal_degree", 2 * st.params.d - 1}});

    PsiEvaluator psi(st);

    if (!eff.use_extrapolation) {
        double tb = tail_bound(st, eff);
        check_tail_budget(st, eff, tb);
        return {window_sum(st, psi, f, h, x, eff.R), tb};
    }

    long long Rh = eff.R / 2;
    if (Rh < st.support_radius + 2)
        throw invalid_parameter("extrapolation needs room for the half window",
                                {{"R", eff.R}, {"support_radius", st.support_radius}});
    const double s1 = window_sum(st, psi, f, h, x, eff.R);
    const double s0 = window_sum(st, psi, f, h, x, Rh);
    const double est = std::fabs(s1 - s0);
    if (est > eff.tail_tolerance)
        throw invalid_parameter(
            "extrapolated tail estimate exceeds the declared budget",
            {{"tail_estimate", est}, {"tail_tolerance", eff.tail_tolerance}, {"R", eff.R}});
    return {2.0 * s1 - s0, est};
}

DecayFitReport psi_decay_fit(const Stencil& st, const std::array<double, 3>& direction,
                             std::vector<double> radii) {
    const int n = st.params.n, d = st.params.d;
    if (radii.size() < 4)
        throw invalid_parameter("need at least 4 radii", {{"count", radii.size()}});
    std::sort(radii.begin(), radii.end());
    if (radii.front() <= st.support_radius + 5.0)
        throw invalid_parameter("radii must exceed support_radius + 5",
                                {{"min_radius", radii.front()},
                                 {"support_radius", st.support_radius}});
    if (radii.back() / radii.front() < std::pow(10.0, 1.5))
        throw invalid_parameter("radii must span at least 1.5 decades",
                                {{"span", radii.back() / radii.front()}});
    double dirnorm = 0.0;
    for (int i = 0; i < n; ++i) dirnorm += direction[i] * direction[i];
    if (!(dirnorm > 0.0))
        throw invalid_parameter("direction must be nonzero", {});
    dirnorm = std::sqrt(dirnorm);

    PsiEvaluator psi(st);

    // Noise floor: beyond the support the exact sum annihilates the first
    // n+d moments, so what remains of the degree-d polynomial part is pure
    // weight-rounding residual.  Samples of that size measure arithmetic,
    // not decay, and are excluded.  (For c = 0 the whole tail is of this
    // kind: every sample drops below the floor and the slope reports -inf,
    // i.e. decay faster than measurable.)
    std::vector<dd> Mres(d + 1, dd(0.0));
    double wabs = 0.0;
    for (size_t o = 0; o < st.reps.size(); ++o)
        for (const auto& k : orbit_points(st.reps[o], n)) {
            dd w = st.weights_dd[o];
            wabs += std::fabs(double(w));
            if (n == 1) {
                dd kp(1.0), kk{double(k[0])};
                for (int l = 0; l <= d; ++l) {
                    Mres[l] += w * kp;
                    kp *= kk;
                }
            }
        }
    std::vector<double> Mabs(d + 1, 0.0);
    for (int l = 0; l <= d; ++l) Mabs[l] = std::fabs(double(Mres[l]));
    auto noise_floor = [&](double r) {
        if (n == 1) {
            double acc = 0.0, binom = 1.0;
            for (int l = 0; l <= d; ++l) {
                acc += binom * std::fabs(Mabs[l]) * std::pow(r, double(d - l));
                binom *= double(d - l) / double(l + 1);
            }
            return 30.0 * acc + 1e-30 * wabs * phi_radial(st.params, r);
        }
        return 1e-28 * wabs * phi_radial(st.params, r);
    };

    DecayFitReport rep;
    std::vector<double> lr, lv;
    for (double r : radii) {
        std::array<double, 3> x{};
        for (int i = 0; i < n; ++i) x[i] = r * direction[i] / dirnorm;
        double v = std::fabs((n == 1) ? double(psi.eval_dd(x[0])) : double(psi.eval3_dd(x)));
        if (v < 1e-300) {
            rep.truncated_underflow = true;
            break;
        }
        rep.radii.push_back(r);
        rep.values.push_back(v);
    }
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        if (rep.values[i] < noise_floor(rep.radii[i])) {
            ++rep.excluded_noise;
            continue;
        }
        lr.push_back(std::log(rep.radii[i]));
        lv.push_back(std::log(rep.values[i]));
    }
    if (lr.size() < 2) {
        rep.all_below_floor = true;
        rep.slope = -std::numeric_limits<double>::infinity();
        return rep;
    }
    double mr = 0.0, mv = 0.0;
    for (size_t i = 0; i < lr.size(); ++i) { mr += lr[i]; mv += lv[i]; }
    mr /= lr.size(); mv /= lv.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < lr.size(); ++i) {
        num += (lr[i] - mr) * (lv[i] - mv);
        den += (lr[i] - mr) * (lr[i] - mr);
    }
    rep.slope = num / den;
    return rep;
}

} // namespace gmq
