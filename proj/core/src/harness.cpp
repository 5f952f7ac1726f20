#include <gmq/harness.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include <gmq/errors.hpp>
#include <gmq/fourier.hpp>

namespace gmq {

namespace {

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json params_json(const RbfParams& p) {
    return {{"c", p.c}, {"d", p.d}, {"n", p.n}};
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double sse = 0.0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < m; ++i) { xm += x[i]; ym += y[i]; }
    xm /= double(m);
    ym /= double(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.sse += r * r;
    }
    f.stderr_slope = (m > 2) ? std::sqrt(f.sse / (double(m - 2) * sxx)) : 0.0;
    return f;
}

// shared fit pipeline so self_consistent can rerun it verbatim from raw rows
nlohmann::json fit_convergence(const std::vector<double>& hs, const std::vector<double>& errs,
                               const std::vector<double>& tails) {
    nlohmann::json fitted = nlohmann::json::object();

    // Rungs whose error has sunk to the truncation-tail floor measure the
    // lattice cutoff, not the rate; drop them from the fits.
    std::size_t keep = hs.size();
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (errs[i] <= std::max(10.0 * tails[i], 1e-13)) { keep = i; break; }
    }
    fitted["rungs_used"] = keep;
    fitted["truncated_floor"] = keep < hs.size();
    fitted["degenerate"] = keep < 2;
    if (keep < 2) return fitted;

    nlohmann::json locals = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < keep; ++i)
        locals.push_back(std::log2(errs[i] / errs[i + 1]));
    fitted["local_orders"] = locals;

    std::vector<double> lh(keep), le(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        lh[i] = std::log(hs[i]);
        le[i] = std::log(errs[i]);
    }
    const LinFit pw = linear_fit(lh, le);
    fitted["order_power"] = {{"value", pw.slope}, {"stderr", pw.stderr_slope}};

    // e(h) = C h^alpha (A + ln(1/h)): scan A on a fixed grid, regress the
    // log-corrected errors, keep the smallest residual
    double best_sse = std::numeric_limits<double>::infinity();
    double best_A = 0.0, best_alpha = 0.0, best_C = 0.0;
    for (int ia = 1; ia <= 200; ++ia) {
        const double A = 0.02 * ia;
        std::vector<double> yc(keep);
        bool ok = true;
        for (std::size_t i = 0; i < keep; ++i) {
            const double corr = A + std::log(1.0 / hs[i]);
            if (corr <= 0.0) { ok = false; break; }
            yc[i] = le[i] - std::log(corr);
        }
        if (!ok) continue;
        const LinFit f = linear_fit(lh, yc);
        if (f.sse < best_sse) {
            best_sse = f.sse;
            best_A = A;
            best_alpha = f.slope;
            best_C = std::exp(f.intercept);
        }
    }
    fitted["order_log_model"] = {
        {"alpha", best_alpha}, {"A", best_A}, {"C", best_C}, {"sse", best_sse}};
    return fitted;
}

} // namespace

nlohmann::json ExperimentReport::to_json() const {
    return {{"experiment", experiment}, {"config", config},   {"raw", raw},
            {"fitted", fitted},         {"checks", checks},   {"provenance", provenance}};
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    if (!raw.is_array() || raw.empty()) return out;
    std::vector<std::string> keys;
    for (auto it = raw.front().begin(); it != raw.front().end(); ++it)
        keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ',';
        out += keys[i];
    }
    out += '\n';
    for (const auto& row : raw) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i) out += ',';
            const auto& v = row.at(keys[i]);
            if (v.is_number_float())
                out += fmt17(v.get<double>());
            else if (v.is_number_integer())
                out += std::to_string(v.get<long long>());
            else if (v.is_boolean())
                out += v.get<bool>() ? "1" : "0";
            else
                out += v.get<std::string>();
        }
        out += '\n';
    }
    return out;
}

bool self_consistent(const ExperimentReport& rep, double tol) {
    if (rep.experiment == "convergence" || rep.experiment == "conjecture_probe") {
        std::vector<double> hs, errs, tails;
        for (const auto& row : rep.raw) {
            hs.push_back(row.at("h").get<double>());
            errs.push_back(row.at("sup_error").get<double>());
            tails.push_back(row.at("tail_estimate").get<double>());
        }
        const nlohmann::json refit = fit_convergence(hs, errs, tails);
        if (refit.at("degenerate").get<bool>() != rep.fitted.at("degenerate").get<bool>())
            return false;
        if (refit.at("degenerate").get<bool>()) return true;
        const double a = refit.at("order_power").at("value").get<double>();
        const double b = rep.fitted.at("order_power").at("value").get<double>();
        return std::fabs(a - b) <= tol;
    }
    if (rep.experiment == "reproduction") {
        for (const auto& entry : rep.fitted.at("per_degree")) {
            const int g = entry.at("degree").get<int>();
            double worst = 0.0, tail = 0.0;
            for (const auto& row : rep.raw)
                if (row.at("degree").get<int>() == g) {
                    worst = std::max(worst, row.at("abs_error").get<double>());
                    tail = std::max(tail, row.at("tail_estimate").get<double>());
                }
            if (std::fabs(worst - entry.at("max_residual").get<double>()) > tol) return false;
            const bool ok = worst <= std::max(10.0 * tail, 1e-9);
            if (ok != entry.at("reproduced").get<bool>()) return false;
        }
        return true;
    }
    return true;  // nothing refittable
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t stencil_hash(const Stencil& st) {
    return fnv1a(stencil_to_json(st).dump());
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * double(index % base);
        index /= base;
    }
    return r;
}

std::vector<std::array<double, 3>> probe_points(int n, int count) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(std::size_t(count));
    for (int i = 1; i <= count; ++i) {
        if (n == 1)
            pts.push_back({halton(std::uint64_t(i), 3), 0.0, 0.0});
        else
            pts.push_back({halton(std::uint64_t(i), 3), halton(std::uint64_t(i), 5),
                           halton(std::uint64_t(i), 7)});
    }
    return pts;
}

std::function<double(const std::array<double, 3>&)> test_function(const std::string& tag, int n) {
    auto r2 = [n](const std::array<double, 3>& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[i] * x[i];
        return s;
    };
    if (tag == "sinexp")
        return [r2](const std::array<double, 3>& x) { return std::sin(x[0]) * std::exp(-r2(x) / 50.0); };
    if (tag == "runge")
        return [r2](const std::array<double, 3>& x) { return 1.0 / (1.0 + r2(x)); };
    if (tag == "gauss")
        return [r2](const std::array<double, 3>& x) { return std::exp(-r2(x) / 8.0); };
    if (tag == "linear")
        return [](const std::array<double, 3>& x) { return x[0]; };
    throw invalid_parameter("unknown test function tag \"" + tag +
                                "\": expected sinexp, runge, gauss, or linear",
                            {{"tag", tag}});
}

ExperimentReport reproduction_test(const Stencil& st, const std::vector<int>& degrees,
                                   LatticeSumSettings settings,
                                   const std::vector<std::array<double, 3>>& points) {
    if (degrees.empty())
        throw invalid_parameter("reproduction test needs at least one degree", {});
    for (int g : degrees)
        if (g < 0 || g > 2 * st.params.d - 1)
            throw invalid_parameter("degree outside the reproduced range",
                                    {{"degree", g}, {"max_degree", 2 * st.params.d - 1}});

    const auto pts = points.empty() ? probe_points(st.params.n, 33) : points;
    ExperimentReport rep;
    rep.experiment = "reproduction";
    rep.config = {{"params", params_json(st.params)},
                  {"support_radius", st.support_radius},
                  {"degrees", degrees},
                  {"R", settings.R},
                  {"points", pts.size()},
                  {"tail_enforcement", false}};
    rep.provenance = {{"stencil_fnv1a", hash_hex(stencil_hash(st))}};

    // the experiment measures residuals against the declared budget instead
    // of aborting on it, so enforcement inside quasi_interp is lifted
    settings.tail_tolerance = 1.0;

    nlohmann::json per_degree = nlohmann::json::array();
    for (int g : degrees) {
        settings.degree_hint = g;
        auto f = [g](const std::array<double, 3>& x) { return std::pow(x[0], g); };

        double worst = 0.0, tail = 0.0;
        for (const auto& x : pts) {
            const QuasiInterpResult q = quasi_interp(st, f, 1.0, x, settings);
            const double exact = std::pow(x[0], g);
            const double err = std::fabs(q.value - exact);
            worst = std::max(worst, err);
            tail = std::max(tail, q.tail_estimate);
            rep.raw.push_back({{"degree", g},
                               {"x1", x[0]},
                               {"x2", x[1]},
                               {"x3", x[2]},
                               {"value", q.value},
                               {"exact", exact},
                               {"abs_error", err},
                               {"tail_estimate", q.tail_estimate}});
        }
        per_degree.push_back({{"degree", g},
                              {"max_residual", worst},
                              {"tail_estimate", tail},
                              {"reproduced", worst <= std::max(10.0 * tail, 1e-9)}});
    }
    rep.fitted["per_degree"] = per_degree;
    return rep;
}

ExperimentReport convergence_study(const Stencil& st, const std::string& f_tag,
                                   const std::vector<double>& h_list,
                                   LatticeSumSettings settings,
                                   const std::vector<std::array<double, 3>>& points) {
    if (h_list.size() < 5)
        throw invalid_parameter("convergence study needs at least 5 spacings",
                                {{"got", h_list.size()}});
    for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
        if (!(h_list[i] > 0.0) || std::fabs(h_list[i] / h_list[i + 1] - 2.0) > 1e-12)
            throw invalid_parameter(
                "spacings must form a descending ratio-2 ladder",
                {{"h", h_list[i]}, {"h_next", h_list[i + 1]}});
    }

    const auto f = test_function(f_tag, st.params.n);
    const auto pts = points.empty() ? probe_points(st.params.n, 33) : points;

    ExperimentReport rep;
    rep.experiment = "convergence";
    rep.config = {{"params", params_json(st.params)},
                  {"support_radius", st.support_radius},
                  {"f", f_tag},
                  {"h_list", h_list},
                  {"R", settings.R},
                  {"points", pts.size()},
                  {"tail_enforcement", false}};
    rep.provenance = {{"stencil_fnv1a", hash_hex(stencil_hash(st))}};

    std::vector<double> errs, tails;
    for (double h : h_list) {
        LatticeSumSettings s = settings;
        // widen the window until the profile is negligible at the rim;
        // tails are reported per rung and handled by the fit floor, not
        // enforced (the discretization error towers above them here)
        s.R = std::max(settings.R, (long long)std::ceil(45.0 / h) + 16);
        s.degree_hint = (f_tag == "linear") ? 1 : 0;
        s.tail_tolerance = 1.0;
        double sup = 0.0, tail = 0.0;
        for (const auto& x : pts) {
            const QuasiInterpResult q = quasi_interp(st, f, h, x, s);
            sup = std::max(sup, std::fabs(q.value - f(x)));
            tail = q.tail_estimate;
        }
        errs.push_back(sup);
        tails.push_back(tail);
        rep.raw.push_back({{"h", h}, {"R", s.R}, {"sup_error", sup}, {"tail_estimate", tail}});
    }
    rep.fitted = fit_convergence(h_list, errs, tails);
    return rep;
}

ExperimentReport pd_demo(const RbfParams& p, double r) {
    validate(p);
    if (!(r > 0.0) || !std::isfinite(r))
        throw invalid_parameter("pd_demo needs a positive separation r", {{"r", r}});

    const double cd = std::pow(p.c, p.d);
    const double ph = phi_radial(p, r);
    const double lam1 = cd - ph;  // negative: phi(r) > phi(0) for r > 0
    const double lam2 = cd + ph;

    Eigen::Matrix2d M;
    M << cd, ph, ph, cd;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
    const double ev1 = es.eigenvalues()[0];
    const double ev2 = es.eigenvalues()[1];

    const double scale = std::max(1.0, std::fabs(lam2));
    if (std::fabs(ev1 - lam1) > 1e-14 * scale || std::fabs(ev2 - lam2) > 1e-14 * scale)
        throw numerical_failure("eigensolver disagrees with closed-form eigenvalues",
                                {{"analytic", {lam1, lam2}}, {"solver", {ev1, ev2}}});

    ExperimentReport rep;
    rep.experiment = "pd_demo";
    rep.config = {{"params", params_json(p)}, {"r", r}};
    rep.raw.push_back({{"r", r},
                       {"diag", cd},
                       {"offdiag", ph},
                       {"lambda1_analytic", lam1},
                       {"lambda2_analytic", lam2},
                       {"lambda1_solver", ev1},
                       {"lambda2_solver", ev2}});
    rep.fitted = {{"lambda1", lam1}, {"lambda2", lam2}};
    rep.checks = {{"solver_agrees", true},
                  {"one_negative", lam1 < 0.0},
                  {"one_positive", lam2 > 0.0}};
    return rep;
}

ExperimentReport conjecture_probe(const Stencil& st, const std::string& f_tag,
                                  const std::vector<double>& h_list,
                                  LatticeSumSettings settings) {
    ExperimentReport rep = convergence_study(st, f_tag, h_list, settings);
    rep.experiment = "conjecture_probe";

    const int proven = 2 * st.params.d;
    const int candidate = st.params.n - 1 + 2 * st.params.d;
    nlohmann::json orders = {{"proven_saturation", proven},
                             {"candidate_saturation", candidate}};
    if (rep.fitted.at("degenerate").get<bool>()) {
        orders["verdict"] = "degenerate";
    } else if (proven == candidate) {
        orders["verdict"] = "indistinguishable";
    } else {
        const double alpha = rep.fitted.at("order_power").at("value").get<double>();
        const double se = rep.fitted.at("order_power").at("stderr").get<double>();
        const double dp = std::fabs(alpha - double(proven));
        const double dc = std::fabs(alpha - double(candidate));
        // a sup-norm fit over five dyadic rungs cannot separate rates one
        // apart unless the gap dwarfs the fit noise
        if (std::fabs(dp - dc) <= 4.0 * se)
            orders["verdict"] = "coarse";
        else
            orders["verdict"] = (dp < dc) ? "closer_to_proven" : "closer_to_candidate";
        orders["fit_gap_proven"] = dp;
        orders["fit_gap_candidate"] = dc;
    }
    rep.fitted["orders"] = orders;
    return rep;
}

std::vector<double> pou_deviation(const Stencil& st,
                                  const std::vector<std::array<double, 3>>& xs,
                                  long long R) {
    const int n = st.params.n;
    if (R < st.support_radius + 2)
        throw invalid_parameter("window too small for the stencil support",
                                {{"R", R}, {"support_radius", st.support_radius}});
    for (const auto& x : xs)
        for (int i = 0; i < n; ++i)
            if (!(x[i] > 0.0 && x[i] < 1.0))
                throw invalid_parameter("probe points must lie strictly inside the unit cell",
                                        {{"coordinate", x[i]}});

    std::vector<double> dev;
    dev.reserve(xs.size());

    if (n == 1) {
        LatticeSumSettings s;
        s.R = R;
        s.tail_tolerance = 1.0;  // reporting deviation, not enforcing a budget
        s.degree_hint = 0;
        auto one = [](const std::array<double, 3>&) { return 1.0; };
        for (const auto& x : xs)
            dev.push_back(std::fabs(quasi_interp(st, one, 1.0, x, s).value - 1.0));
        return dev;
    }

    // For every x in (0,1)^3 the window is the same lattice box
    // B = [-R+1, R]^3, so sum_{j in B} Psi(x - j) = sum_m g(m) phi(x - m)
    // with g(m) = sum_k mu_k [m - k in B] independent of x.  Precompute g
    // once; only a support-thick shell of the m-box differs from the full
    // weight sum.
    const int rho = st.support_radius;
    const long long lo = -R + 1 - rho, hi = R + rho;
    const long long side = hi - lo + 1;
    std::vector<dd> g(std::size_t(side * side * side), dd(0.0));

    std::vector<std::array<int, 3>> pts;
    std::vector<dd> ws;
    for (std::size_t i = 0; i < st.reps.size(); ++i)
        for (const auto& q : orbit_points(st.reps[i], 3)) {
            pts.push_back(q);
            ws.push_back(st.weights_dd[i]);
        }

    auto inB = [&](long long v) { return v >= -R + 1 && v <= R; };
    for (long long a = lo; a <= hi; ++a)
        for (long long b = lo; b <= hi; ++b)
            for (long long c = lo; c <= hi; ++c) {
                dd acc(0.0);
                for (std::size_t k = 0; k < pts.size(); ++k)
                    if (inB(a - pts[k][0]) && inB(b - pts[k][1]) && inB(c - pts[k][2]))
                        acc += ws[k];
                g[std::size_t(((a - lo) * side + (b - lo)) * side + (c - lo))] = acc;
            }

    const double c2d = std::pow(st.params.c, 2 * st.params.d);
    for (const auto& x : xs) {
        dd acc(0.0);
        for (long long a = lo; a <= hi; ++a)
            for (long long b = lo; b <= hi; ++b)
                for (long long c = lo; c <= hi; ++c) {
                    const dd& gm = g[std::size_t(((a - lo) * side + (b - lo)) * side + (c - lo))];
                    if (gm.hi == 0.0 && gm.lo == 0.0) continue;
                    const double dx = x[0] - double(a);
                    const double dy = x[1] - double(b);
                    const double dz = x[2] - double(c);
                    const double rr = dx * dx + dy * dy + dz * dz;
                    acc += gm * std::sqrt(c2d + std::pow(rr, st.params.d));
                }
        dev.push_back(std::fabs(double(acc) - 1.0));
    }
    return dev;
}

} // namespace gmq
