#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <doctest.h>
#include <gmq/errors.hpp>
#include <gmq/harness.hpp>
#include <gmq/lattice.hpp>
#include <gmq/stencil.hpp>

using namespace gmq;

TEST_CASE("halton sequence and probe points") {
    CHECK(halton(1, 2) == 0.5);
    CHECK(halton(5, 2) == 0.625);  // 101 reversed behind the point: .101
    CHECK(halton(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(halton(2, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(halton(3, 3) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    const auto p1 = probe_points(1, 10);
    REQUIRE(p1.size() == 10);
    for (const auto& x : p1) {
        CHECK(x[0] > 0.0);
        CHECK(x[0] < 1.0);
        CHECK(x[1] == 0.0);
        CHECK(x[2] == 0.0);
    }
    const auto p3 = probe_points(3, 10);
    REQUIRE(p3.size() == 10);
    for (const auto& x : p3)
        for (int i = 0; i < 3; ++i) {
            CHECK(x[i] > 0.0);
            CHECK(x[i] < 1.0);
        }
}

TEST_CASE("string hash matches the published 64-bit FNV-1a vectors") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);

    // stencil hash is a pure function of the serialized coefficients
    const auto a = build_stencil({1.0, 3, 1}, 4);
    const auto b = build_stencil({1.0, 3, 1}, 4);
    const auto c = build_stencil({1.0, 3, 1}, 5);
    CHECK(stencil_hash(a) == stencil_hash(b));
    CHECK(stencil_hash(a) != stencil_hash(c));
}

TEST_CASE("test profiles evaluate their closed forms") {
    const auto se = test_function("sinexp", 1);
    CHECK(se({0.3, 0.0, 0.0})
          == doctest::Approx(std::sin(0.3) * std::exp(-0.09 / 50.0)).epsilon(1e-15));
    const auto ru3 = test_function("runge", 3);
    CHECK(ru3({0.5, 0.5, 0.5}) == doctest::Approx(1.0 / 1.75).epsilon(1e-15));
    // the envelope only sees the first n coordinates
    const auto ru1 = test_function("runge", 1);
    CHECK(ru1({0.5, 0.9, 0.0}) == doctest::Approx(1.0 / 1.25).epsilon(1e-15));
    const auto ga = test_function("gauss", 1);
    CHECK(ga({2.0, 0.0, 0.0}) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    const auto li = test_function("linear", 3);
    CHECK(li({0.37, 0.9, 0.1}) == 0.37);

    CHECK_THROWS_AS((void)test_function("blorp", 1), invalid_parameter);
    try {
        (void)test_function("blorp", 1);
    } catch (const invalid_parameter& e) {
        CHECK(e.details().at("tag").get<std::string>() == "blorp");
    }
}

TEST_CASE("interpolation matrix demo matches the analytic eigenvalues") {
    CHECK_THROWS_AS((void)pd_demo({1.0, 1, 1}, 0.0), invalid_parameter);
    CHECK_THROWS_AS((void)pd_demo({1.0, 1, 1}, -2.0), invalid_parameter);

    const auto rep = pd_demo({1.0, 1, 1}, 1.0);
    CHECK(rep.experiment == "pd_demo");
    CHECK(rep.fitted.at("lambda1").get<double>()
          == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rep.fitted.at("lambda2").get<double>()
          == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rep.checks.at("solver_agrees").get<bool>());
    CHECK(rep.checks.at("one_negative").get<bool>());
    CHECK(rep.checks.at("one_positive").get<bool>());
    CHECK(self_consistent(rep));

    // polyharmonic limit: diagonal vanishes, eigenvalues -+ phi(r)
    const auto rep0 = pd_demo({0.0, 1, 1}, 1.0);
    CHECK(rep0.fitted.at("lambda1").get<double>() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(rep0.fitted.at("lambda2").get<double>() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("convergence ladder validation") {
    LatticeSumSettings s;
    CHECK_THROWS_AS((void)convergence_study(build_stencil({1.0, 1, 1}, 1), "sinexp",
                                            {1.0, 0.5, 0.25, 0.125}, s),
                    invalid_parameter);
    try {
        (void)convergence_study(build_stencil({1.0, 1, 1}, 1), "sinexp",
                                {1.0, 0.5, 0.25, 0.125}, s);
    } catch (const invalid_parameter& e) {
        CHECK(e.details().at("got").get<int>() == 4);
    }
    CHECK_THROWS_AS((void)convergence_study(build_stencil({1.0, 1, 1}, 1), "sinexp",
                                            {1.0, 0.6, 0.3, 0.15, 0.075}, s),
                    invalid_parameter);
}

TEST_CASE("convergence study fits the measured decade and refits from raw") {
    const auto st = build_stencil({1.0, 1, 1}, 1);
    LatticeSumSettings s;
    s.R = 4000;
    s.tail_tolerance = 1.0;  // the report carries the estimates; no abort
    const std::vector<double> hs = {1.0, 0.5, 0.25, 0.125, 0.0625};
    const auto rep = convergence_study(st, "sinexp", hs, s);

    CHECK(rep.experiment == "convergence");
    CHECK(rep.config.at("h_list").size() == 5);
    REQUIRE(rep.raw.size() == 5);
    for (const auto& row : rep.raw) {
        CHECK(row.contains("h"));
        CHECK(row.contains("sup_error"));
        CHECK(row.contains("tail_estimate"));
    }
    // errors shrink down the ladder
    CHECK(rep.raw.back().at("sup_error").get<double>()
          < 0.1 * rep.raw.front().at("sup_error").get<double>());
    CHECK(!rep.fitted.at("degenerate").get<bool>());
    // saturation order is 2d = 2; the pure power fit sees it dragged down by
    // the logarithm, the corrected model recovers it
    const double pw = rep.fitted.at("order_power").at("value").get<double>();
    CHECK(pw > 1.3);
    CHECK(pw < 1.8);
    const double al = rep.fitted.at("order_log_model").at("alpha").get<double>();
    CHECK(al > 1.7);
    CHECK(al < 2.2);
    CHECK(self_consistent(rep));
}

TEST_CASE("linear profile drives the fit degenerate") {
    const auto st = build_stencil({1.0, 1, 1}, 1);
    LatticeSumSettings s;
    s.R = 2000;
    s.tail_tolerance = 1.0;
    const auto rep = convergence_study(st, "linear", {1.0, 0.5, 0.25, 0.125, 0.0625}, s);
    // degree-one input is reproduced identically at every h, so every rung
    // sits on the truncation floor and no rate can be extracted
    CHECK(rep.fitted.at("degenerate").get<bool>());
    CHECK(self_consistent(rep));
}

TEST_CASE("reproduction report classifies degrees against the tail budget") {
    const auto st = build_stencil({1.0, 3, 1}, 4);
    LatticeSumSettings s;
    s.R = 2000;

    CHECK_THROWS_AS((void)reproduction_test(st, {}, s), invalid_parameter);
    CHECK_THROWS_AS((void)reproduction_test(st, {6}, s), invalid_parameter);
    try {
        (void)reproduction_test(st, {6}, s);
    } catch (const invalid_parameter& e) {
        CHECK(e.details().at("max_degree").get<int>() == 5);
    }

    const auto rep = reproduction_test(st, {0, 1, 2, 3, 4, 5}, s);
    CHECK(rep.experiment == "reproduction");
    REQUIRE(rep.fitted.at("per_degree").size() == 6);
    for (const auto& entry : rep.fitted.at("per_degree")) {
        const int g = entry.at("degree").get<int>();
        CHECK(entry.at("reproduced").get<bool>() == (g <= 3));
    }
    CHECK(self_consistent(rep));
    CHECK(rep.provenance.at("stencil_fnv1a").get<std::string>().size() == 16);
    for (char ch : rep.provenance.at("stencil_fnv1a").get<std::string>())
        CHECK(std::isxdigit(static_cast<unsigned char>(ch)));
}

TEST_CASE("doubling the window never worsens a residual past the tail budget") {
    const auto st = build_stencil({1.0, 3, 1}, 4);
    LatticeSumSettings half;
    half.R = 1000;
    LatticeSumSettings full;
    full.R = 2000;
    const auto ra = reproduction_test(st, {3}, half);
    const auto rb = reproduction_test(st, {3}, full);
    const double wa = ra.fitted.at("per_degree")[0].at("max_residual").get<double>();
    const double ta = ra.fitted.at("per_degree")[0].at("tail_estimate").get<double>();
    const double wb = rb.fitted.at("per_degree")[0].at("max_residual").get<double>();
    CHECK(wb <= wa + ta);
}

TEST_CASE("caller-supplied probe points override the canonical set") {
    const auto st = build_stencil({1.0, 1, 1}, 1);
    LatticeSumSettings s;
    s.R = 2000;
    const std::vector<std::array<double, 3>> pts = {{0.5, 0.0, 0.0}};
    const auto rep = reproduction_test(st, {0, 1}, s, pts);
    CHECK(rep.config.at("points").get<int>() == 1);
    REQUIRE(rep.raw.size() == 2);
    CHECK(rep.raw[0].at("x1").get<double>() == 0.5);
}

TEST_CASE("conjecture probe on the matched pair lands indistinguishable") {
    // n = 1: the proven saturation 2d and the candidate n - 1 + 2d coincide,
    // so the probe can only report that the data cannot separate them
    const auto st = build_stencil({1.0, 1, 1}, 1);
    LatticeSumSettings s;
    s.R = 4000;
    s.tail_tolerance = 1.0;
    const auto rep = conjecture_probe(st, "sinexp", {1.0, 0.5, 0.25, 0.125, 0.0625}, s);
    CHECK(rep.experiment == "conjecture_probe");
    const auto& orders = rep.fitted.at("orders");
    CHECK(orders.at("proven_saturation").get<int>() == 2);
    CHECK(orders.at("candidate_saturation").get<int>() == 2);
    CHECK(orders.at("verdict").get<std::string>() == "indistinguishable");
    CHECK(self_consistent(rep));
}

TEST_CASE("report serialization") {
    const auto rep = pd_demo({1.0, 1, 1}, 1.0);
    const auto j = rep.to_json();
    CHECK(j.size() == 6);
    for (const char* key : {"experiment", "config", "raw", "fitted", "checks", "provenance"})
        CHECK(j.contains(key));

    const std::string csv = rep.to_csv();
    // header = keys of the first raw row, alphabetical; floats at 17 digits
    CHECK(csv.rfind("diag,lambda1_analytic,lambda1_solver,lambda2_analytic,"
                    "lambda2_solver,offdiag,r\n", 0) == 0);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", rep.raw[0].at("offdiag").get<double>());
    CHECK(csv.find(buf) != std::string::npos);
    size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 2);

    CHECK(ExperimentReport{}.to_csv().empty());
}

TEST_CASE("partition of unity deviation is a small tail") {
    const auto st = build_stencil({1.0, 1, 1}, 1);
    const std::vector<std::array<double, 3>> xs = {{0.37, 0.0, 0.0}, {0.81, 0.0, 0.0}};
    const auto dev = pou_deviation(st, xs, 2000);
    REQUIRE(dev.size() == 2);
    for (double v : dev) {
        CHECK(v >= 0.0);
        CHECK(v < 1e-5);
    }
    CHECK(pou_deviation(st, xs, 2000) == dev);
}
