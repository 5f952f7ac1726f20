#include <cmath>

#include <doctest.h>
#include <gmq/errors.hpp>
#include <gmq/fourier.hpp>
#include <gmq/oracle.hpp>

using namespace gmq;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("regularized quadrature agrees with the residue series") {
    struct Row {
        int n, d;
        double s, value;
    };
    const Row rows[] = {
        {1, 1, 0.5, -6.6257644800132035748},
        {1, 1, 1.0, -1.2038144603944691495},
        {1, 1, 2.0, -0.13986588181652242728},
        {1, 3, 0.5, 193.85072958676547844},
        {1, 3, 1.0, 13.429826498967706506},
        {1, 3, 2.0, 1.3991067604371490177},
        {3, 1, 0.5, -379.51361884532498661},
        {3, 1, 1.0, -20.418327788876817213},
        {3, 1, 2.0, -0.79720978072147008963},
        {3, 3, 0.5, 19311.53977835625413},
        {3, 3, 1.0, 307.07656404569525421},
        {3, 3, 2.0, 6.7207986043765348389},
    };
    for (const auto& r : rows) {
        CAPTURE(r.n);
        CAPTURE(r.d);
        CAPTURE(r.s);
        CHECK(phi_hat_oracle({1.0, r.d, r.n}, r.s, 1e-9)
              == doctest::Approx(r.value).epsilon(1e-8));
    }
}

TEST_CASE("oracle is exact in the polyharmonic limit") {
    // c=0 closed forms: pure power transforms
    for (double s : {0.5, 1.0, 3.0}) {
        CHECK(phi_hat_oracle({0.0, 1, 1}, s, 1e-10)
              == doctest::Approx(-2.0 / (s * s)).epsilon(1e-9));
        CHECK(phi_hat_oracle({0.0, 3, 1}, s, 1e-10)
              == doctest::Approx(12.0 / std::pow(s, 4)).epsilon(1e-9));
        CHECK(phi_hat_oracle({0.0, 1, 3}, s, 1e-10)
              == doctest::Approx(-8.0 * kPi / std::pow(s, 4)).epsilon(1e-9));
    }
}

TEST_CASE("oracle is restricted to odd dimensions with a radial reduction") {
    CHECK_THROWS_AS(phi_hat_oracle({1.0, 1, 2}, 1.0, 1e-8), invalid_parameter);
    CHECK_THROWS_AS(phi_hat_oracle({1.0, 1, 5}, 1.0, 1e-8), invalid_parameter);
}

TEST_CASE("oracle input validation") {
    CHECK_THROWS_AS(phi_hat_oracle({1.0, 1, 1}, 0.0, 1e-8), invalid_parameter);
    CHECK_THROWS_AS(phi_hat_oracle({1.0, 1, 1}, -1.0, 1e-8), invalid_parameter);
}
