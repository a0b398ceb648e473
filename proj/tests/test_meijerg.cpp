#include "doctest.h"

#include <cmath>

#include "dgg/errors.hpp"
#include "dgg/meijerg.hpp"

using namespace dgg::specfun;

TEST_SUITE("meijerg") {

TEST_CASE("G^{1,0}_{0,1}(x | -; 0) = exp(-x) across four decades") {
    const MeijerGSpec spec{1, 0, {}, {0.0}};
    for (double x = 1e-2; x < 2e2; x *= 3.1623)
        CHECK(meijer_g(spec, x) ==
              doctest::Approx(std::exp(-x)).epsilon(1e-10));
}

TEST_CASE("G^{2,0}_{0,2} is the modified Bessel K form") {
    // G^{2,0}_{0,2}(x | -; a, b) = 2 x^{(a+b)/2} K_{a-b}(2 sqrt(x))
    for (double nu : {0.3, 1.0, 2.7}) {
        const MeijerGSpec spec{2, 0, {}, {0.5 * nu, -0.5 * nu}};
        for (double x : {0.04, 0.5, 2.0, 9.0}) {
            const double oracle = 2.0 * std::cyl_bessel_k(nu, 2.0 * std::sqrt(x));
            CHECK(meijer_g(spec, x) == doctest::Approx(oracle).epsilon(1e-8));
        }
    }
}

TEST_CASE("reflection identity z -> 1/z") {
    const MeijerGSpec spec{2, 1, {0.3}, {0.9, 0.1}};
    const MeijerGSpec mirrored = reflect(spec);
    for (double x : {0.2, 1.7, 6.0})
        CHECK(meijer_g(spec, x) ==
              doctest::Approx(meijer_g(mirrored, 1.0 / x)).epsilon(1e-9));
}

TEST_CASE("G^{1,1}_{1,1} recovers the binomial kernel") {
    // G^{1,1}_{1,1}(x | 1-a; 0) = Gamma(a) (1+x)^{-a}
    for (double a : {0.7, 1.9}) {
        const MeijerGSpec spec{1, 1, {1.0 - a}, {0.0}};
        for (double x : {0.1, 0.9, 4.0}) {
            const double oracle = std::tgamma(a) * std::pow(1.0 + x, -a);
            CHECK(meijer_g(spec, x) == doctest::Approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("coincident pole families are rejected") {
    // b-head and a-head leave no separating strip
    const MeijerGSpec spec{1, 1, {3.0}, {1.0}};
    CHECK_THROWS_AS(meijer_g(spec, 1.0), dgg::UnsupportedSpecError);
}

} // TEST_SUITE
