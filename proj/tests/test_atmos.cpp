#include "doctest.h"

#include <cmath>
#include <numeric>

#include "dgg/atmos.hpp"
#include "dgg/dist.hpp"
#include "dgg/errors.hpp"

using namespace dgg::atmos;

namespace {

// Brute-force oracle for the best rational approximation.
Rational brute_best(double ratio, long long max_den) {
    Rational best{0, 1};
    double err = 1e300;
    for (long long q = 1; q <= max_den; ++q) {
        const long long p = std::llround(ratio * q);
        for (long long pp : {p - 1, p, p + 1}) {
            if (pp < 1) // the library never returns a zero numerator
                continue;
            const double e = std::abs(ratio - double(pp) / double(q));
            if (e < err - 1e-15) {
                err = e;
                best = {pp, q};
            }
        }
    }
    const long long g = std::gcd(best.p, best.q);
    return {best.p / g, best.q / g};
}

} // namespace

TEST_SUITE("atmos") {

TEST_CASE("best_rational is exhaustively optimal for denominators <= 50") {
    for (double r : {3.14159265358979, 0.7638, 2.43823, 0.08119, 17.0 / 7.0,
                     1.0000001, 12.999}) {
        for (long long md : {3LL, 8LL, 16LL, 50LL}) {
            const Rational got = brute_best(r, md);
            const Rational ours = best_rational(r, md);
            const double eg = std::abs(r - double(got.p) / double(got.q));
            const double eo = std::abs(r - double(ours.p) / double(ours.q));
            CHECK(eo <= eg + 1e-15);
            CHECK(ours.q <= md);
            CHECK(std::gcd(ours.p, ours.q) == 1);
        }
    }
}

TEST_CASE("rational_ratio prefers the smallest convergent inside tolerance") {
    // 2.4382... admits 17/7 (err 4e-3) well before larger denominators
    const Rational r = rational_ratio(1.8622 / 0.7638, 16);
    CHECK(r.p == 17);
    CHECK(r.q == 7);
    // exact small ratios come back verbatim
    const Rational e = rational_ratio(1.5, 16);
    CHECK(e.p == 3);
    CHECK(e.q == 2);
}

TEST_CASE("solve_shape inverts the normalized variance") {
    for (double g : {0.4, 1.0, 2.3}) {
        for (double m : {0.6, 2.0, 11.0}) {
            const double var = dgg::dist::gg_normalized_variance(m, g);
            CHECK(solve_shape(var, m) == doctest::Approx(g).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(solve_shape(1e-30, 0.5), dgg::NoSolutionError);
}

TEST_CASE("omega_from gives the factor unit mean") {
    for (double g : {0.42, 1.0, 2.13}) {
        for (double m : {0.5, 1.8, 34.24}) {
            const dgg::dist::GGParams p{g, m, omega_from(m, g)};
            CHECK(dgg::dist::gg_moment(p, 1.0) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("worked plane-wave parameter sets") {
    // moderate fluctuations, l0/R0 = 0.5, m = (0.55, 2.35)
    const AtmosphericConditions cond{WaveType::Plane, 2.0, 0.5};
    const auto p = derive_params(cond, {0.55, 2.35});
    CHECK(p.large.gamma == doctest::Approx(2.1690).epsilon(2e-2));
    CHECK(p.small.gamma == doctest::Approx(0.8530).epsilon(2e-2));
    CHECK(p.large.omega == doctest::Approx(1.5793).epsilon(2e-2));
    CHECK(p.small.omega == doctest::Approx(0.9671).epsilon(2e-2));
    CHECK(p.p == 28);
    CHECK(p.q == 11);
}

TEST_CASE("worked spherical-wave parameter sets") {
    // weak fluctuations without inner scale reduce to Gamma-Gamma
    const auto weak =
        derive_params({WaveType::Spherical, 0.06, 0.0}, {34.24, 32.79});
    CHECK(weak.large.gamma == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(weak.large.omega == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(weak.p == 1);
    CHECK(weak.q == 1);
    // moderate fluctuations, m = (2.65, 0.85)
    const auto mod =
        derive_params({WaveType::Spherical, 2.0, 0.0}, {2.65, 0.85});
    CHECK(mod.large.gamma == doctest::Approx(0.9135).epsilon(2e-2));
    CHECK(mod.small.gamma == doctest::Approx(1.4385).epsilon(2e-2));
    CHECK(mod.p == 7);
    CHECK(mod.q == 11);
}

TEST_CASE("snap makes the ratio exact") {
    const auto p =
        derive_params({WaveType::Plane, 25.0, 1.0}, {0.5, 1.8}, 16, true);
    CHECK(p.large.gamma / p.small.gamma ==
          doctest::Approx(double(p.p) / double(p.q)).epsilon(1e-14));
}

TEST_CASE("input validation") {
    CHECK_THROWS(AtmosphericConditions(WaveType::Plane, -1.0, 0.5));
    CHECK_THROWS(plane_wave_variances({WaveType::Plane, 1.0, 0.0}));
    CHECK_THROWS(ShapeSeed(0.3, 1.0));
}

} // TEST_SUITE
