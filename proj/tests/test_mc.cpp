#include "doctest.h"

#include <cmath>

#include "dgg/atmos.hpp"
#include "dgg/mc.hpp"
#include "dgg/perf.hpp"

using namespace dgg;

namespace {

dist::DoubleGGParams moderate_params() {
    return atmos::derive_params({atmos::WaveType::Spherical, 2.0, 0.0},
                                {2.65, 0.85});
}

} // namespace

TEST_SUITE("mc") {

TEST_CASE("estimates are reproducible for a fixed seed") {
    const auto p = moderate_params();
    const mc::McConfig cfg{200000, 77, 65536};
    const auto a = mc::estimate_ber_siso(p, 100.0, cfg);
    const auto b = mc::estimate_ber_siso(p, 100.0, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.n == 200000);
    // a different seed moves the estimate but stays within joint error
    mc::McConfig other = cfg;
    other.seed = 78;
    const auto c = mc::estimate_ber_siso(p, 100.0, other);
    CHECK(c.mean != a.mean);
    CHECK(std::abs(c.mean - a.mean) <
          4.0 * std::hypot(a.std_error, c.std_error));
}

TEST_CASE("batch boundary does not change the sample count") {
    const auto p = moderate_params();
    const mc::McConfig cfg{65536 + 123, 5, 65536};
    CHECK(mc::estimate_outage(p, 100.0, 1.0, cfg).n == 65536 + 123);
}

TEST_CASE("BER estimator agrees with the quadrature curve") {
    const auto p = moderate_params();
    const mc::McConfig cfg{400000, 9, 65536};
    for (double db : {10.0, 25.0}) {
        const double lin = std::pow(10.0, db / 10.0);
        const auto e = mc::estimate_ber_siso(p, lin, cfg);
        const double truth =
            perf::ber_siso(p, {lin, 1.0}, perf::BerPath::Quadrature);
        CHECK(std::abs(e.mean - truth) < 3.0 * e.std_error);
    }
}

TEST_CASE("outage estimator agrees with the cdf") {
    const auto p = moderate_params();
    const mc::McConfig cfg{400000, 11, 65536};
    const double lin = std::pow(10.0, 2.0);
    const auto e = mc::estimate_outage(p, lin, 1.0, cfg);
    const double truth = perf::outage_probability(p, {lin, 1.0});
    CHECK(std::abs(e.mean - truth) < 3.0 * e.std_error);
}

TEST_CASE("SIMO estimator with one branch matches the SISO estimator's target") {
    // exact-Q single-branch combiner is the plain conditional BER
    const auto p = moderate_params();
    const mc::McConfig cfg{400000, 13, 65536};
    const double lin = std::pow(10.0, 1.5);
    const auto simo = mc::estimate_ber_simo({p}, lin, cfg);
    const double truth =
        perf::ber_siso(p, {lin, 1.0}, perf::BerPath::Quadrature);
    CHECK(std::abs(simo.mean - truth) < 3.0 * simo.std_error);
}

TEST_CASE("more branches help") {
    const auto p = moderate_params();
    const mc::McConfig cfg{200000, 21, 65536};
    const double lin = std::pow(10.0, 2.5);
    const double one = mc::estimate_ber_simo({p}, lin, cfg).mean;
    const double two = mc::estimate_ber_simo({p, p}, lin, cfg).mean;
    const double three = mc::estimate_ber_simo({p, p, p}, lin, cfg).mean;
    CHECK(two < one);
    CHECK(three < two);
}

} // TEST_SUITE
