#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dgg/atmos.hpp"
#include "dgg/dist.hpp"
#include "dgg/quadrature.hpp"
#include "dgg/rng.hpp"

using namespace dgg;
using dist::DoubleGGParams;
using dist::GGParams;

namespace {

DoubleGGParams figure_params(int fig, bool snap = false) {
    using atmos::WaveType;
    switch (fig) {
    case 1: return atmos::derive_params({WaveType::Plane, 0.1, 0.5}, {4.0, 4.5}, 16, snap);
    case 2: return atmos::derive_params({WaveType::Plane, 2.0, 0.5}, {0.55, 2.35}, 16, snap);
    case 3: return atmos::derive_params({WaveType::Plane, 25.0, 1.0}, {0.5, 1.8}, 16, snap);
    case 4: return atmos::derive_params({WaveType::Spherical, 0.06, 0.0}, {34.24, 32.79}, 16, snap);
    case 5: return atmos::derive_params({WaveType::Spherical, 2.0, 0.0}, {2.65, 0.85}, 16, snap);
    default: return atmos::derive_params({WaveType::Spherical, 5.0, 1.0}, {3.2, 2.8}, 16, snap);
    }
}

// Bessel-form oracle for the Gamma-Gamma density (gamma_i = Omega_i = 1).
double gamma_gamma_pdf(double I, double m1, double m2) {
    const double s = 0.5 * (m1 + m2);
    return 2.0 * std::pow(m1 * m2, s) * std::pow(I, s - 1.0) *
           std::cyl_bessel_k(std::abs(m1 - m2), 2.0 * std::sqrt(m1 * m2 * I)) /
           (std::tgamma(m1) * std::tgamma(m2));
}

// Independent Double-Weibull product integral (m_i = 1).
double double_weibull_pdf(double I, double g1, double o1, double g2, double o2) {
    auto wb = [](double x, double g, double o) {
        return g / o * std::pow(x, g - 1.0) * std::exp(-std::pow(x, g) / o);
    };
    auto f = [&](double y) { return wb(I / y, g1, o1) * wb(y, g2, o2) / y; };
    return specfun::integrate_semi_infinite(f, {1e-16, 1e-11, 2000});
}

} // namespace

TEST_SUITE("dist") {

TEST_CASE("GG factor: normalization, cdf, moments") {
    const GGParams p{1.31, 2.4, 0.8};
    auto pdf = [&](double x) { return dist::gg_pdf(x, p); };
    CHECK(specfun::integrate_semi_infinite(pdf) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // cdf by quadrature
    auto upto = [&](double t) {
        return specfun::integrate(pdf, 0.0, t);
    };
    for (double t : {0.2, 0.8, 2.0})
        CHECK(dist::gg_cdf(t, p) == doctest::Approx(upto(t)).epsilon(1e-9));
    // second moment against quadrature
    auto x2 = [&](double x) { return x * x * dist::gg_pdf(x, p); };
    CHECK(dist::gg_moment(p, 2.0) ==
          doctest::Approx(specfun::integrate_semi_infinite(x2)).epsilon(1e-9));
}

TEST_CASE("log moments against direct quadrature") {
    const GGParams p{0.76, 1.8, 0.93};
    auto lf = [&](double x) { return std::log(x) * dist::gg_pdf(x, p); };
    const double mu = specfun::integrate_semi_infinite(lf, {1e-16, 1e-11, 2000});
    CHECK(dist::gg_log_moment(p) == doctest::Approx(mu).epsilon(1e-8));
    auto lf2 = [&](double x) {
        const double d = std::log(x) - mu;
        return d * d * dist::gg_pdf(x, p);
    };
    CHECK(dist::gg_log_variance(p) ==
          doctest::Approx(specfun::integrate_semi_infinite(lf2, {1e-16, 1e-11, 2000}))
              .epsilon(1e-8));
}

TEST_CASE("Double GG pdf: Meijer path equals quadrature path") {
    for (int fig : {1, 2, 3, 5}) {
        const auto p = figure_params(fig, true); // snapped: closed form exact
        for (double I : {0.05, 0.3, 1.0, 3.0})
            CHECK(dist::dgg_pdf(I, p, dist::EvalPath::MeijerG) ==
                  doctest::Approx(dist::dgg_pdf(I, p)).epsilon(1e-6));
    }
}

TEST_CASE("Double GG cdf: Meijer path equals quadrature path") {
    for (int fig : {1, 3, 5}) {
        const auto p = figure_params(fig, true);
        for (double I : {0.05, 0.3, 1.0, 3.0})
            CHECK(dist::dgg_cdf(I, p, dist::EvalPath::MeijerG) ==
                  doctest::Approx(dist::dgg_cdf(I, p)).epsilon(1e-6));
    }
}

TEST_CASE("cdf is monotone with correct limits") {
    const auto p = figure_params(6);
    double prev = 0.0;
    for (double I = 0.05; I < 8.0; I += 0.25) {
        const double c = dist::dgg_cdf(I, p);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(dist::dgg_cdf(1e-9, p) < 1e-3);
    CHECK(dist::dgg_cdf(500.0, p) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Gamma-Gamma special case against the Bessel form") {
    const double m1 = 4.2, m2 = 2.0;
    const DoubleGGParams p{{1.0, m1, 1.0}, {1.0, m2, 1.0}, 1, 1};
    CHECK(dist::reduce_special_case(p) == dist::SpecialCase::GammaGamma);
    for (double I = 1e-3; I < 20.0; I *= 2.7)
        CHECK(dist::dgg_pdf(I, p) ==
              doctest::Approx(gamma_gamma_pdf(I, m1, m2)).epsilon(1e-8));
}

TEST_CASE("Double-Weibull special case against the product integral") {
    const double g1 = 1.2, g2 = 0.8;
    const DoubleGGParams p{{g1, 1.0, 0.9}, {g2, 1.0, 1.1}, 3, 2};
    CHECK(dist::reduce_special_case(p) == dist::SpecialCase::DoubleWeibull);
    for (double I : {0.1, 0.5, 1.0, 2.5, 6.0})
        CHECK(dist::dgg_pdf(I, p) ==
              doctest::Approx(double_weibull_pdf(I, g1, 0.9, g2, 1.1))
                  .epsilon(1e-5));
}

TEST_CASE("K-channel special case tag") {
    const DoubleGGParams p{{1.0, 2.3, 1.0}, {1.0, 1.0, 1.0}, 1, 1};
    CHECK(dist::reduce_special_case(p) == dist::SpecialCase::K);
    CHECK(dist::reduce_special_case(figure_params(3)) ==
          dist::SpecialCase::None);
}

TEST_CASE("scintillation index matches the variance product") {
    for (int fig : {2, 5}) {
        const auto p = figure_params(fig);
        auto x2 = [&](double x) { return x * x * dist::dgg_pdf(x, p); };
        const double m2 =
            specfun::integrate_semi_infinite(x2, {1e-14, 1e-10, 2000});
        auto x1 = [&](double x) { return x * dist::dgg_pdf(x, p); };
        const double m1 =
            specfun::integrate_semi_infinite(x1, {1e-14, 1e-10, 2000});
        CHECK(dist::scintillation_index(p) ==
              doctest::Approx(m2 / (m1 * m1) - 1.0).epsilon(1e-6));
    }
}

TEST_CASE("sampling: KS distance against the cdf") {
    const auto p = figure_params(5);
    RngStream rng(1234, 0);
    auto xs = dist::sample(p, rng, 20000);
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double c = dist::dgg_cdf(xs[i], p);
        ks = std::max(ks, std::abs(c - double(i + 1) / double(xs.size())));
        ks = std::max(ks, std::abs(c - double(i) / double(xs.size())));
    }
    // 1% critical value 1.63/sqrt(n)
    CHECK(ks < 1.63 / std::sqrt(double(xs.size())));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(GGParams(0.0, 1.0, 1.0));
    CHECK_THROWS(GGParams(1.0, 0.3, 1.0));
    CHECK_THROWS(DoubleGGParams({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 4, 2));
    // ratio far from p/q is rejected at the default tolerance
    CHECK_THROWS(DoubleGGParams({2.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 3, 1));
}

} // TEST_SUITE
