#include "doctest.h"

#include <cmath>
#include <complex>

#include "dgg/quadrature.hpp"
#include "dgg/specfun.hpp"

using namespace dgg::specfun;

namespace {

// Independent erfc oracle: modified-Lentz continued fraction for the
// upper incomplete gamma, erfc(x) = Gamma(1/2, x^2)/sqrt(pi).
double erfc_cf(double x) {
    const double a = 0.5, x2 = x * x;
    double b = x2 + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i < 300; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300)
            d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300)
            c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            break;
    }
    // Gamma(1/2, x^2) = e^{-x^2} x^{2a} h with a = 1/2
    return std::exp(-x2) * x * h / std::sqrt(std::acos(-1.0));
}

} // namespace

TEST_SUITE("specfun") {

TEST_CASE("erfc against continued-fraction oracle") {
    for (double x : {0.5, 1.0, 2.0, 3.5, 5.0, 8.0})
        CHECK(dgg::specfun::erfc(x) == doctest::Approx(erfc_cf(x)).epsilon(1e-12));
    CHECK(dgg::specfun::erfc(0.0) == doctest::Approx(1.0));
    CHECK(dgg::specfun::erfc(-1.5) == doctest::Approx(2.0 - dgg::specfun::erfc(1.5)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches factorials and duplication") {
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    // Legendre duplication at z = 3.3
    const double z = 3.3;
    const double lhs = log_gamma(2.0 * z);
    const double rhs = log_gamma(z) + log_gamma(z + 0.5) +
                       (2.0 * z - 1.0) * std::log(2.0) -
                       0.5 * std::log(std::acos(-1.0));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("gamma_p basic identities") {
    // P(1, x) = 1 - e^{-x}
    for (double x : {0.1, 1.0, 4.0})
        CHECK(gamma_p(1.0, x) ==
              doctest::Approx(-std::expm1(-x)).epsilon(1e-13));
    // recurrence P(a+1,x) = P(a,x) - x^a e^{-x}/Gamma(a+1)
    const double a = 2.7, x = 3.1;
    CHECK(gamma_p(a + 1.0, x) ==
          doctest::Approx(gamma_p(a, x) - std::exp(a * std::log(x) - x -
                                                   log_gamma(a + 1.0)))
              .epsilon(1e-12));
}

TEST_CASE("log_gamma_complex reflection identity") {
    using cplx = std::complex<double>;
    const double pi = std::acos(-1.0);
    for (cplx z : {cplx(0.3, 1.2), cplx(-0.7, 0.4), cplx(-1.2, -2.0),
                   cplx(0.25, -0.9)}) {
        const cplx lhs =
            std::exp(log_gamma_complex(z) + log_gamma_complex(1.0 - z));
        const cplx rhs = pi / std::sin(pi * z);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-11);
    }
    // real axis agrees with the real routine
    for (double x : {0.1, 1.7, 11.5})
        CHECK(log_gamma_complex(x).real() ==
              doctest::Approx(log_gamma(x)).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature on finite intervals") {
    auto sq = [](double x) { return x * x; };
    CHECK(integrate(sq, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    auto peaked = [](double x) { return 1.0 / (1e-6 + (x - 0.5) * (x - 0.5)); };
    const double truth = 2.0 * std::atan(0.5 / 1e-3) / 1e-3;
    CHECK(integrate(peaked, 0.0, 1.0) == doctest::Approx(truth).epsilon(1e-9));
}

TEST_CASE("semi-infinite quadrature") {
    auto decay = [](double x) { return std::exp(-x); };
    CHECK(integrate_semi_infinite(decay) == doctest::Approx(1.0).epsilon(1e-10));
    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(integrate_semi_infinite(gauss) ==
          doctest::Approx(0.5 * std::sqrt(std::acos(-1.0))).epsilon(1e-10));
}

} // TEST_SUITE
