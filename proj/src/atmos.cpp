#include "dgg/atmos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dgg/errors.hpp"
#include "dgg/specfun.hpp"

namespace dgg::atmos {

namespace {

// eta_l = 10.89 (R0/l0)^2. The linear form printed alongside Eq. (12)
// does not reproduce any of the worked parameter sets; the squared form
// reproduces all of them.
double eta_l(double inner_scale_ratio) {
    const double r = 1.0 / inner_scale_ratio; // R0/l0
    return 10.89 * r * r;
}

double small_scale_variance(double rytov_like) {
    return std::expm1(0.51 * rytov_like /
                      std::pow(1.0 + 0.69 * std::pow(rytov_like, 1.2),
                               5.0 / 6.0));
}

// Spherical-wave weak-fluctuation scintillation with finite inner scale,
// used to convert sigma_Rytov^2 into beta_0^2.
double sigma_tilde_sq(double inner_scale_ratio) {
    const double e = eta_l(inner_scale_ratio);
    const double at = std::atan(e / 3.0);
    return 3.86 *
           (std::pow(1.0 + 9.0 / (e * e), 11.0 / 12.0) *
                (std::sin(11.0 / 6.0 * at) +
                 2.61 / std::pow(9.0 + e * e, 0.25) * std::sin(4.0 / 3.0 * at) -
                 0.518 / std::pow(9.0 + e * e, 7.0 / 24.0) *
                     std::sin(1.25 * at)) -
            8.75 * std::pow(e, -5.0 / 6.0));
}

std::vector<Rational> convergents(double x, long long max_den) {
    std::vector<Rational> out;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0; // p_{-2}/q_{-2}, p_{-1}/q_{-1}
    double r = x;
    for (int i = 0; i < 64; ++i) {
        const double fa = std::floor(r);
        if (fa > 4e18)
            break;
        const auto a = static_cast<long long>(fa);
        const long long h = a * h1 + h0;
        const long long k = a * k1 + k0;
        if (k > max_den)
            break;
        if (h > 0)
            out.push_back({h, k});
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        const double frac = r - fa;
        if (frac < 1e-12)
            break;
        r = 1.0 / frac;
    }
    return out;
}

} // namespace

AtmosphericConditions::AtmosphericConditions(WaveType w, double rytov,
                                             double l0_over_r0)
    : wave(w), rytov_var(rytov), inner_scale_ratio(l0_over_r0) {
    if (!(rytov_var >= 0.0) || !std::isfinite(rytov_var))
        throw std::invalid_argument("AtmosphericConditions: rytov_var < 0");
    if (!(inner_scale_ratio >= 0.0) || !std::isfinite(inner_scale_ratio))
        throw std::invalid_argument(
            "AtmosphericConditions: inner_scale_ratio < 0");
}

ShapeSeed::ShapeSeed(double m1_, double m2_) : m1(m1_), m2(m2_) {
    if (!(m1 >= 0.5) || !(m2 >= 0.5))
        throw std::invalid_argument("ShapeSeed: m must be >= 0.5");
}

ScaleVariances plane_wave_variances(const AtmosphericConditions& cond) {
    if (cond.wave != WaveType::Plane)
        throw std::invalid_argument("plane_wave_variances: wave type mismatch");
    if (cond.inner_scale_ratio <= 0.0)
        throw std::domain_error(
            "plane_wave_variances: inner_scale_ratio must be positive");
    const double s2 = cond.rytov_var;
    if (s2 == 0.0)
        return {0.0, 0.0};
    const double e = eta_l(cond.inner_scale_ratio);
    const double d = 2.61 + e + 0.45 * s2 * std::pow(e, 7.0 / 6.0);
    const double sx =
        std::expm1(0.16 * s2 * std::pow(2.61 * e / d, 7.0 / 6.0) *
                   (1.0 + 1.753 * std::sqrt(2.61 / d) -
                    0.252 * std::pow(2.61 / d, 7.0 / 12.0)));
    return {sx, small_scale_variance(s2)};
}

ScaleVariances spherical_wave_variances(const AtmosphericConditions& cond) {
    if (cond.wave != WaveType::Spherical)
        throw std::invalid_argument(
            "spherical_wave_variances: wave type mismatch");
    if (cond.rytov_var == 0.0)
        return {0.0, 0.0};
    if (cond.inner_scale_ratio == 0.0) {
        // Quoted Rytov variance is already beta_0^2 in this regime.
        const double b2 = cond.rytov_var;
        const double sx = std::expm1(
            0.49 * b2 / std::pow(1.0 + 0.56 * std::pow(b2, 1.2), 7.0 / 6.0));
        return {sx, small_scale_variance(b2)};
    }
    const double b2 = cond.rytov_var / sigma_tilde_sq(cond.inner_scale_ratio);
    const double e = eta_l(cond.inner_scale_ratio);
    const double d = 8.56 + e + 0.195 * b2 * std::pow(e, 7.0 / 6.0);
    const double sx =
        std::expm1(0.04 * b2 * std::pow(8.56 * e / d, 7.0 / 6.0) *
                   (1.0 + 1.753 * std::sqrt(8.56 / d) -
                    0.252 * std::pow(8.56 / d, 7.0 / 12.0)));
    return {sx, small_scale_variance(b2)};
}

ScaleVariances variances(const AtmosphericConditions& cond) {
    return cond.wave == WaveType::Plane ? plane_wave_variances(cond)
                                        : spherical_wave_variances(cond);
}

double solve_shape(double sigma_sq, double m) {
    if (!(sigma_sq > 0.0))
        throw std::domain_error("solve_shape: sigma_sq must be positive");
    auto f = [&](double g) {
        return dist::gg_normalized_variance(m, g) - sigma_sq;
    };
    double lo = 1e-3, hi = 100.0;
    double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0)
        throw NoSolutionError("solve_shape: variance unreachable for given m");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double omega_from(double m, double gamma) {
    return std::exp(gamma * (specfun::log_gamma(m) -
                             specfun::log_gamma(m + 1.0 / gamma))) *
           m;
}

Rational best_rational(double ratio, long long max_den) {
    if (!(ratio > 0.0) || max_den < 1)
        throw std::domain_error("best_rational: bad inputs");
    Rational best{0, 1};
    double best_err = std::numeric_limits<double>::infinity();
    auto consider = [&](long long p, long long q) {
        if (p < 1 || q < 1 || q > max_den)
            return;
        const long long g = std::gcd(p, q);
        p /= g;
        q /= g;
        const double err =
            std::abs(static_cast<double>(p) / static_cast<double>(q) - ratio);
        if (err < best_err || (err == best_err && q < best.q)) {
            best = {p, q};
            best_err = err;
        }
    };
    // Convergents plus the semiconvergents between consecutive ones cover
    // every best approximation.
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = ratio;
    for (int i = 0; i < 64; ++i) {
        const double fa = std::floor(r);
        if (fa > 4e18)
            break;
        const auto a = static_cast<long long>(fa);
        // Only denominators <= max_den can matter; cap j accordingly.
        const long long jmax =
            k1 > 0 ? std::min(a, (max_den - k0) / k1) : a;
        for (long long j = k1 > 0 ? 1 : a; j <= jmax; ++j)
            consider(j * h1 + h0, j * k1 + k0);
        const long long h = a * h1 + h0;
        const long long k = a * k1 + k0;
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        if (k1 > max_den)
            break;
        const double frac = r - fa;
        if (frac < 1e-12)
            break;
        r = 1.0 / frac;
    }
    if (best.p == 0)
        throw NoSolutionError("best_rational: no candidate found");
    return best;
}

Rational rational_ratio(double ratio, long long max_den) {
    if (!(ratio > 0.0) || max_den < 1)
        throw std::domain_error("rational_ratio: bad inputs");
    constexpr double rel_tol = 5e-3;
    for (const auto& c : convergents(ratio, max_den)) {
        const double approx =
            static_cast<double>(c.p) / static_cast<double>(c.q);
        if (std::abs(approx - ratio) / ratio <= rel_tol)
            return c;
    }
    return best_rational(ratio, max_den);
}

dist::DoubleGGParams derive_params(const AtmosphericConditions& cond,
                                   const ShapeSeed& seed, long long max_den,
                                   bool snap) {
    const ScaleVariances v = variances(cond);
    const double g1 = solve_shape(v.sigma_x_sq, seed.m1);
    const double g2 = solve_shape(v.sigma_y_sq, seed.m2);
    const dist::GGParams large(g1, seed.m1, omega_from(seed.m1, g1));
    const dist::GGParams small(g2, seed.m2, omega_from(seed.m2, g2));
    const Rational r = rational_ratio(g1 / g2, max_den);
    return dist::DoubleGGParams(large, small, r.p, r.q, 2e-2, snap);
}

} // namespace dgg::atmos
