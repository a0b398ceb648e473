#include "dgg/dist.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dgg/detail/ladders.hpp"
#include "dgg/errors.hpp"
#include "dgg/meijerg.hpp"
#include "dgg/quadrature.hpp"
#include "dgg/specfun.hpp"

namespace dgg::dist {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

specfun::QuadratureConfig dist_quad_config() {
    specfun::QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-10;
    cfg.max_subdivisions = 2000;
    return cfg;
}

} // namespace

double log_gg_pdf(double x, const GGParams& g) {
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double lx = std::log(x);
    return std::log(g.gamma) + (g.m * g.gamma - 1.0) * lx -
           (g.m / g.omega) * std::exp(g.gamma * lx) -
           g.m * std::log(g.omega / g.m) - specfun::log_gamma(g.m);
}

GGParams::GGParams(double gamma_, double m_, double omega_)
    : gamma(gamma_), m(m_), omega(omega_) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("GGParams: gamma must be positive");
    if (!(m >= 0.5) || !std::isfinite(m))
        throw std::invalid_argument("GGParams: m must be >= 0.5");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("GGParams: omega must be positive");
}

DoubleGGParams::DoubleGGParams(GGParams large_, GGParams small_, long long p_,
                               long long q_, double ratio_tol, bool snap)
    : large(large_), small(small_), p(p_), q(q_) {
    if (p < 1 || q < 1)
        throw std::invalid_argument("DoubleGGParams: p, q must be >= 1");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("DoubleGGParams: p/q must be in lowest terms");
    const double target = static_cast<double>(p) / static_cast<double>(q);
    const double actual = large.gamma / small.gamma;
    ratio_error = std::abs(actual - target) / target;
    if (snap) {
        large.gamma = target * small.gamma;
        ratio_error = 0.0;
    } else if (ratio_error > ratio_tol) {
        throw std::invalid_argument(
            "DoubleGGParams: gamma ratio deviates from p/q beyond tolerance");
    }
}

double gg_pdf(double x, const GGParams& g) {
    if (x < 0.0)
        throw std::domain_error("gg_pdf: x must be non-negative");
    if (x == 0.0)
        return g.m * g.gamma > 1.0 ? 0.0
               : g.m * g.gamma == 1.0
                   ? std::exp(log_gg_pdf(std::numeric_limits<double>::min(), g))
                   : std::numeric_limits<double>::infinity();
    return std::exp(log_gg_pdf(x, g));
}

double gg_cdf(double x, const GGParams& g) {
    if (x < 0.0)
        throw std::domain_error("gg_cdf: x must be non-negative");
    if (x == 0.0)
        return 0.0;
    return specfun::gamma_p(g.m, (g.m / g.omega) * std::pow(x, g.gamma));
}

double gg_moment(const GGParams& g, double order) {
    const double shift = g.m + order / g.gamma;
    if (shift <= 0.0)
        throw std::domain_error("gg_moment: moment does not exist");
    return std::exp((order / g.gamma) * std::log(g.omega / g.m) +
                    specfun::log_gamma(shift) - specfun::log_gamma(g.m));
}

namespace {

// E[h(ln t)] for t ~ Gamma(m, 1) over an explicit window around the
// mode; blind semi-infinite panels lose the peak once m is large and
// the density becomes a relative-width-1/sqrt(m) spike.
double gamma_log_average(double m, const std::function<double(double)>& h) {
    auto cfg = dist_quad_config();
    auto integrand = [&](double t) {
        const double l = (m - 1.0) * std::log(t) - t - specfun::log_gamma(m);
        return std::isfinite(l) ? h(std::log(t)) * std::exp(l) : 0.0;
    };
    // the left tail below the window carries < e^{-1000} of the mass
    const double lo = std::max(1e-300, m - 50.0 * std::sqrt(m) - 50.0);
    const double hi = m + 50.0 * std::sqrt(m) + 745.0;
    double total = 0.0, prev = lo;
    for (double k : {0.25 * m, m, hi}) {
        if (k <= prev)
            continue;
        total += specfun::integrate(integrand, prev, k, cfg);
        prev = k;
    }
    return total;
}

} // namespace

double gg_log_moment(const GGParams& g) {
    // ln x = (ln t + ln(omega/m)) / gamma with t = (m/omega) x^gamma
    const double shift = std::log(g.omega / g.m);
    return (gamma_log_average(g.m, [](double lt) { return lt; }) + shift) /
           g.gamma;
}

double gg_log_variance(const GGParams& g) {
    const double elt = gamma_log_average(g.m, [](double lt) { return lt; });
    const double elt2 = gamma_log_average(
        g.m, [&](double lt) { return (lt - elt) * (lt - elt); });
    return elt2 / (g.gamma * g.gamma);
}

double gg_normalized_variance(double m, double gamma) {
    const double e = specfun::log_gamma(m + 2.0 / gamma) + specfun::log_gamma(m) -
                     2.0 * specfun::log_gamma(m + 1.0 / gamma);
    if (e > 700.0)
        return std::numeric_limits<double>::max();
    return std::expm1(e);
}

double scintillation_index(const DoubleGGParams& p) {
    const double vx = gg_normalized_variance(p.large.m, p.large.gamma);
    const double vy = gg_normalized_variance(p.small.m, p.small.gamma);
    return (1.0 + vx) * (1.0 + vy) - 1.0;
}

double dgg_pdf(double I, const DoubleGGParams& p, EvalPath path) {
    if (I < 0.0)
        throw std::domain_error("dgg_pdf: I must be non-negative");
    if (I < 1e-9)
        return 0.0;
    if (path == EvalPath::Quadrature) {
        auto cfg = dist_quad_config();
        auto integrand = [&](double y) {
            const double l = log_gg_pdf(I / y, p.large) + log_gg_pdf(y, p.small) -
                             std::log(y);
            return std::isfinite(l) ? std::exp(l) : 0.0;
        };
        return specfun::integrate_semi_infinite(integrand, cfg);
    }

    const double m1 = p.large.m, m2 = p.small.m;
    const double g2 = p.small.gamma;
    const auto pp = static_cast<double>(p.p);
    const auto qq = static_cast<double>(p.q);

    const double log_z = pp * std::log(p.small.omega) - pp * g2 * std::log(I) +
                         pp * std::log(pp) + qq * std::log(qq) +
                         qq * std::log(p.large.omega) - qq * std::log(m1) -
                         pp * std::log(m2);

    specfun::MeijerGSpec spec;
    spec.m_idx = 0;
    spec.n_idx = p.p + p.q;
    spec.a_params = detail::delta_ladder(p.q, 1.0 - m1);
    detail::append(spec.a_params, detail::delta_ladder(p.p, 1.0 - m2));

    const double log_c = std::log(g2 * pp) + (m2 - 0.5) * std::log(pp) +
                         (m1 - 0.5) * std::log(qq) +
                         (1.0 - 0.5 * (pp + qq)) * std::log(kTwoPi) -
                         specfun::log_gamma(m1) - specfun::log_gamma(m2) -
                         std::log(I);
    return std::exp(log_c) * specfun::meijer_g(spec, std::exp(log_z));
}

double dgg_cdf(double I, const DoubleGGParams& p, EvalPath path) {
    if (I < 0.0)
        throw std::domain_error("dgg_cdf: I must be non-negative");
    if (I == 0.0)
        return 0.0;
    if (path == EvalPath::Quadrature) {
        auto cfg = dist_quad_config();
        auto integrand = [&](double y) {
            const double lf = log_gg_pdf(y, p.small);
            if (!std::isfinite(lf))
                return 0.0;
            return std::exp(lf) * gg_cdf(I / y, p.large);
        };
        const double v = specfun::integrate_semi_infinite(integrand, cfg);
        return std::min(1.0, std::max(0.0, v));
    }

    const double m1 = p.large.m, m2 = p.small.m;
    const auto pp = static_cast<double>(p.p);
    const auto qq = static_cast<double>(p.q);

    const double log_z = pp * p.small.gamma * std::log(I) -
                         pp * std::log(p.small.omega) + qq * std::log(m1) +
                         pp * std::log(m2) - pp * std::log(pp) -
                         qq * std::log(qq) - qq * std::log(p.large.omega);

    specfun::MeijerGSpec spec;
    spec.m_idx = p.p + p.q;
    spec.n_idx = 1;
    spec.a_params = {1.0};
    spec.b_params = detail::delta_ladder(p.q, m1);
    detail::append(spec.b_params, detail::delta_ladder(p.p, m2));
    spec.b_params.push_back(0.0);

    const double log_c = (m2 - 0.5) * std::log(pp) + (m1 - 0.5) * std::log(qq) +
                         (1.0 - 0.5 * (pp + qq)) * std::log(kTwoPi) -
                         specfun::log_gamma(m1) - specfun::log_gamma(m2);
    const double v = std::exp(log_c) * specfun::meijer_g(spec, std::exp(log_z));
    return std::min(1.0, std::max(0.0, v));
}

SpecialCase reduce_special_case(const DoubleGGParams& p) {
    constexpr double tol = 1e-9;
    auto near = [](double a, double b) { return std::abs(a - b) <= tol; };
    const bool unit_gamma = near(p.large.gamma, 1.0) && near(p.small.gamma, 1.0);
    const bool unit_omega = near(p.large.omega, 1.0) && near(p.small.omega, 1.0);
    if (unit_gamma && unit_omega && near(p.small.m, 1.0))
        return SpecialCase::K;
    if (unit_gamma && unit_omega)
        return SpecialCase::GammaGamma;
    if (near(p.large.m, 1.0) && near(p.small.m, 1.0))
        return SpecialCase::DoubleWeibull;
    return SpecialCase::None;
}

std::vector<double> sample(const DoubleGGParams& p, RngStream& rng,
                           std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gx = rng.next_gamma(p.large.m, p.large.omega / p.large.m);
        const double gy = rng.next_gamma(p.small.m, p.small.omega / p.small.m);
        out.push_back(std::pow(gx, 1.0 / p.large.gamma) *
                      std::pow(gy, 1.0 / p.small.gamma));
    }
    return out;
}

} // namespace dgg::dist
