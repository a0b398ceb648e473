#include "dgg/perf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dgg/atmos.hpp"
#include "dgg/detail/ladders.hpp"
#include "dgg/errors.hpp"
#include "dgg/meijerg.hpp"
#include "dgg/quadrature.hpp"
#include "dgg/specfun.hpp"

namespace dgg::perf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
constexpr double kEpsSep = 1e-6;

using dist::log_gg_pdf;

specfun::QuadratureConfig perf_quad_config() {
    specfun::QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-9;
    cfg.max_subdivisions = 2000;
    return cfg;
}

// Upper truncation where the GG density underflows. In t = (m/omega)
// x^gamma the log-density is m ln t - t + const with its mode at t = m,
// so the usable upper root sits near m plus a ~sqrt(m) spread.
double gg_cutoff(const dist::GGParams& g) {
    const double t_hi = g.m + 40.0 * std::sqrt(g.m) + 745.0;
    return std::pow(t_hi * g.omega / g.m, 1.0 / g.gamma);
}

// Split points tracking the density's own shape: (m/omega) x^gamma = c,
// both near the origin and around the mode t = m.
void gg_knots(const dist::GGParams& g, std::vector<double>* out) {
    for (double c : {1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0, 0.25 * g.m, g.m,
                     4.0 * g.m})
        out->push_back(std::pow(c * g.omega / g.m, 1.0 / g.gamma));
}

double integrate_with_knots(const std::function<double(double)>& f, double hi,
                            std::vector<double> knots,
                            const specfun::QuadratureConfig& cfg) {
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());
    double total = 0.0, lo = 0.0;
    for (double k : knots) {
        if (k <= lo)
            continue;
        if (k > hi)
            break;
        total += specfun::integrate(f, lo, k, cfg);
        lo = k;
    }
    return total;
}

// E[g(I)] over the product channel by nesting the two GG averages;
// avoids quadrature of the (already integral-valued) product density.
// i_scale is the weight's decay scale in I (e.g. 2/sqrt(snr) for the
// erfc weight): high-SNR weights concentrate all the mass far into the
// left tail, where blind adaptive panels miss it.
double product_expectation(const dist::DoubleGGParams& p,
                           const std::function<double(double)>& g,
                           double i_scale) {
    auto cfg = perf_quad_config();
    const double x_hi = gg_cutoff(p.large);
    const double y_hi = gg_cutoff(p.small);
    std::vector<double> y_knots;
    gg_knots(p.small, &y_knots);
    auto outer = [&](double y) {
        const double ly = log_gg_pdf(y, p.small);
        if (!std::isfinite(ly))
            return 0.0;
        auto inner = [&](double x) {
            const double lx = log_gg_pdf(x, p.large);
            return std::isfinite(lx) ? std::exp(lx) * g(x * y) : 0.0;
        };
        std::vector<double> x_knots;
        gg_knots(p.large, &x_knots);
        for (double c : {0.1, 1.0, 10.0, 100.0})
            x_knots.push_back(c * i_scale / y);
        return std::exp(ly) * integrate_with_knots(inner, x_hi, x_knots, cfg);
    };
    return integrate_with_knots(outer, y_hi, y_knots, cfg);
}

} // namespace

LinkQuery::LinkQuery(double avg_snr_, double threshold_snr_, int apertures_)
    : avg_snr(avg_snr_), threshold_snr(threshold_snr_), apertures(apertures_) {
    if (!(avg_snr > 0.0) || !(threshold_snr > 0.0) || apertures < 1)
        throw std::invalid_argument("LinkQuery: bad field values");
}

BerRationalPair ber_rational_pair(const dist::DoubleGGParams& p,
                                  long long max_den) {
    const double target = 0.5 * static_cast<double>(p.p) * p.small.gamma;
    const atmos::Rational r = atmos::rational_ratio(target, max_den);
    return {r.p, r.q,
            std::abs(static_cast<double>(r.p) / static_cast<double>(r.q) -
                     target) /
                target};
}

AsymptoticCoefficients asymptotic_coefficients(const dist::DoubleGGParams& p) {
    const double m1 = p.large.m, m2 = p.small.m;
    const auto pp = static_cast<double>(p.p);
    const auto qq = static_cast<double>(p.q);
    AsymptoticCoefficients out;
    out.b_k = std::min(m1 / qq, m2 / pp);

    std::vector<double> ladder = detail::delta_ladder(p.q, m1);
    detail::append(ladder, detail::delta_ladder(p.p, m2));
    std::size_t k_pos = 0;
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] < ladder[k_pos])
            k_pos = i;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (i == k_pos)
            continue;
        if (std::abs(ladder[i] - out.b_k) < kEpsSep)
            throw DegenerateExponentError(
                "asymptotic_coefficients: coincident exponent ladder values");
        out.b_j.push_back(ladder[i]);
    }

    out.a = std::exp(std::log(p.small.gamma * pp) + (m2 - 0.5) * std::log(pp) +
                     (m1 - 0.5) * std::log(qq) +
                     (1.0 - 0.5 * (pp + qq)) * std::log(kTwoPi) -
                     specfun::log_gamma(m1) - specfun::log_gamma(m2) +
                     out.b_k * (qq * std::log(m1) + pp * std::log(m2) -
                                qq * std::log(qq * p.large.omega) -
                                pp * std::log(pp * p.small.omega)));
    return out;
}

double outage_probability(const dist::DoubleGGParams& p, const LinkQuery& q) {
    const double i_th = std::sqrt(q.threshold_snr / q.avg_snr);
    return dist::dgg_cdf(i_th, p, dist::EvalPath::MeijerG);
}

double ber_siso(const dist::DoubleGGParams& p, const LinkQuery& q,
                BerPath path) {
    const double root_snr = std::sqrt(q.avg_snr);
    if (path == BerPath::Quadrature)
        return product_expectation(
            p,
            [&](double I) { return 0.5 * specfun::erfc(0.5 * root_snr * I); },
            2.0 / root_snr);

    const BerRationalPair lk = ber_rational_pair(p);
    const long long order = lk.k * (p.p + p.q) + 2 * lk.l;
    if (order > kOrderCap) {
        if (path == BerPath::ClosedForm)
            throw InfeasibleOrderError(
                "ber_siso: closed form needs " + std::to_string(order) +
                " Meijer-G parameters (cap " + std::to_string(kOrderCap) +
                "); use the quadrature path");
        return ber_siso(p, q, BerPath::Quadrature);
    }

    const double m1 = p.large.m, m2 = p.small.m;
    const auto pp = static_cast<double>(p.p);
    const auto qq = static_cast<double>(p.q);
    const auto ll = static_cast<double>(lk.l);
    const auto kk = static_cast<double>(lk.k);

    specfun::MeijerGSpec spec;
    spec.m_idx = lk.k * (p.p + p.q);
    spec.n_idx = 2 * lk.l;
    spec.a_params = detail::delta_ladder(lk.l, 1.0);
    detail::append(spec.a_params, detail::delta_ladder(lk.l, 0.5));
    spec.b_params = detail::j_ladder(lk.k, p.q, 1.0 - m1);
    detail::append(spec.b_params, detail::j_ladder(lk.k, p.p, 1.0 - m2));
    detail::append(spec.b_params, detail::delta_ladder(lk.l, 0.0));

    const double log_z =
        kk * (qq * std::log(m1) + pp * std::log(m2) - pp * std::log(pp) -
              pp * std::log(p.small.omega) - qq * std::log(qq) -
              qq * std::log(p.large.omega)) +
        ll * std::log(4.0 * ll) - ll * std::log(q.avg_snr) -
        kk * (pp + qq) * std::log(kk);

    const double log_c =
        std::log(p.small.gamma) + (m1 + m2) * std::log(kk) +
        (m2 + 0.5) * std::log(pp) + (m1 - 0.5) * std::log(qq) -
        1.5 * std::log(2.0) - std::log(ll) - specfun::log_gamma(m1) -
        specfun::log_gamma(m2) +
        (1.0 - 0.5 * (ll + kk * (pp + qq))) * std::log(kTwoPi);
    return std::exp(log_c) * specfun::meijer_g(spec, std::exp(log_z));
}

double ber_siso_asymptotic(const dist::DoubleGGParams& p, const LinkQuery& q) {
    const AsymptoticCoefficients c = asymptotic_coefficients(p);
    const double d = static_cast<double>(p.p) * p.small.gamma * c.b_k;
    double log_prod = 0.0;
    for (double bj : c.b_j)
        log_prod += specfun::log_gamma(bj - c.b_k);
    return std::exp(std::log(c.a) + log_prod +
                    d * (std::log(2.0) - 0.5 * std::log(q.avg_snr)) +
                    specfun::log_gamma(0.5 * (1.0 + d)) -
                    std::log(2.0 * kSqrtPi * d));
}

double diversity_order_siso(const dist::DoubleGGParams& p) {
    return 0.5 * static_cast<double>(p.p) * p.small.gamma *
           std::min(p.large.m / static_cast<double>(p.q),
                    p.small.m / static_cast<double>(p.p));
}

double diversity_order_simo(const std::vector<dist::DoubleGGParams>& branches) {
    double sum = 0.0;
    for (const auto& b : branches)
        sum += diversity_order_siso(b);
    return sum;
}

double q_approx(double x) {
    return std::exp(-0.5 * x * x) / 12.0 + std::exp(-2.0 * x * x / 3.0) / 4.0;
}

double simo_branch_lambda(const dist::DoubleGGParams& p, double avg_snr,
                          double v, int apertures, BerPath path) {
    const double scale = avg_snr / (v * static_cast<double>(apertures));
    if (path == BerPath::Quadrature)
        return product_expectation(
            p, [&](double I) { return std::exp(-scale * I * I); },
            1.0 / std::sqrt(scale));

    const BerRationalPair lk = ber_rational_pair(p);
    const long long order = lk.k * (p.p + p.q) + lk.l;
    if (order > kOrderCap) {
        if (path == BerPath::ClosedForm)
            throw InfeasibleOrderError(
                "simo_branch_lambda: closed form needs " +
                std::to_string(order) + " Meijer-G parameters (cap " +
                std::to_string(kOrderCap) + "); use the quadrature path");
        return simo_branch_lambda(p, avg_snr, v, apertures,
                                  BerPath::Quadrature);
    }

    const double m1 = p.large.m, m2 = p.small.m;
    const auto pp = static_cast<double>(p.p);
    const auto qq = static_cast<double>(p.q);
    const auto ll = static_cast<double>(lk.l);
    const auto kk = static_cast<double>(lk.k);

    specfun::MeijerGSpec spec;
    spec.m_idx = lk.k * (p.p + p.q);
    spec.n_idx = lk.l;
    spec.a_params = detail::delta_ladder(lk.l, 1.0);
    spec.b_params = detail::j_ladder(lk.k, p.q, 1.0 - m1);
    detail::append(spec.b_params, detail::j_ladder(lk.k, p.p, 1.0 - m2));

    // omega_n of Eq. (25b); its -k power feeds the argument.
    const double log_omega =
        pp * std::log(p.small.omega * pp / m2) +
        qq * std::log(qq * p.large.omega / m1);
    const double log_z =
        ll * std::log(v * static_cast<double>(apertures)) - kk * log_omega +
        ll * std::log(ll) - ll * std::log(avg_snr) -
        kk * (pp + qq) * std::log(kk);

    const double log_alpha =
        std::log(p.small.gamma) + (m2 + 0.5) * std::log(pp) +
        (m1 - 0.5) * std::log(qq) +
        (1.0 - 0.5 * (pp + qq)) * std::log(kTwoPi) - specfun::log_gamma(m1) -
        specfun::log_gamma(m2);
    const double log_c =
        log_alpha - 0.5 * std::log(ll) + (m1 + m2) * std::log(kk) -
        std::log(2.0) -
        0.5 * (ll - 1.0 + (kk - 1.0) * (pp + qq)) * std::log(kTwoPi);
    return std::exp(log_c) * specfun::meijer_g(spec, std::exp(log_z));
}

double ber_simo_oc(const std::vector<dist::DoubleGGParams>& branches,
                   const LinkQuery& q, BerPath path) {
    if (branches.empty() ||
        static_cast<int>(branches.size()) != q.apertures)
        throw std::invalid_argument("ber_simo_oc: branch count != apertures");
    double prod4 = 1.0, prod3 = 1.0;
    for (const auto& b : branches) {
        prod4 *= simo_branch_lambda(b, q.avg_snr, 4.0, q.apertures, path);
        prod3 *= simo_branch_lambda(b, q.avg_snr, 3.0, q.apertures, path);
    }
    return prod4 / 12.0 + prod3 / 4.0;
}

double ber_simo_asymptotic(const std::vector<dist::DoubleGGParams>& branches,
                           const LinkQuery& q) {
    if (branches.empty() ||
        static_cast<int>(branches.size()) != q.apertures)
        throw std::invalid_argument(
            "ber_simo_asymptotic: branch count != apertures");
    auto lambda_asy = [&](const dist::DoubleGGParams& p, double v) {
        const AsymptoticCoefficients c = asymptotic_coefficients(p);
        const double d = static_cast<double>(p.p) * p.small.gamma * c.b_k;
        double log_prod = 0.0;
        for (double bj : c.b_j)
            log_prod += specfun::log_gamma(bj - c.b_k);
        const double log_alpha =
            std::log(p.small.gamma) +
            (p.small.m + 0.5) * std::log(static_cast<double>(p.p)) +
            (p.large.m - 0.5) * std::log(static_cast<double>(p.q)) +
            (1.0 - 0.5 * static_cast<double>(p.p + p.q)) * std::log(kTwoPi) -
            specfun::log_gamma(p.large.m) - specfun::log_gamma(p.small.m);
        // alpha lacks A's omega/m power factor; restore it via b_k.
        const double log_scale =
            c.b_k * (static_cast<double>(p.q) * std::log(p.large.m) +
                     static_cast<double>(p.p) * std::log(p.small.m) -
                     static_cast<double>(p.q) *
                         std::log(static_cast<double>(p.q) * p.large.omega) -
                     static_cast<double>(p.p) *
                         std::log(static_cast<double>(p.p) * p.small.omega));
        // Gamma(d/2), not Gamma(d): integrating C I^{d-1} exp(-s I^2)
        // gives C Gamma(d/2) s^{-d/2} / 2, matching the SISO asymptote's
        // half-argument pattern.
        return std::exp(
            log_alpha + log_scale + log_prod + specfun::log_gamma(0.5 * d) +
            0.5 * d *
                (std::log(v * static_cast<double>(q.apertures)) -
                 std::log(q.avg_snr)) -
            std::log(2.0));
    };
    double prod4 = 1.0, prod3 = 1.0;
    for (const auto& b : branches) {
        prod4 *= lambda_asy(b, 4.0);
        prod3 *= lambda_asy(b, 3.0);
    }
    return prod4 / 12.0 + prod3 / 4.0;
}

double snr_db_at(const std::function<double(double)>& fn, double target) {
    double lo = 0.0, hi = 120.0;
    auto eval = [&](double db) { return fn(std::pow(10.0, db / 10.0)); };
    if (eval(lo) < target || eval(hi) > target)
        throw NoSolutionError("snr_db_at: target not bracketed in [0, 120] dB");
    while (hi - lo > 0.01) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double snr_db_at_ber(const dist::DoubleGGParams& p, double target_ber,
                     BerPath path) {
    return snr_db_at(
        [&](double snr) { return ber_siso(p, LinkQuery(snr, 1.0), path); },
        target_ber);
}

double snr_db_at_outage(const dist::DoubleGGParams& p, double target_outage) {
    return snr_db_at(
        [&](double ratio) {
            return outage_probability(p, LinkQuery(ratio, 1.0));
        },
        target_outage);
}

} // namespace dgg::perf
