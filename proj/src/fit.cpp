#include "dgg/fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dgg/errors.hpp"
#include "dgg/quadrature.hpp"
#include "dgg/specfun.hpp"

namespace dgg::fit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relaxed-tolerance product-density evaluation for curve work; the
// public dgg_pdf tolerance is overkill inside an optimizer loop.
double pdf_relaxed(double I, const dist::DoubleGGParams& p) {
    if (I < 1e-9)
        return 0.0;
    specfun::QuadratureConfig cfg;
    cfg.abs_tol = 1e-16;
    cfg.rel_tol = 1e-7;
    cfg.max_subdivisions = 600;
    auto integrand = [&](double y) {
        const double l = dist::log_gg_pdf(I / y, p.large) +
                         dist::log_gg_pdf(y, p.small) - std::log(y);
        return std::isfinite(l) ? std::exp(l) : 0.0;
    };
    // in t = (m/omega) y^gamma the density peaks at t = m; cover both
    // the origin-side shape and the mode when m is large
    const double t_hi = p.small.m + 40.0 * std::sqrt(p.small.m) + 745.0;
    const double y_hi = std::pow(t_hi * p.small.omega / p.small.m,
                                 1.0 / p.small.gamma);
    std::vector<double> knots;
    for (double c : {1e-4, 1e-2, 0.3, 1.0, 10.0, 100.0, 0.25 * p.small.m,
                     p.small.m, 4.0 * p.small.m})
        knots.push_back(std::pow(c * p.small.omega / p.small.m,
                                 1.0 / p.small.gamma));
    for (double c : {1e-4, 1e-2, 0.3, 1.0, 10.0, 100.0, 0.25 * p.large.m,
                     p.large.m, 4.0 * p.large.m}) {
        // image of the large-scale factor's shape under y = I/x
        knots.push_back(I / std::pow(c * p.large.omega / p.large.m,
                                     1.0 / p.large.gamma));
    }
    knots.push_back(y_hi);
    std::sort(knots.begin(), knots.end());
    double total = 0.0, lo = 0.0;
    for (double k : knots) {
        if (k <= lo)
            continue;
        if (k > y_hi)
            break;
        total += specfun::integrate(integrand, lo, k, cfg);
        lo = k;
    }
    return total;
}

double offset_for(const LogMoments& m, Convention convention) {
    return convention == Convention::CenteredByMean
               ? m.mu
               : -0.5 * m.sigma * m.sigma;
}

struct Objective {
    std::function<dist::DoubleGGParams(double, double)> build;
    const EmpiricalPdf* data;
    mutable int skipped = 0;

    double operator()(double a, double b) const {
        try {
            const dist::DoubleGGParams p = build(a, b);
            return nrmse(scaled_log_curve(p, data->x, data->convention),
                         *data);
        } catch (const std::exception&) {
            ++skipped;
            return kInf;
        }
    }
};

struct Point {
    double a, b, val;
};

// Derivative-free refinement: Nelder-Mead on (a, b), coordinates
// clamped to bounds, monotone by construction (best vertex never
// worsens).
Point nelder_mead(const Objective& f, Point start, Bounds ba, Bounds bb) {
    auto clamp = [](double v, Bounds bd) {
        return std::min(bd.hi, std::max(bd.lo, v));
    };
    auto eval = [&](double a, double b) {
        a = clamp(a, ba);
        b = clamp(b, bb);
        return Point{a, b, f(a, b)};
    };
    const double da = std::max(0.1 * start.a, 1e-3);
    const double db = std::max(0.1 * start.b, 1e-3);
    std::vector<Point> s = {start, eval(start.a + da, start.b),
                            eval(start.a, start.b + db)};
    for (int it = 0; it < 120; ++it) {
        std::sort(s.begin(), s.end(),
                  [](const Point& x, const Point& y) { return x.val < y.val; });
        if (std::abs(s[2].val - s[0].val) <
            1e-6 * (std::abs(s[0].val) + 1e-12))
            break;
        const double ca = 0.5 * (s[0].a + s[1].a);
        const double cb = 0.5 * (s[0].b + s[1].b);
        Point r = eval(ca + (ca - s[2].a), cb + (cb - s[2].b));
        if (r.val < s[0].val) {
            Point e = eval(ca + 2.0 * (ca - s[2].a), cb + 2.0 * (cb - s[2].b));
            s[2] = e.val < r.val ? e : r;
        } else if (r.val < s[1].val) {
            s[2] = r;
        } else {
            Point c = eval(ca + 0.5 * (s[2].a - ca), cb + 0.5 * (s[2].b - cb));
            if (c.val < s[2].val) {
                s[2] = c;
            } else {
                s[1] = eval(s[0].a + 0.5 * (s[1].a - s[0].a),
                            s[0].b + 0.5 * (s[1].b - s[0].b));
                s[2] = eval(s[0].a + 0.5 * (s[2].a - s[0].a),
                            s[0].b + 0.5 * (s[2].b - s[0].b));
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Point& x, const Point& y) { return x.val < y.val; });
    return s[0];
}

Point grid_then_refine(const Objective& f, Bounds ba, Bounds bb) {
    // log-spaced coarse grid; ties resolved toward the smaller first
    // then second coordinate by scan order.
    constexpr int kGrid = 7;
    Point best{0, 0, kInf};
    for (int i = 0; i < kGrid; ++i) {
        const double a = ba.lo * std::pow(ba.hi / ba.lo,
                                          i / static_cast<double>(kGrid - 1));
        for (int j = 0; j < kGrid; ++j) {
            const double b = bb.lo * std::pow(bb.hi / bb.lo,
                                              j / static_cast<double>(kGrid - 1));
            const double v = f(a, b);
            if (v < best.val) {
                best = {a, b, v};
            }
        }
    }
    if (!std::isfinite(best.val))
        throw FitError("fit: every iterate failed in the shape solver");
    Point refined = nelder_mead(f, best, ba, bb);
    return refined.val <= best.val ? refined : best;
}

FitResult finish(const Objective& f, const Point& best) {
    return {best.a, best.b, f.build(best.a, best.b), best.val, f.skipped};
}

} // namespace

void EmpiricalPdf::validate() const {
    if (x.empty() || x.size() != f.size())
        throw std::domain_error("EmpiricalPdf: empty or ragged data");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::domain_error("EmpiricalPdf: x must strictly increase");
        if (!(f[i] >= 0.0) || !std::isfinite(f[i]) || !std::isfinite(x[i]))
            throw std::domain_error("EmpiricalPdf: bad density value");
    }
}

EmpiricalPdf load_empirical_pdf(const std::string& path,
                                Convention convention) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open data file: " + path);
    EmpiricalPdf out;
    out.convention = convention;
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,f", 0) != 0)
        throw std::runtime_error(path + ": expected header line 'x,f'");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream row(line);
        double x, f;
        char comma;
        if (!(row >> x >> comma >> f) || comma != ',')
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed point");
        out.x.push_back(x);
        out.f.push_back(f);
    }
    out.validate();
    return out;
}

LogMoments log_moments(const dist::DoubleGGParams& p) {
    const double mu =
        dist::gg_log_moment(p.large) + dist::gg_log_moment(p.small);
    const double var =
        dist::gg_log_variance(p.large) + dist::gg_log_variance(p.small);
    return {mu, std::sqrt(var)};
}

double scaled_log_pdf(const dist::DoubleGGParams& p, double x,
                      Convention convention) {
    const LogMoments m = log_moments(p);
    const double u = m.sigma * x + offset_for(m, convention);
    const double I = std::exp(u);
    return m.sigma * I * pdf_relaxed(I, p);
}

std::vector<double> scaled_log_curve(const dist::DoubleGGParams& p,
                                     const std::vector<double>& xs,
                                     Convention convention) {
    const LogMoments m = log_moments(p);
    const double c = offset_for(m, convention);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double I = std::exp(m.sigma * x + c);
        out.push_back(m.sigma * I * pdf_relaxed(I, p));
    }
    return out;
}

double nrmse(const std::vector<double>& model, const EmpiricalPdf& data) {
    data.validate();
    if (model.size() != data.f.size())
        throw std::domain_error("nrmse: model/data size mismatch");
    double ss = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        const double r = model[i] - data.f[i];
        ss += r * r;
        peak = std::max(peak, data.f[i]);
    }
    if (peak <= 0.0)
        throw std::domain_error("nrmse: data curve has no positive values");
    return std::sqrt(ss / static_cast<double>(model.size())) / peak;
}

FitResult fit_shapes(const EmpiricalPdf& data,
                     const atmos::AtmosphericConditions& cond, Bounds m1_bounds,
                     Bounds m2_bounds, long long max_den) {
    data.validate();
    Objective obj{[&](double m1, double m2) {
                      return atmos::derive_params(cond, {m1, m2}, max_den);
                  },
                  &data};
    return finish(obj, grid_then_refine(obj, m1_bounds, m2_bounds));
}

FitResult fit_candidate(const EmpiricalPdf& data, CandidateModel model) {
    data.validate();
    switch (model) {
    case CandidateModel::GammaGamma: {
        Objective obj{[](double m1, double m2) {
                          return dist::DoubleGGParams({1.0, m1, 1.0},
                                                      {1.0, m2, 1.0}, 1, 1);
                      },
                      &data};
        return finish(obj, grid_then_refine(obj, {0.5, 100.0}, {0.5, 100.0}));
    }
    case CandidateModel::DoubleWeibull: {
        // Free parameters are the gamma exponents; m = 1 and the scale
        // keeps each factor at unit mean. The quadrature evaluation
        // never consults (p, q), so the rational pair is only recorded.
        Objective obj{[](double g1, double g2) {
                          const atmos::Rational r =
                              atmos::best_rational(g1 / g2, 64);
                          return dist::DoubleGGParams(
                              {g1, 1.0, atmos::omega_from(1.0, g1)},
                              {g2, 1.0, atmos::omega_from(1.0, g2)}, r.p, r.q,
                              1.0);
                      },
                      &data};
        return finish(obj, grid_then_refine(obj, {0.1, 8.0}, {0.1, 8.0}));
    }
    case CandidateModel::K: {
        Objective obj{[](double m1, double) {
                          return dist::DoubleGGParams({1.0, m1, 1.0},
                                                      {1.0, 1.0, 1.0}, 1, 1);
                      },
                      &data};
        // second coordinate is inert; pin it to a degenerate interval
        return finish(obj, grid_then_refine(obj, {0.5, 100.0}, {1.0, 1.0}));
    }
    }
    throw std::logic_error("fit_candidate: unknown model");
}

} // namespace dgg::fit
