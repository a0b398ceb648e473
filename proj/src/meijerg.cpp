#include "dgg/meijerg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "dgg/errors.hpp"
#include "dgg/specfun.hpp"

namespace dgg::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kStripEps = 1e-9;     // strip width below which we perturb
constexpr double kPerturb = 1e-7;      // documented parameter perturbation
constexpr double kRelTarget = 1e-8;    // contract accuracy

struct Contour {
    double sigma;
    double scale; // Re log-integrand at t = 0, factored out
};

class Integrand {
public:
    Integrand(const MeijerGSpec& s, double x) : spec_(s), log_x_(std::log(x)) {}

    std::complex<double> log_at(std::complex<double> s) const {
        std::complex<double> L = -s * log_x_;
        const auto& a = spec_.a_params;
        const auto& b = spec_.b_params;
        for (int j = 0; j < spec_.m_idx; ++j)
            L += log_gamma_complex(b[j] + s);
        for (int j = 0; j < spec_.n_idx; ++j)
            L += log_gamma_complex(1.0 - a[j] - s);
        for (int j = spec_.m_idx; j < static_cast<int>(b.size()); ++j)
            L -= log_gamma_complex(1.0 - b[j] - s);
        for (int j = spec_.n_idx; j < static_cast<int>(a.size()); ++j)
            L -= log_gamma_complex(a[j] + s);
        return L;
    }

    // log magnitude along the real axis, poles of denominator gammas give -inf
    double log_mag(double sigma) const {
        std::complex<double> L = log_at(std::complex<double>(sigma, 0.0));
        return L.real();
    }

private:
    const MeijerGSpec& spec_;
    double log_x_;
};

double min_b_head(const MeijerGSpec& s) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.m_idx; ++j) m = std::min(m, s.b_params[j]);
    return m;
}

double max_a_head(const MeijerGSpec& s) {
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.n_idx; ++j) m = std::max(m, s.a_params[j]);
    return m;
}

// Minimize log-magnitude along the admissible ray to place the contour
// near the real-axis saddle (only needed when one pole family is absent).
double minimize_ray(const Integrand& f, double bound, int direction) {
    // direction +1: sigma in (bound, inf); -1: sigma in (-inf, bound).
    // Coarse geometric scan in the offset u = |sigma - bound|, then
    // golden-section refinement between the scan neighbors of the minimum.
    std::vector<double> us;
    for (double u = 0.05; u < 500.0; u *= 1.35) us.push_back(u);
    int arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(us.size()); ++i) {
        const double v = f.log_mag(bound + direction * us[i]);
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    double lo = arg > 0 ? us[arg - 1] : 1e-3;
    double hi = arg + 1 < static_cast<int>(us.size()) ? us[arg + 1] : us.back();
    const double gr = 0.61803398874989485;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    for (int i = 0; i < 60; ++i) {
        if (f.log_mag(bound + direction * c) < f.log_mag(bound + direction * d))
            hi = d;
        else
            lo = c;
        c = hi - gr * (hi - lo);
        d = lo + gr * (hi - lo);
    }
    return bound + direction * 0.5 * (lo + hi);
}

double evaluate_once(const MeijerGSpec& spec, double x,
                     const QuadratureConfig& cfg, double* achieved) {
    const int p = static_cast<int>(spec.a_params.size());
    const int q = static_cast<int>(spec.b_params.size());
    const double delta = spec.m_idx + spec.n_idx - 0.5 * (p + q);
    if (delta <= 0.0)
        throw UnsupportedSpecError(
            "meijer_g: contour integrand does not decay for this pattern");

    Integrand f(spec, x);

    const bool has_left = spec.m_idx > 0;
    const bool has_right = spec.n_idx > 0;
    double sigma;
    if (has_left && has_right) {
        const double lo = -min_b_head(spec);       // rightmost left-family pole
        const double hi = 1.0 - max_a_head(spec);  // leftmost right-family pole
        if (hi - lo <= kStripEps)
            throw UnsupportedSpecError("meijer_g: no separating strip");
        sigma = 0.5 * (lo + hi);
    } else if (has_left) {
        sigma = minimize_ray(f, -min_b_head(spec), +1);
    } else if (has_right) {
        sigma = minimize_ray(f, 1.0 - max_a_head(spec), -1);
    } else {
        throw UnsupportedSpecError("meijer_g: empty parameter pattern");
    }

    const double scale = f.log_mag(sigma);

    auto integrand = [&](double t) {
        const std::complex<double> L =
            f.log_at(std::complex<double>(sigma, t)) - scale;
        if (L.real() > 700.0) return 0.0; // denominator pole grazing, clipped
        return std::exp(L).real();
    };

    // Truncation height: scaled integrand decays like exp(-delta*pi*t).
    const double cutoff = std::log(std::max(cfg.abs_tol * 1e-3, 1e-300));
    double T = std::max(4.0, (-cutoff + 10.0) / (delta * kPi));
    for (int i = 0; i < 40; ++i) {
        const double tail =
            (f.log_at(std::complex<double>(sigma, T)) - scale).real();
        if (tail < cutoff) break;
        T *= 1.5;
    }

    QuadResult r = integrate_adaptive(integrand, 0.0, T, cfg);
    const double value = std::exp(scale) * r.value / kPi;
    const double abs_err = std::exp(scale) * r.error / kPi;
    *achieved = std::abs(value) > 0.0
                    ? abs_err / std::abs(value)
                    : abs_err;
    return value;
}

void validate(const MeijerGSpec& spec, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("meijer_g: argument must be positive and finite");
    if (spec.m_idx < 0 || spec.n_idx < 0 ||
        spec.m_idx > static_cast<int>(spec.b_params.size()) ||
        spec.n_idx > static_cast<int>(spec.a_params.size()))
        throw UnsupportedSpecError("meijer_g: inconsistent order indices");
    for (double v : spec.a_params)
        if (!std::isfinite(v))
            throw UnsupportedSpecError("meijer_g: non-finite a-parameter");
    for (double v : spec.b_params)
        if (!std::isfinite(v))
            throw UnsupportedSpecError("meijer_g: non-finite b-parameter");
}

bool strip_collapsed(const MeijerGSpec& spec) {
    if (spec.m_idx == 0 || spec.n_idx == 0) return false;
    return (1.0 - max_a_head(spec)) - (-min_b_head(spec)) <= kStripEps;
}

MeijerGSpec perturbed(const MeijerGSpec& spec, double eps) {
    // Shift the smallest head b-parameter upward to reopen the strip.
    MeijerGSpec out = spec;
    int arg = 0;
    for (int j = 1; j < out.m_idx; ++j)
        if (out.b_params[j] < out.b_params[arg]) arg = j;
    out.b_params[arg] += eps;
    return out;
}

} // namespace

MeijerGSpec reflect(const MeijerGSpec& spec) {
    MeijerGSpec out;
    out.m_idx = spec.n_idx;
    out.n_idx = spec.m_idx;
    out.a_params.reserve(spec.b_params.size());
    for (double b : spec.b_params) out.a_params.push_back(1.0 - b);
    out.b_params.reserve(spec.a_params.size());
    for (double a : spec.a_params) out.b_params.push_back(1.0 - a);
    return out;
}

double meijer_g(const MeijerGSpec& spec, double x, const QuadratureConfig& cfg) {
    validate(spec, x);
    double achieved = 0.0;
    double value;
    if (strip_collapsed(spec)) {
        // Documented epsilon perturbation with a 2*eps stability re-check.
        double a1, a2;
        const double v1 = evaluate_once(perturbed(spec, kPerturb), x, cfg, &a1);
        const double v2 = evaluate_once(perturbed(spec, 2 * kPerturb), x, cfg, &a2);
        const double drift =
            std::abs(v1 - v2) / std::max(std::abs(v1), 1e-300);
        if (drift > kRelTarget)
            throw AccuracyError("meijer_g: perturbed evaluation unstable", drift);
        achieved = std::max({a1, a2, drift});
        value = v1;
    } else {
        value = evaluate_once(spec, x, cfg, &achieved);
    }
    if (achieved > kRelTarget)
        throw AccuracyError("meijer_g: accuracy target missed", achieved);
    return value;
}

} // namespace dgg::specfun
