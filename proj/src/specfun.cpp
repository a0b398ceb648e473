#include "dgg/specfun.hpp"
#include "dgg/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgg::specfun {

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: argument must be positive and finite");
    return std::lgamma(x);
}

double erfc(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("erfc: argument must be finite");
    return std::erfc(x);
}

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x).
double gamma_q_cf(double a, double x) {
    const double fpmin = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x))
        throw std::domain_error("gamma_p: requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

namespace {

// Lanczos, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

std::complex<double> lanczos_log_gamma(std::complex<double> z) {
    // Valid for Re(z) >= 0.5; z shifted by -1 relative to Gamma(z+1) form.
    z -= 1.0;
    std::complex<double> s = kLanczos[0];
    for (int i = 1; i < 15; ++i)
        s += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + kLanczosG + 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(s);
}

// log(sin(pi z)) stable for large |Im z|; branch not tracked.
std::complex<double> log_sin_pi(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    const double pi = 3.14159265358979323846;
    if (z.imag() > 0.0) {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i); the kept
        // exponential decays for Im z > 0.
        return std::complex<double>(0.0, -pi) * z +
               std::log((std::exp(std::complex<double>(0.0, 2.0 * pi) * z) -
                         1.0) /
                        std::complex<double>(0.0, 2.0));
    }
    return std::complex<double>(0.0, pi) * z +
           std::log((1.0 - std::exp(std::complex<double>(0.0, -2.0 * pi) * z)) /
                    std::complex<double>(0.0, 2.0));
}

} // namespace

std::complex<double> log_gamma_complex(std::complex<double> z) {
    if (z.real() >= 0.5)
        return lanczos_log_gamma(z);
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    const double log_pi = 1.14472988584940017414;
    return log_pi - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

} // namespace dgg::specfun
