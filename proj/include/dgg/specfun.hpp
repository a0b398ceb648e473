#ifndef DGG_SPECFUN_HPP
#define DGG_SPECFUN_HPP

#include <complex>

namespace dgg::specfun {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Complementary error function; erfc(-x) = 2 - erfc(x).
double erfc(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double gamma_p(double a, double x);

// Principal-branch-free log Gamma of a complex argument (Lanczos);
// exp(log_gamma_complex(z)) == Gamma(z), the imaginary part may carry
// an arbitrary multiple of 2*pi.
std::complex<double> log_gamma_complex(std::complex<double> z);

} // namespace dgg::specfun

#endif
