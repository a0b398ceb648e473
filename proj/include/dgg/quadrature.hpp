#ifndef DGG_QUADRATURE_HPP
#define DGG_QUADRATURE_HPP

#include <functional>

namespace dgg::specfun {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 1000;
};

struct QuadResult {
    double value;
    double error; // absolute error estimate
    int subdivisions;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Worst-interval-first bisection.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, const QuadratureConfig& cfg);

// Integral over (0, inf) via x = t/(1-t). The integrand may have an
// integrable singularity at 0. Throws AccuracyError on non-convergence.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg = {});

// Same contract on a finite interval.
double integrate(const std::function<double(double)>& f,
                 double a, double b, const QuadratureConfig& cfg = {});

} // namespace dgg::specfun

#endif
