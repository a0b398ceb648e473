#ifndef DGG_MEIJERG_HPP
#define DGG_MEIJERG_HPP

#include <vector>

#include "dgg/quadrature.hpp"

namespace dgg::specfun {

// Order indices and parameter rows of G^{m,n}_{p,q}[x | a; b].
// m_idx counts b-parameters appearing as Gamma(b_j + s) in the
// Mellin-Barnes numerator, n_idx counts a-parameters appearing as
// Gamma(1 - a_j - s).
struct MeijerGSpec {
    int m_idx = 0;
    int n_idx = 0;
    std::vector<double> a_params;
    std::vector<double> b_params;
};

// Numerical Mellin-Barnes contour integration along a vertical line
// separating the two pole families. Target relative accuracy 1e-8.
// Throws UnsupportedSpecError for patterns without a separating strip
// (or without integrand decay), AccuracyError when the target is missed.
double meijer_g(const MeijerGSpec& spec, double x,
                const QuadratureConfig& cfg = {1e-14, 1e-10, 4000});

// G^{n,m}_{q,p}[1/x | 1-b; 1-a] built from the same parameters.
MeijerGSpec reflect(const MeijerGSpec& spec);

} // namespace dgg::specfun

#endif
