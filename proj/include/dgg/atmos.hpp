#ifndef DGG_ATMOS_HPP
#define DGG_ATMOS_HPP

#include "dgg/dist.hpp"

namespace dgg::atmos {

enum class WaveType { Plane, Spherical };

// Physical turbulence description: Rytov variance plus l0/R0, the ratio
// of inner scale to Fresnel-zone radius.
struct AtmosphericConditions {
    WaveType wave = WaveType::Plane;
    double rytov_var = 0.0;
    double inner_scale_ratio = 0.0;

    AtmosphericConditions() = default;
    AtmosphericConditions(WaveType w, double rytov, double l0_over_r0);
};

struct ScaleVariances {
    double sigma_x_sq; // large-scale
    double sigma_y_sq; // small-scale
};

// Shaping parameters supplied externally (curve fit or user choice).
struct ShapeSeed {
    double m1;
    double m2;

    ShapeSeed(double m1_, double m2_);
};

struct Rational {
    long long p;
    long long q;
};

ScaleVariances plane_wave_variances(const AtmosphericConditions& cond);
ScaleVariances spherical_wave_variances(const AtmosphericConditions& cond);
ScaleVariances variances(const AtmosphericConditions& cond);

// Invert the normalized-variance relation for gamma at fixed m.
// Bisection over [1e-3, 100]; throws NoSolutionError when the target
// variance is unreachable.
double solve_shape(double sigma_sq, double m);

// Scale giving the GG factor unit mean: (Gamma(m)/Gamma(m+1/g))^g * m.
double omega_from(double m, double gamma);

// Plain best rational approximation with denominator <= max_den
// (continued-fraction convergents and semiconvergents; exhaustively
// optimal among numerators >= 1). Ties go to the smaller denominator.
Rational best_rational(double ratio, long long max_den);

// Rational pair used for the channel's p/q constraint: the
// smallest-denominator convergent within 5e-3 relative error, falling
// back to best_rational when no convergent with denominator <= max_den
// gets that close. The tolerance-first preference keeps the pair small
// when the ratio is only known to a few digits.
Rational rational_ratio(double ratio, long long max_den = 16);

// Full pipeline: variances -> gamma per scale -> Omega per scale ->
// (p, q). snap rescales gamma1 so the ratio equals p/q exactly.
dist::DoubleGGParams derive_params(const AtmosphericConditions& cond,
                                   const ShapeSeed& seed, long long max_den = 16,
                                   bool snap = false);

} // namespace dgg::atmos

#endif
