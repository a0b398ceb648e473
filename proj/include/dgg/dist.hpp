#ifndef DGG_DIST_HPP
#define DGG_DIST_HPP

#include <cstdint>
#include <vector>

#include "dgg/quadrature.hpp"
#include "dgg/rng.hpp"

namespace dgg::dist {

// One Generalized Gamma fluctuation scale (gamma, m, Omega).
struct GGParams {
    double gamma; // shape exponent, > 0
    double m;     // shape, >= 0.5
    double omega; // scale, > 0

    GGParams(double gamma_, double m_, double omega_);
};

// Full Double GG channel: large- and small-scale factors plus the
// rational pair (p, q) approximating gamma1/gamma2.
struct DoubleGGParams {
    GGParams large; // I_x
    GGParams small; // I_y
    long long p;
    long long q;
    double ratio_error; // relative |p/q - gamma1/gamma2| / (gamma1/gamma2)

    // snap rescales gamma1 to (p/q)*gamma2 exactly, making the Meijer-G
    // forms exact.
    DoubleGGParams(GGParams large_, GGParams small_, long long p_, long long q_,
                   double ratio_tol = 5e-3, bool snap = false);
};

enum class EvalPath { Quadrature, MeijerG };

enum class SpecialCase { GammaGamma, DoubleWeibull, K, None };

double gg_pdf(double x, const GGParams& p);
double log_gg_pdf(double x, const GGParams& p); // -inf where density is 0
double gg_cdf(double x, const GGParams& p);
double gg_moment(const GGParams& p, double order);
double gg_log_moment(const GGParams& p);     // E[ln I_x]
double gg_log_variance(const GGParams& p);   // Var[ln I_x]

// Density of I = I_x * I_y. The quadrature path integrates the product
// construction directly and is the reference; the Meijer-G path
// evaluates the closed form (exact under snap).
double dgg_pdf(double irradiance, const DoubleGGParams& p,
               EvalPath path = EvalPath::Quadrature);

double dgg_cdf(double irradiance, const DoubleGGParams& p,
               EvalPath path = EvalPath::Quadrature);

// (1 + sigma_x^2)(1 + sigma_y^2) - 1 with the variances from the
// moment relations.
double scintillation_index(const DoubleGGParams& p);

// Normalized variance Gamma(m + 2/g)Gamma(m)/Gamma^2(m + 1/g) - 1.
double gg_normalized_variance(double m, double gamma);

SpecialCase reduce_special_case(const DoubleGGParams& p);

std::vector<double> sample(const DoubleGGParams& p, RngStream& rng,
                           std::size_t n);

} // namespace dgg::dist

#endif
