#ifndef DGG_PERF_HPP
#define DGG_PERF_HPP

#include <functional>
#include <vector>

#include "dgg/dist.hpp"

namespace dgg::perf {

// SNRs are linear power ratios here; the CLI converts from dB at the
// boundary.
struct LinkQuery {
    double avg_snr = 1.0;
    double threshold_snr = 1.0; // outage only
    int apertures = 1;

    LinkQuery() = default;
    LinkQuery(double avg_snr_, double threshold_snr_, int apertures_ = 1);
};

enum class BerPath { Quadrature, ClosedForm, Auto };

// (l, k) with l/k ~= p*gamma2/2, the rational pair the closed-form BER
// needs. The approximation error is recorded; snap instead rescales
// gamma2 so the relation is exact.
struct BerRationalPair {
    long long l;
    long long k;
    double rel_error;
};

BerRationalPair ber_rational_pair(const dist::DoubleGGParams& p,
                                  long long max_den = 8);

// Near-origin expansion f(I) ~ A prod Gamma(b_j - b_k) I^{p g2 b_k - 1}.
struct AsymptoticCoefficients {
    double a;
    double b_k;
    std::vector<double> b_j; // remaining ladder values, b_k removed once
};

AsymptoticCoefficients asymptotic_coefficients(const dist::DoubleGGParams& p);

// Total Meijer-G parameter budget for the closed forms; beyond it the
// contour integration cost and conditioning are not worth it and we
// fall back to quadrature.
inline constexpr long long kOrderCap = 64;

double outage_probability(const dist::DoubleGGParams& p, const LinkQuery& q);

double ber_siso(const dist::DoubleGGParams& p, const LinkQuery& q,
                BerPath path = BerPath::Auto);

double ber_siso_asymptotic(const dist::DoubleGGParams& p, const LinkQuery& q);

double diversity_order_siso(const dist::DoubleGGParams& p);

double ber_simo_oc(const std::vector<dist::DoubleGGParams>& branches,
                   const LinkQuery& q, BerPath path = BerPath::Auto);

double ber_simo_asymptotic(const std::vector<dist::DoubleGGParams>& branches,
                           const LinkQuery& q);

double diversity_order_simo(const std::vector<dist::DoubleGGParams>& branches);

// Two-exponential Q-function approximation used by the SIMO closed form.
double q_approx(double x);

// E[exp(-avg_snr * I^2 / (v N))] for one branch; the building block of
// the SIMO closed form.
double simo_branch_lambda(const dist::DoubleGGParams& p, double avg_snr,
                          double v, int apertures,
                          BerPath path = BerPath::Auto);

// Bisection on average SNR in dB over [0, 120] to 0.01 dB; fn must be
// decreasing in SNR.
double snr_db_at(const std::function<double(double)>& fn_of_linear_snr,
                 double target);

double snr_db_at_ber(const dist::DoubleGGParams& p, double target_ber,
                     BerPath path = BerPath::Auto);

// Returns the ratio avg_snr/threshold_snr in dB for a target outage.
double snr_db_at_outage(const dist::DoubleGGParams& p, double target_outage);

} // namespace dgg::perf

#endif
