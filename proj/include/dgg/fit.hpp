#ifndef DGG_FIT_HPP
#define DGG_FIT_HPP

#include <string>
#include <vector>

#include "dgg/atmos.hpp"
#include "dgg/dist.hpp"

namespace dgg::fit {

// Plotting coordinate of the log-irradiance axis: either
// (ln I - mu)/sigma or (ln I + 0.5 sigma^2)/sigma.
enum class Convention { CenteredByMean, ShiftedByHalfVariance };

struct EmpiricalPdf {
    std::vector<double> x; // strictly increasing
    std::vector<double> f; // >= 0
    Convention convention = Convention::CenteredByMean;

    void validate() const;
};

// Text file, header "x,f", one comma-separated point per line.
EmpiricalPdf load_empirical_pdf(const std::string& path, Convention convention);

struct LogMoments {
    double mu;    // E[ln I]
    double sigma; // std(ln I)
};

LogMoments log_moments(const dist::DoubleGGParams& p);

// sigma * f_lnI(sigma x + c) with f_lnI(u) = e^u f_I(e^u); c from the
// convention. The sigma factors make the curve a density in x.
double scaled_log_pdf(const dist::DoubleGGParams& p, double x,
                      Convention convention);

std::vector<double> scaled_log_curve(const dist::DoubleGGParams& p,
                                     const std::vector<double>& xs,
                                     Convention convention);

// RMS residual divided by the peak of the data curve.
double nrmse(const std::vector<double>& model, const EmpiricalPdf& data);

struct Bounds {
    double lo;
    double hi;
};

struct FitResult {
    double m1;
    double m2;
    dist::DoubleGGParams params;
    double nrmse;
    int skipped; // iterates where the shape solver had no solution
};

// Coarse grid then Nelder-Mead over (m1, m2), re-deriving (gamma,
// Omega) through the atmospheric pipeline at every iterate.
FitResult fit_shapes(const EmpiricalPdf& data,
                     const atmos::AtmosphericConditions& cond, Bounds m1_bounds,
                     Bounds m2_bounds, long long max_den = 16);

// Special-case channels re-fit under their own constraints for
// Table-style comparisons; each keeps the unit-mean scale.
enum class CandidateModel { GammaGamma, DoubleWeibull, K };

FitResult fit_candidate(const EmpiricalPdf& data, CandidateModel model);

} // namespace dgg::fit

#endif
