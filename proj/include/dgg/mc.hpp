#ifndef DGG_MC_HPP
#define DGG_MC_HPP

#include <cstdint>
#include <vector>

#include "dgg/dist.hpp"

namespace dgg::mc {

struct McConfig {
    std::uint64_t n_samples = 1000000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 65536;
};

struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t n;
};

// Rao-Blackwellized BER: averages the conditional error probability
// 0.5 erfc(sqrt(avg_snr) I / 2) over channel draws instead of
// simulating bits, cutting the variance by orders of magnitude.
McEstimate estimate_ber_siso(const dist::DoubleGGParams& p, double avg_snr,
                             const McConfig& cfg);

// Fraction of draws with avg_snr * I^2 < threshold_snr.
McEstimate estimate_outage(const dist::DoubleGGParams& p, double avg_snr,
                           double threshold_snr, const McConfig& cfg);

// Exact-Q SIMO optimal combining: averages
// 0.5 erfc(sqrt(avg_snr sum I_n^2 / (4N))) so the gap to the perf
// closed form isolates the Q-approximation error.
McEstimate estimate_ber_simo(const std::vector<dist::DoubleGGParams>& branches,
                             double avg_snr, const McConfig& cfg);

} // namespace dgg::mc

#endif
