#include "dgg/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgg/rng.hpp"
#include "dgg/specfun.hpp"

namespace dgg::mc {

namespace {

double draw(const dist::DoubleGGParams& p, RngStream& rng) {
    const double gx = rng.next_gamma(p.large.m, p.large.omega / p.large.m);
    const double gy = rng.next_gamma(p.small.m, p.small.omega / p.small.m);
    return std::pow(gx, 1.0 / p.large.gamma) *
           std::pow(gy, 1.0 / p.small.gamma);
}

// One substream per batch, accumulated in batch order: the estimate is
// bit-identical however the batches are scheduled.
template <typename PerSample>
McEstimate accumulate(const McConfig& cfg, PerSample&& value) {
    if (cfg.n_samples < 1 || cfg.batch < 1)
        throw std::invalid_argument("mc: n_samples and batch must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t done = 0;
    for (std::uint64_t b = 0; done < cfg.n_samples; ++b) {
        const std::uint64_t count =
            std::min(cfg.batch, cfg.n_samples - done);
        RngStream rng(cfg.seed, b);
        double bsum = 0.0, bsq = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = value(rng);
            bsum += v;
            bsq += v * v;
        }
        sum += bsum;
        sum_sq += bsq;
        done += count;
    }
    const auto n = static_cast<double>(cfg.n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n), cfg.n_samples};
}

} // namespace

McEstimate estimate_ber_siso(const dist::DoubleGGParams& p, double avg_snr,
                             const McConfig& cfg) {
    const double root_snr = std::sqrt(avg_snr);
    return accumulate(cfg, [&](RngStream& rng) {
        return 0.5 * specfun::erfc(0.5 * root_snr * draw(p, rng));
    });
}

McEstimate estimate_outage(const dist::DoubleGGParams& p, double avg_snr,
                           double threshold_snr, const McConfig& cfg) {
    return accumulate(cfg, [&](RngStream& rng) {
        const double I = draw(p, rng);
        return avg_snr * I * I < threshold_snr ? 1.0 : 0.0;
    });
}

McEstimate estimate_ber_simo(const std::vector<dist::DoubleGGParams>& branches,
                             double avg_snr, const McConfig& cfg) {
    if (branches.empty())
        throw std::invalid_argument("estimate_ber_simo: no branches");
    const auto n_ap = static_cast<double>(branches.size());
    return accumulate(cfg, [&](RngStream& rng) {
        double sum_sq = 0.0;
        for (const auto& b : branches) {
            const double I = draw(b, rng);
            sum_sq += I * I;
        }
        return 0.5 * specfun::erfc(std::sqrt(avg_snr * sum_sq / (4.0 * n_ap)));
    });
}

} // namespace dgg::mc
