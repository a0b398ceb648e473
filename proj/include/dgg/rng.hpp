#ifndef DGG_RNG_HPP
#define DGG_RNG_HPP

#include <cstdint>

namespace dgg {

// xoshiro256++ seeded through SplitMix64. Substreams are derived from
// (seed, stream) so parallel workers get independent, reproducible
// streams regardless of scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double next_double();   // uniform in [0, 1)
    double next_normal();   // standard normal (polar rejection)

    // Gamma(shape, scale) via Marsaglia-Tsang squeeze-rejection;
    // shape < 1 handled with the u^{1/shape} boost.
    double next_gamma(double shape, double scale);

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace dgg

#endif
