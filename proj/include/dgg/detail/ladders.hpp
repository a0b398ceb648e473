#ifndef DGG_DETAIL_LADDERS_HPP
#define DGG_DETAIL_LADDERS_HPP

#include <vector>

namespace dgg::detail {

// Delta(j; x) = x/j, (x+1)/j, ..., (x+j-1)/j
inline std::vector<double> delta_ladder(long long j, double x) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(j));
    for (long long i = 0; i < j; ++i)
        out.push_back((x + static_cast<double>(i)) / static_cast<double>(j));
    return out;
}

// J_xi(y, x) = Delta(xi, (y-x)/y), Delta(xi, (y-1-x)/y), ..., Delta(xi, (1-x)/y)
inline std::vector<double> j_ladder(long long xi, long long y, double x) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(xi * y));
    for (long long t = 0; t < y; ++t) {
        auto block = delta_ladder(xi, (static_cast<double>(y - t) - x) /
                                          static_cast<double>(y));
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

inline void append(std::vector<double>& dst, const std::vector<double>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

} // namespace dgg::detail

#endif
