#include "hk/walks.hpp"

#include <limits>
#include <stdexcept>

namespace hk {

IntInterval box_interval(const Exponents& base, const Exponents& dir, std::uint64_t q,
                         std::int64_t clip_lo, std::int64_t clip_hi) {
    if (base.size() != dir.size()) throw std::invalid_argument("box_interval: dimension mismatch");
    std::int64_t lo = clip_lo, hi = clip_hi;
    const std::int64_t top = static_cast<std::int64_t>(q) - 1;
    for (std::size_t v = 0; v < base.size(); ++v) {
        std::int64_t b = base[v], d = dir[v];
        if (d == 0) {
            if (b < 0 || b > top) return IntInterval{0, -1};
            continue;
        }
        if (d > 0) {
            lo = std::max(lo, cdiv(-b, d));
            hi = std::min(hi, fdiv(top - b, d));
        } else {
            lo = std::max(lo, cdiv(b - top, -d));
            hi = std::min(hi, fdiv(b, -d));
        }
    }
    return IntInterval{lo, hi};
}

std::optional<std::int64_t> least_clean_exit(const Exponents& start, const Exponents& mult,
                                             const Exponents& divisor, std::uint64_t q) {
    if (start.size() != mult.size() || start.size() != divisor.size())
        throw std::invalid_argument("least_clean_exit: dimension mismatch");
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::int64_t top = static_cast<std::int64_t>(q) - 1;

    // first step at which some coordinate of start + k*(mult - divisor)
    // leaves [0, q); each coordinate moves monotonically
    std::int64_t exit_at = inf;
    for (std::size_t v = 0; v < start.size(); ++v) {
        std::int64_t s = mult[v] - divisor[v];
        if (s > 0)
            exit_at = std::min(exit_at, cdiv(top + 1 - start[v], s));
        else if (s < 0)
            exit_at = std::min(exit_at, cdiv(start[v] + 1, -s));
    }
    if (exit_at >= inf) return std::nullopt; // mult == divisor; no walk

    // interval of k where start + (k-1)*(mult - divisor) - divisor >= 0
    std::int64_t lo = 1, hi = inf;
    for (std::size_t v = 0; v < start.size(); ++v) {
        std::int64_t s = mult[v] - divisor[v];
        std::int64_t margin = start[v] - divisor[v];
        if (s == 0) {
            if (margin < 0) return std::nullopt;
        } else if (s > 0) {
            lo = std::max(lo, 1 + cdiv(-margin, s));
        } else {
            hi = std::min(hi, 1 + fdiv(margin, -s));
        }
    }
    std::int64_t m = std::max(exit_at, lo);
    if (m > hi) return std::nullopt;
    return m;
}

} // namespace hk
