#ifndef HK_WALKS_HPP
#define HK_WALKS_HPP

#include <cstdint>
#include <optional>

#include "hk/monomial.hpp"

namespace hk {

/// Floor and ceiling division for int64 with positive divisor.
inline std::int64_t fdiv(std::int64_t a, std::int64_t b) {
    std::int64_t quot = a / b, rem = a % b;
    return (rem != 0 && a < 0) ? quot - 1 : quot;
}
inline std::int64_t cdiv(std::int64_t a, std::int64_t b) { return fdiv(a + b - 1, b); }

/// A (possibly empty) integer interval.
struct IntInterval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    bool empty() const { return lo > hi; }
    std::int64_t length() const { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const IntInterval& o) const {
        if (empty() && o.empty()) return true;
        return lo == o.lo && hi == o.hi;
    }
};

/// The set {x : base + x*dir lies componentwise in [0, q)} is an integer
/// interval; returns it intersected with [clip_lo, clip_hi].
IntInterval box_interval(const Exponents& base, const Exponents& dir, std::uint64_t q,
                         std::int64_t clip_lo, std::int64_t clip_hi);

/// The clean-exit step count of the ratio walk multiplying by `mult` and
/// dividing by `divisor` each step, starting inside the box: the least
/// k >= 1 with start + k*(mult - divisor) outside the box while
/// start + (k-1)*(mult - divisor) - divisor is still nonnegative.
/// Absent when the walk can only exit through a negative exponent.
std::optional<std::int64_t> least_clean_exit(const Exponents& start, const Exponents& mult,
                                             const Exponents& divisor, std::uint64_t q);

} // namespace hk

#endif
