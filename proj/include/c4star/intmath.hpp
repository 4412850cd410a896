#ifndef C4STAR_INTMATH_HPP
#define C4STAR_INTMATH_HPP

#include <cmath>
#include <cstdint>

#include "c4star/errors.hpp"

namespace c4star {

/// Floor of sqrt(x), exact for all x < 2^63.
inline std::uint64_t isqrt_u64(std::uint64_t x) {
    if (x == 0) return 0;
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (s > 0 && s * s > x) --s;
    while (s + 1 < (std::uint64_t{1} << 32) && (s + 1) * (s + 1) <= x) ++s;
    return s;
}

/// Smallest integer s with s*s >= x.
inline long long ceil_sqrt(long long x) {
    if (x < 0) fail("DomainTooSmall", "ceil_sqrt of negative value");
    const auto s = isqrt_u64(static_cast<std::uint64_t>(x));
    const auto sq = s * s;
    return static_cast<long long>(sq == static_cast<std::uint64_t>(x) ? s
                                                                      : s + 1);
}

} // namespace c4star

#endif
