// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_RNG_HPP
#define MRLPOS_RNG_HPP

#include <cstdint>
#include <random>

namespace mrlpos {

/**
 * Seeded random source. The engine is std::mt19937_64, whose output sequence
 * is fixed by the standard; the derived draws below are done by hand rather
 * than through <random> distributions, whose algorithms vary between
 * standard libraries.
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /** Uniform in [0, 1) with 53 bits of precision. */
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /** Uniform in [0, n). n must be positive. */
    std::uint64_t below(std::uint64_t n)
    {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /** Uniform integer in [lo, hi]. */
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(double p)
    {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform01() < p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mrlpos

#endif // MRLPOS_RNG_HPP
