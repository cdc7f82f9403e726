#pragma once

#include <cstdint>
#include <random>

#include "osculata/rational.hpp"

namespace osculata {

/// Deterministic integer stream keyed by (seed, salt, index).
///
/// seed_seq and mt19937_64 are fully specified by the standard, and the
/// range reduction below is plain modular arithmetic, so a given key yields
/// the same draws on every conforming platform.
class IntegerStream {
public:
    IntegerStream(std::uint64_t seed, std::uint64_t salt, std::uint64_t index = 0)
    {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32),
            static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    /// Uniform integer in [-bound, bound].
    std::int64_t uniform(std::int64_t bound)
    {
        const auto span = static_cast<std::uint64_t>(2 * bound + 1);
        return static_cast<std::int64_t>(engine_() % span) - bound;
    }

    RatVector vector(std::size_t n, std::int64_t bound)
    {
        RatVector v;
        v.reserve(n);
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform(bound));
        return v;
    }

    /// Like vector(), but redrawn until some entry is nonzero.
    RatVector nonzero_vector(std::size_t n, std::int64_t bound)
    {
        for (;;) {
            RatVector v = vector(n, bound);
            for (const auto& x : v) {
                if (x != 0) return v;
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Purpose tags keep the draws of unrelated invariants independent.
namespace salt {
inline constexpr std::uint64_t projection = 0x70726f6aULL;
inline constexpr std::uint64_t point = 0x706f696eULL;
inline constexpr std::uint64_t pair = 0x70616972ULL;
inline constexpr std::uint64_t direction = 0x64697265ULL;
inline constexpr std::uint64_t tangent = 0x74616e67ULL;
} // namespace salt

} // namespace osculata
