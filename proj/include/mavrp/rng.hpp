#pragma once

#include <cstdint>
#include <random>

namespace mavrp {

// Seeded random stream. Draws are derived from the raw mt19937_64 output
// rather than <random> distributions, whose algorithms are left to the
// standard library implementation, so sequences match across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Uniform integer in [lo, hi], both inclusive.
    std::int64_t integer(std::int64_t lo, std::int64_t hi);

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer over (seed, stream); used to derive independent
/// per-purpose streams from one user-facing seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace mavrp
