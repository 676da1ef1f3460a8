#include "mavrp/rng.hpp"

#include <limits>

#include "mavrp/error.hpp"

namespace mavrp {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InputError, "Rng::below called with n = 0");
    }
    // Rejection sampling on the top of the range keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % n;
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) {
        throw Error(ErrorCode::InputError, "Rng::integer called with empty range");
    }
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace mavrp
