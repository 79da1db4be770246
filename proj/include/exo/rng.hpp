#pragma once

#include <cstdint>

namespace exo {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Word `counter` of the stream keyed by `seed`.
constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed ^ mix64(counter));
}

/// Seed of sub-run `k` derived from a master seed. Distinct k give distinct
/// seeds because mix64 is a bijection.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t k) {
    return mix64(master + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace exo
