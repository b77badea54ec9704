#pragma once

#include <cstdint>
#include <random>

namespace sumsets {

// SplitMix64 finalizer. Substream i of seed s is seeded with
// splitmix64(s ^ splitmix64(i + 1)), so every instance draws from its own
// generator and results do not depend on how instances are scheduled.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(substream_seed(seed, index));
}

}  // namespace sumsets
