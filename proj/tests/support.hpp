#pragma once

// Hand-rolled generators and brute-force oracles shared by the test binaries.
// The oracles use only std containers and integer arithmetic so they do not
// share code paths with the library kernels.

#include <sumsets/zp_core.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace sumsets::oracle {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 61, 67, 97, 101, 127, 131};
    return primes;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    std::int64_t between(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
    bool coin() { return rng_() >> 63; }

    PrimeModulus prime() { return PrimeModulus(small_primes()[below(small_primes().size())]); }

    /// Each residue with probability 1/2.
    ResidueSet subset(PrimeModulus m) {
        ResidueSet s(m);
        for (std::uint32_t x = 0; x < m.value(); ++x)
            if (coin()) s.insert(x);
        return s;
    }

    /// Size uniform in [lo, hi], then a uniform subset of that size.
    ResidueSet subset_sized(PrimeModulus m, std::uint32_t lo, std::uint32_t hi) {
        const std::uint32_t n = static_cast<std::uint32_t>(between(lo, hi));
        std::vector<std::uint32_t> pool(m.value());
        for (std::uint32_t i = 0; i < m.value(); ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng_);
        ResidueSet s(m);
        for (std::uint32_t i = 0; i < n; ++i) s.insert(pool[i]);
        return s;
    }

    ResidueSet nonempty(PrimeModulus m) { return subset_sized(m, 1, m.value()); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

using Plain = std::set<std::int64_t>;

inline Plain plain(const ResidueSet& s) {
    Plain out;
    for (auto x : s.elements()) out.insert(x);
    return out;
}

/// kB - lB by enumerating every (k+l)-tuple of B.
inline Plain brute_sumset(std::int64_t p, unsigned k, unsigned l, const Plain& b) {
    if (b.empty()) return {};
    Plain acc{0};
    for (unsigned i = 0; i < k + l; ++i) {
        Plain next;
        for (auto a : acc)
            for (auto x : b) next.insert((((i < k) ? a + x : a - x) % p + p) % p);
        acc = std::move(next);
    }
    return acc;
}

/// Number of tuples in A_1 x ... x A_m with each sum.
inline std::map<std::int64_t, std::uint64_t> brute_counts(std::int64_t p, const std::vector<Plain>& sets) {
    std::map<std::int64_t, std::uint64_t> acc{{0, 1}};
    for (const auto& s : sets) {
        std::map<std::int64_t, std::uint64_t> next;
        for (auto [r, c] : acc)
            for (auto x : s) next[(r + x) % p] += c;
        acc = std::move(next);
    }
    return acc;
}

/// |{kB - lB : B subset of Z_p}| by running over all 2^p masks.
inline std::uint64_t brute_census(std::int64_t p, unsigned k, unsigned l, bool include_empty = true) {
    std::set<Plain> family;
    for (std::uint64_t mask = include_empty ? 0 : 1; mask < (1ULL << p); ++mask) {
        Plain b;
        for (std::int64_t x = 0; x < p; ++x)
            if ((mask >> x) & 1U) b.insert(x);
        family.insert(brute_sumset(p, k, l, b));
    }
    return family.size();
}

}  // namespace sumsets::oracle
