#pragma once

// Random symmetric sets B inside {-L..L} whose sumsets kB - lB contain a long
// arithmetic progression P, and the bookkeeping that turns them into many
// distinct (k,l)-sumsets.

#include <sumsets/error.hpp>
#include <sumsets/parallel.hpp>
#include <sumsets/rng.hpp>
#include <sumsets/sumset.hpp>
#include <sumsets/zp_core.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sumsets {

struct LowerBoundConfig {
    PrimeModulus modulus;
    unsigned k = 2, l = 0;
    std::int64_t L = 0;  // floor(p/(2(k+l)-1)) - 1
    std::int64_t N = 0;  // ceil(log(8(k+l)^2)/log(4/3))
    /// Integer representatives; residues are these mod p.
    std::vector<std::int64_t> X, Y, P, free;
    std::int64_t anchor = 0;  // 2L + 1
    bool regime_valid = false;  // (k+l) N < L

    unsigned order() const noexcept { return k + l; }
    SumsetSpec spec() const noexcept { return {k, l}; }

    ResidueSet residues(const std::vector<std::int64_t>& values) const {
        return ResidueSet::from_integers(modulus, values);
    }
    ResidueSet progression() const { return residues(P); }
    /// log2 of the guaranteed number of good sets, L - (k+l)N - 1.
    std::int64_t guaranteed_log2() const { return L - static_cast<std::int64_t>(order()) * N - 1; }
};

inline std::int64_t lowerbound_N(unsigned order) {
    const double m = order;
    return static_cast<std::int64_t>(std::ceil(std::log2(8.0 * m * m) / std::log2(4.0 / 3.0)));
}

inline LowerBoundConfig derive_config(PrimeModulus mod, unsigned k, unsigned l, bool allow_degenerate = false) {
    const std::int64_t m = k + l;
    if (m < 2) throw Error(ErrorKind::DomainError, "lower bound construction needs k + l >= 2");
    const std::int64_t p = mod.value();
    LowerBoundConfig c{mod, k, l, p / (2 * m - 1) - 1, lowerbound_N(static_cast<unsigned>(m)), {}, {}, {}, {}, 0, false};
    if (c.L < 1) throw Error(ErrorKind::InvalidRegime, "L = " + std::to_string(c.L) + " < 1 at p = " + std::to_string(p));
    c.anchor = 2 * c.L + 1;
    c.regime_valid = m * c.N < c.L;
    if (!c.regime_valid && !allow_degenerate) {
        throw Error(ErrorKind::InvalidRegime, "(k+l)N = " + std::to_string(m * c.N) + " >= L = " + std::to_string(c.L) +
                                                  " at p = " + std::to_string(p));
    }

    std::vector<bool> in_x(static_cast<std::size_t>(c.L) + 1, false);
    auto mark = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t v = std::max<std::int64_t>(lo, 0); v <= std::min(hi, c.L); ++v) in_x[v] = true;
    };
    mark(0, c.N);
    for (std::int64_t i = 1; i <= m - 1; ++i) {
        const std::int64_t num = (i + 1) * c.L;
        mark(num / m - c.N, (num + m - 1) / m);
    }
    for (std::int64_t v = 0; v <= c.L; ++v) {
        if (in_x[v]) c.X.push_back(v);
        else c.free.push_back(v);
    }

    c.Y.push_back(0);
    for (std::int64_t v = m; v <= m * c.N; ++v) c.Y.push_back(v);
    for (std::int64_t i = 1; i <= m - 1; ++i)
        for (std::int64_t v = (i + 1) * c.L - m * c.N; v <= (i + 1) * c.L; ++v) c.Y.push_back(v);
    std::sort(c.Y.begin(), c.Y.end());
    c.Y.erase(std::unique(c.Y.begin(), c.Y.end()), c.Y.end());

    for (std::int64_t v = static_cast<std::int64_t>(k) - static_cast<std::int64_t>(l) * c.L;
         v <= static_cast<std::int64_t>(k) * c.L - static_cast<std::int64_t>(l); ++v)
        c.P.push_back(v);
    return c;
}

/// B(C) = -C u C u X u -X, C a subset of the free residues.
inline ResidueSet build_B(const LowerBoundConfig& c, const std::vector<std::int64_t>& chosen) {
    ResidueSet b(c.modulus);
    for (std::int64_t v : chosen) {
        if (!std::binary_search(c.free.begin(), c.free.end(), v))
            throw Error(ErrorKind::CNotFree, std::to_string(v) + " is not a free element");
        b.insert(c.modulus.reduce(v));
        b.insert(c.modulus.reduce(-v));
    }
    for (std::int64_t v : c.X) {
        b.insert(c.modulus.reduce(v));
        b.insert(c.modulus.reduce(-v));
    }
    return b;
}

/// C given as a selection over free[i].
inline ResidueSet build_B(const LowerBoundConfig& c, const std::vector<bool>& selection) {
    std::vector<std::int64_t> chosen;
    for (std::size_t i = 0; i < c.free.size() && i < selection.size(); ++i)
        if (selection[i]) chosen.push_back(c.free[i]);
    return build_B(c, chosen);
}

/// A(B) = k(B u {+-(2L+1)}) - l(B u {+-(2L+1)}).
inline ResidueSet build_A(const LowerBoundConfig& c, const ResidueSet& b) {
    ResidueSet anchored = b;
    anchored.insert(c.modulus.reduce(c.anchor));
    anchored.insert(c.modulus.reduce(-c.anchor));
    return iterated_sumset(c.spec(), anchored);
}

enum class SampleMode { exhaustive, montecarlo };

struct SampleOptions {
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

inline constexpr std::size_t exhaustive_free_limit = 20;

struct SampleStats {
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t successes = 0;  // P inside kB - lB
    std::uint64_t distinct_good = 0;  // distinct A(B) over successful samples
    double empirical_prob = 0;
    std::optional<std::uint64_t> seed;  // montecarlo only
    /// failures[i] = number of samples with P[i] outside kB - lB.
    std::vector<std::uint64_t> failures;
};

inline SampleStats containment_probability(const LowerBoundConfig& c, const SampleOptions& opt = {}) {
    const std::size_t f = c.free.size();
    std::uint64_t samples;
    if (opt.mode == SampleMode::exhaustive) {
        if (f > exhaustive_free_limit)
            throw Error(ErrorKind::TooManyFree, std::to_string(f) + " free elements exceed the exhaustive gate of " +
                                                    std::to_string(exhaustive_free_limit));
        samples = 1ULL << f;
    } else {
        samples = opt.samples;
    }
    const ResidueSet prog = c.progression();
    std::vector<std::uint32_t> prog_residues;
    for (auto v : c.P) prog_residues.push_back(c.modulus.reduce(v));

    struct Partial {
        std::uint64_t successes = 0;
        std::set<std::vector<std::uint64_t>> good;
        std::vector<std::uint64_t> failures;
    };
    constexpr std::size_t chunks = 64;
    auto parts = map_chunks(chunks, opt.workers, [&](std::size_t chunk) {
        auto [begin, end] = chunk_range(samples, chunks, chunk);
        Partial part;
        part.failures.assign(prog_residues.size(), 0);
        std::vector<bool> selection(f);
        for (std::uint64_t i = begin; i < end; ++i) {
            if (opt.mode == SampleMode::exhaustive) {
                for (std::size_t j = 0; j < f; ++j) selection[j] = (i >> j) & 1U;
            } else {
                auto rng = substream(opt.seed, i);
                std::uint64_t word = 0;
                for (std::size_t j = 0; j < f; ++j) {
                    if (j % 64 == 0) word = rng();
                    selection[j] = (word >> (j % 64)) & 1U;
                }
            }
            ResidueSet b = build_B(c, selection);
            ResidueSet sums = iterated_sumset(c.spec(), b);
            bool ok = true;
            for (std::size_t j = 0; j < prog_residues.size(); ++j) {
                if (!sums.contains(prog_residues[j])) {
                    ++part.failures[j];
                    ok = false;
                }
            }
            if (!ok) continue;
            ++part.successes;
            ResidueSet a = build_A(c, b);
            part.good.insert(std::vector<std::uint64_t>(a.words().begin(), a.words().end()));
        }
        return part;
    });

    SampleStats stats;
    stats.mode = opt.mode;
    stats.samples = samples;
    stats.failures.assign(prog_residues.size(), 0);
    std::set<std::vector<std::uint64_t>> good;
    for (auto& part : parts) {
        stats.successes += part.successes;
        good.merge(part.good);
        for (std::size_t j = 0; j < part.failures.size(); ++j) stats.failures[j] += part.failures[j];
    }
    stats.distinct_good = good.size();
    stats.empirical_prob = samples ? static_cast<double>(stats.successes) / static_cast<double>(samples) : 0.0;
    if (opt.mode == SampleMode::montecarlo) stats.seed = opt.seed;
    return stats;
}

/// (k+l) sum_{x >= (k+l)N+1} (3/4)^{floor(x/(k+l))} in closed form: the block
/// floor = N has k+l-1 terms, every later block k+l terms, so the sum is
/// (k+l)(4(k+l)-1)(3/4)^N.
inline double union_bound(unsigned k, unsigned l, std::int64_t N) {
    if (N < 1) throw Error(ErrorKind::DomainError, "union bound needs N >= 1");
    const double m = k + l;
    if (m < 1) throw Error(ErrorKind::DomainError, "union bound needs k + l >= 1");
    return m * (4.0 * m - 1.0) * std::pow(0.75, static_cast<double>(N));
}

enum class FailureRegion { R0, Lj };

struct PointwiseBound {
    FailureRegion region = FailureRegion::R0;
    std::int64_t j = 0;  // block index for Lj
    std::int64_t exponent = 0;
    double bound = 0;  // (3/4)^exponent
};

/// Bound on Pr(x not in kB - lB) for x in +-R_0 = +-{(k+l)N+1..L}, or in
/// +-L_j = +-{jL+1..(j+1)L-(k+l)N-1}, j = 1..k+l-1.
inline PointwiseBound pointwise_failure_bound(std::int64_t x, const LowerBoundConfig& c) {
    const std::int64_t m = c.order();
    const std::int64_t ax = x < 0 ? -x : x;
    if (ax >= m * c.N + 1 && ax <= c.L) {
        std::int64_t e = ax / m;
        return {FailureRegion::R0, 0, e, std::pow(0.75, static_cast<double>(e))};
    }
    for (std::int64_t j = 1; j <= m - 1; ++j) {
        if (ax >= j * c.L + 1 && ax <= (j + 1) * c.L - m * c.N - 1) {
            std::int64_t e = ((j + 1) * c.L - ax) / m;
            return {FailureRegion::Lj, j, e, std::pow(0.75, static_cast<double>(e))};
        }
    }
    throw Error(ErrorKind::OutOfRegion, std::to_string(x) + " lies in no bounded region");
}

}  // namespace sumsets
