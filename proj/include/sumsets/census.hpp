#pragma once

// Exact census of the distinct sets kB - lB, B ranging over all subsets of
// Z_p, directly (every B) or over orbit representatives of B under the
// affine symmetries that act compatibly on sumsets.

#include <sumsets/error.hpp>
#include <sumsets/inequalities.hpp>
#include <sumsets/parallel.hpp>
#include <sumsets/sumset.hpp>
#include <sumsets/zp_core.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sumsets {

namespace detail {

/// Subsets of Z_p (p <= 31) as 32-bit masks with table-driven dilation.
class MaskField {
public:
    explicit MaskField(PrimeModulus mod)
        : mod_(mod), p_(mod.value()), chunks_((mod.value() + 7) / 8) {
        if (p_ > 31) throw Error(ErrorKind::TooLarge, "mask kernel needs p <= 31");
        full_ = static_cast<std::uint32_t>((1ULL << p_) - 1);
        table_.assign(std::size_t{p_} * chunks_ * 256, 0);
        for (std::uint32_t d = 0; d < p_; ++d)
            for (unsigned c = 0; c < chunks_; ++c)
                for (unsigned b = 0; b < 256; ++b) {
                    std::uint32_t img = 0;
                    for (unsigned j = 0; j < 8; ++j) {
                        std::uint32_t r = c * 8 + j;
                        if (((b >> j) & 1U) && r < p_) img |= 1U << mod_.mul(d, r);
                    }
                    table_[(std::size_t{d} * chunks_ + c) * 256 + b] = img;
                }
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t full() const noexcept { return full_; }

    std::uint32_t rotate(std::uint32_t x, std::uint32_t t) const noexcept {
        if (t == 0) return x;
        std::uint64_t w = x;
        return static_cast<std::uint32_t>(((w << t) | (w >> (p_ - t))) & full_);
    }
    std::uint32_t dilate(std::uint32_t x, std::uint32_t d) const noexcept {
        const std::uint32_t* row = &table_[std::size_t{d} * chunks_ * 256];
        std::uint32_t img = 0;
        for (unsigned c = 0; c < chunks_; ++c) img |= row[c * 256 + ((x >> (8 * c)) & 0xFF)];
        return img;
    }
    std::uint32_t negate(std::uint32_t x) const noexcept { return dilate(x, p_ - 1); }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept {
        if (!x || !y) return 0;
        if (std::popcount(x) > std::popcount(y)) std::swap(x, y);
        std::uint32_t out = 0;
        while (x) {
            unsigned t = static_cast<unsigned>(std::countr_zero(x));
            out |= rotate(y, t);
            if (out == full_) return out;
            x &= x - 1;
        }
        return out;
    }
    std::uint32_t multiple(unsigned i, std::uint32_t x) const noexcept {
        std::uint32_t acc = x;
        for (unsigned j = 1; j < i && acc != full_; ++j) acc = add(acc, x);
        return acc;
    }
    std::uint32_t sumset(SumsetSpec spec, std::uint32_t b) const noexcept {
        if (!b) return 0;
        if (spec.l == 0) return multiple(spec.k, b);
        std::uint32_t nb = negate(b);
        if (spec.k == 0) return multiple(spec.l, nb);
        return add(multiple(spec.k, b), multiple(spec.l, nb));
    }

    /// True iff no group image of x is numerically smaller.
    bool is_canonical(std::uint32_t x, bool translations) const noexcept {
        for (std::uint32_t d = 1; d < p_; ++d) {
            std::uint32_t img = d == 1 ? x : dilate(x, d);
            if (img < x) return false;
            if (translations)
                for (std::uint32_t t = 1; t < p_; ++t)
                    if (rotate(img, t) < x) return false;
        }
        return true;
    }
    std::uint32_t canonical(std::uint32_t x, bool translations) const noexcept {
        std::uint32_t best = x;
        for (std::uint32_t d = 1; d < p_; ++d) {
            std::uint32_t img = dilate(x, d);
            best = std::min(best, img);
            if (translations)
                for (std::uint32_t t = 1; t < p_; ++t) best = std::min(best, rotate(img, t));
        }
        return best;
    }
    std::vector<std::uint32_t> orbit(std::uint32_t x, bool translations) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t d = 1; d < p_; ++d) {
            std::uint32_t img = dilate(x, d);
            out.push_back(img);
            if (translations)
                for (std::uint32_t t = 1; t < p_; ++t) out.push_back(rotate(img, t));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    PrimeModulus mod_;
    std::uint32_t p_;
    unsigned chunks_;
    std::uint32_t full_ = 0;
    std::vector<std::uint32_t> table_;
};

struct GeneratorRange {
    std::uint8_t min = 0xFF;
    std::uint8_t max = 0;
    void add(std::uint8_t size) {
        min = std::min(min, size);
        max = std::max(max, size);
    }
    void merge(const GeneratorRange& o) {
        min = std::min(min, o.min);
        max = std::max(max, o.max);
    }
};

using GeneratorMap = std::unordered_map<std::uint32_t, GeneratorRange>;

}  // namespace detail

enum class CensusMethod { direct, symmetric };

inline std::string_view to_string(CensusMethod m) { return m == CensusMethod::direct ? "direct" : "symmetric"; }

struct CensusOptions {
    bool include_empty = true;
    unsigned workers = 1;
    bool record_timing = false;
};

inline constexpr std::uint32_t direct_census_limit = 25;
inline constexpr std::uint32_t symmetric_census_limit = 29;

struct CensusMember {
    std::uint32_t mask;         // kB - lB as a bit mask, residue 0 = bit 0
    std::uint8_t min_generator;  // smallest |B| with kB - lB equal to it
    std::uint8_t max_generator;
    friend bool operator==(const CensusMember&, const CensusMember&) = default;
};

struct CensusReport {
    std::uint32_t p = 0;
    unsigned k = 0, l = 0;
    bool include_empty = true;
    CensusMethod method = CensusMethod::direct;
    std::uint64_t total_distinct = 0;
    std::vector<std::uint64_t> size_histogram;  // index |A|
    std::vector<CensusMember> members;          // sorted by mask
    /// Generator-size split at p/((k+l+1)s), s = min_s(k+l).
    unsigned s = 0;
    double split_threshold = 0;
    std::uint64_t ss_prime_count = 0;         // some generator with |B| <= threshold
    std::uint64_t ss_double_prime_count = 0;  // some generator with |B| > threshold
    std::uint64_t min_generator_small = 0;    // classified by smallest generator
    std::uint64_t min_generator_large = 0;
    double lower_bound_value = 0;  // 2^{p/(2(k+l)-1)}
    double upper_bound_value = 0;  // 2^{p/(k+l+1)+(k+l-2)}
    std::optional<std::chrono::milliseconds> elapsed;

    /// Everything except method and timing.
    bool same_census(const CensusReport& o) const {
        return p == o.p && k == o.k && l == o.l && include_empty == o.include_empty &&
               total_distinct == o.total_distinct && size_histogram == o.size_histogram && members == o.members &&
               ss_prime_count == o.ss_prime_count && ss_double_prime_count == o.ss_double_prime_count;
    }
    std::optional<CensusMember> find(std::uint32_t mask) const {
        auto it = std::lower_bound(members.begin(), members.end(), mask,
                                   [](const CensusMember& m, std::uint32_t v) { return m.mask < v; });
        if (it != members.end() && it->mask == mask) return *it;
        return std::nullopt;
    }
};

namespace detail {

inline void check_census_args(std::uint32_t p, unsigned k, unsigned l, std::uint32_t limit) {
    if (k + l < 2) throw Error(ErrorKind::DomainError, "census needs k + l >= 2");
    if (p > limit)
        throw Error(ErrorKind::TooLarge, "census at p=" + std::to_string(p) + " exceeds the gate p <= " + std::to_string(limit));
}

inline CensusReport finish_report(std::uint32_t p, unsigned k, unsigned l, const CensusOptions& opt, CensusMethod method,
                                  std::vector<CensusMember> members) {
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.mask < b.mask; });
    CensusReport r;
    r.p = p;
    r.k = k;
    r.l = l;
    r.include_empty = opt.include_empty;
    r.method = method;
    r.total_distinct = members.size();
    r.size_histogram.assign(p + 1, 0);
    const unsigned order = k + l;
    r.s = min_s(order);
    const std::uint64_t denom = std::uint64_t{order + 1} * r.s;
    r.split_threshold = static_cast<double>(p) / static_cast<double>(denom);
    for (const auto& m : members) {
        r.size_histogram[std::popcount(m.mask)] += 1;
        // |B| <= p/((k+l+1)s)  <=>  |B| (k+l+1) s <= p
        if (m.min_generator * denom <= p) ++r.ss_prime_count;
        if (m.max_generator * denom > p) ++r.ss_double_prime_count;
    }
    r.min_generator_small = r.ss_prime_count;
    r.min_generator_large = r.total_distinct - r.ss_prime_count;
    r.lower_bound_value = std::exp2(static_cast<double>(p) / (2.0 * order - 1.0));
    r.upper_bound_value = std::exp2(static_cast<double>(p) / (order + 1.0) + (static_cast<double>(order) - 2.0));
    r.members = std::move(members);
    return r;
}

inline std::size_t census_chunks(std::uint32_t p) { return std::size_t{1} << std::min<std::uint32_t>(p, 6); }

}  // namespace detail

/// Every B in [0, 2^p); B = {} included iff include_empty.
inline CensusReport run_census(PrimeModulus mod, unsigned k, unsigned l, const CensusOptions& opt = {}) {
    const std::uint32_t p = mod.value();
    detail::check_census_args(p, k, l, direct_census_limit);
    auto start = std::chrono::steady_clock::now();
    const detail::MaskField field(mod);
    const SumsetSpec spec{k, l};
    const std::size_t chunks = detail::census_chunks(p);
    const std::uint64_t span = (1ULL << p) / chunks;

    auto parts = map_chunks(chunks, opt.workers, [&](std::size_t c) {
        detail::GeneratorMap seen;
        std::uint64_t begin = c * span, end = begin + span;
        if (begin == 0 && !opt.include_empty) begin = 1;
        for (std::uint64_t b = begin; b < end; ++b) {
            auto mask = static_cast<std::uint32_t>(b);
            seen[field.sumset(spec, mask)].add(static_cast<std::uint8_t>(std::popcount(mask)));
        }
        return seen;
    });

    detail::GeneratorMap merged;
    for (const auto& part : parts)
        for (const auto& [mask, range] : part) merged[mask].merge(range);
    std::vector<CensusMember> members;
    members.reserve(merged.size());
    for (const auto& [mask, range] : merged) members.push_back({mask, range.min, range.max});

    CensusReport r = detail::finish_report(p, k, l, opt, CensusMethod::direct, std::move(members));
    if (opt.record_timing)
        r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return r;
}

/// Whether translations of B act on kB - lB (as translation by (k-l)t).
inline bool census_uses_translations(PrimeModulus mod, unsigned k, unsigned l) {
    return (static_cast<std::int64_t>(k) - static_cast<std::int64_t>(l)) % static_cast<std::int64_t>(mod.value()) != 0;
}

/// Enumerates only orbit representatives of B under x -> dx (+ t when k != l
/// mod p). Since d(kB - lB) = k(dB) - l(dB) and
/// k(B+t) - l(B+t) = (kB - lB) + (k-l)t, the family of sumsets is a union of
/// orbits of the same group; each orbit is expanded back into its members.
inline CensusReport run_census_symmetric(PrimeModulus mod, unsigned k, unsigned l, const CensusOptions& opt = {}) {
    const std::uint32_t p = mod.value();
    detail::check_census_args(p, k, l, symmetric_census_limit);
    auto start = std::chrono::steady_clock::now();
    const detail::MaskField field(mod);
    const SumsetSpec spec{k, l};
    const bool translations = census_uses_translations(mod, k, l);
    const std::size_t chunks = detail::census_chunks(p);
    const std::uint64_t span = (1ULL << p) / chunks;

    auto parts = map_chunks(chunks, opt.workers, [&](std::size_t c) {
        detail::GeneratorMap classes;  // canonical sumset -> generator sizes
        std::uint64_t begin = c * span, end = begin + span;
        if (begin == 0 && !opt.include_empty) begin = 1;
        for (std::uint64_t b = begin; b < end; ++b) {
            auto mask = static_cast<std::uint32_t>(b);
            if (!field.is_canonical(mask, translations)) continue;
            std::uint32_t sum = field.sumset(spec, mask);
            classes[field.canonical(sum, translations)].add(static_cast<std::uint8_t>(std::popcount(mask)));
        }
        return classes;
    });

    detail::GeneratorMap merged;
    for (const auto& part : parts)
        for (const auto& [mask, range] : part) merged[mask].merge(range);

    std::vector<CensusMember> members;
    for (const auto& [rep, range] : merged)
        for (std::uint32_t m : field.orbit(rep, translations)) members.push_back({m, range.min, range.max});

    CensusReport r = detail::finish_report(p, k, l, opt, CensusMethod::symmetric, std::move(members));
    if (opt.record_timing)
        r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return r;
}

inline CensusReport run_census(PrimeModulus mod, unsigned k, unsigned l, CensusMethod method, const CensusOptions& opt) {
    return method == CensusMethod::direct ? run_census(mod, k, l, opt) : run_census_symmetric(mod, k, l, opt);
}

struct BoundComparison {
    double lower_bound_value = 0;
    double upper_bound_value = 0;
    double ratio_to_lower = 0;  // total / 2^{p/(2(k+l)-1)}
    double ratio_to_upper = 0;  // total / 2^{p/(k+l+1)+(k+l-2)}
};

/// Ratios only: the constants in the asymptotic bounds are not specified, so
/// nothing here is a pass/fail test.
inline BoundComparison bound_report(const CensusReport& r) {
    const double total = static_cast<double>(r.total_distinct);
    return {r.lower_bound_value, r.upper_bound_value, total / r.lower_bound_value, total / r.upper_bound_value};
}

}  // namespace sumsets
