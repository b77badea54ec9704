#pragma once

// Instance checkers for the additive inequalities behind the counting
// argument (Cauchy-Davenport, Pollard and its m-fold and threshold
// corollaries) and exact evaluators for the counting lemmas.

#include <sumsets/error.hpp>
#include <sumsets/parallel.hpp>
#include <sumsets/rng.hpp>
#include <sumsets/sumset.hpp>
#include <sumsets/transform.hpp>
#include <sumsets/zp_core.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sumsets {

using BigInt = boost::multiprecision::cpp_int;

enum class CheckMode { exhaustive, random };

inline std::string_view to_string(CheckMode m) { return m == CheckMode::exhaustive ? "exhaustive" : "random"; }

struct VerifyOptions {
    CheckMode mode = CheckMode::exhaustive;
    /// Instances drawn in random mode.
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    /// Largest set cardinality considered; 0 means p.
    unsigned max_set_size = 0;
};

struct Counterexample {
    std::vector<ResidueSet> sets;
    std::vector<std::pair<std::string, std::int64_t>> parameters;
    double lhs = 0;
    double rhs = 0;
};

struct InequalityReport {
    std::string name;
    std::uint32_t p = 0;
    unsigned m = 0;
    std::string mode;
    std::uint64_t instances_checked = 0;
    std::vector<Counterexample> violations;
    /// Extra scalar results (e.g. the s found by min_s).
    std::vector<std::pair<std::string, double>> values;

    bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustive suites stop at this many set tuples.
inline constexpr std::uint64_t exhaustive_instance_limit = 1ULL << 23;

// ---------------------------------------------------------------------------
// Bounds

inline std::uint64_t cd_bound(std::span<const std::uint64_t> sizes, std::uint64_t p) {
    if (sizes.empty()) throw Error(ErrorKind::DomainError, "cd_bound needs at least one size");
    std::uint64_t total = 0;
    for (auto s : sizes) {
        if (s < 1) throw Error(ErrorKind::DomainError, "set sizes must be >= 1");
        total += s;
    }
    return std::min<std::uint64_t>(p, total - (sizes.size() - 1));
}

namespace detail {

struct TupleSource {
    PrimeModulus modulus;
    unsigned m;
    VerifyOptions options;
    std::vector<std::uint64_t> candidates;  // exhaustive: every admissible subset mask
    std::uint64_t count = 0;

    TupleSource(PrimeModulus mod, unsigned m_, const VerifyOptions& opt) : modulus(mod), m(m_), options(opt) {
        const std::uint32_t p = mod.value();
        if (m < 1) throw Error(ErrorKind::DomainError, "need m >= 1");
        unsigned cap = options.max_set_size == 0 ? p : std::min<unsigned>(options.max_set_size, p);
        options.max_set_size = cap;
        if (options.mode == CheckMode::random) {
            count = options.samples;
            return;
        }
        if (p > 24) throw Error(ErrorKind::TooLarge, "exhaustive mode needs p <= 24");
        for (std::uint64_t mask = 1; mask < (1ULL << p); ++mask)
            if (static_cast<unsigned>(std::popcount(mask)) <= cap) candidates.push_back(mask);
        long double total = std::pow(static_cast<long double>(candidates.size()), m);
        if (total > static_cast<long double>(exhaustive_instance_limit)) {
            throw Error(ErrorKind::TooLarge, "exhaustive suite at p=" + std::to_string(p) + ", m=" + std::to_string(m) +
                                                 " exceeds " + std::to_string(exhaustive_instance_limit) + " tuples");
        }
        count = 1;
        for (unsigned i = 0; i < m; ++i) count *= candidates.size();
    }

    std::vector<ResidueSet> instance(std::uint64_t index) const {
        std::vector<ResidueSet> sets;
        sets.reserve(m);
        if (options.mode == CheckMode::exhaustive) {
            for (unsigned i = 0; i < m; ++i) {
                sets.push_back(ResidueSet::from_mask(modulus, candidates[index % candidates.size()]));
                index /= candidates.size();
            }
            return sets;
        }
        // random: each set has a uniform size in [1, cap], then a uniform subset of that size
        auto rng = substream(options.seed, index);
        const std::uint32_t p = modulus.value();
        std::vector<std::uint32_t> pool(p);
        for (unsigned i = 0; i < m; ++i) {
            std::iota(pool.begin(), pool.end(), 0U);
            std::uniform_int_distribution<unsigned> size_dist(1, options.max_set_size);
            unsigned size = size_dist(rng);
            ResidueSet s(modulus);
            for (unsigned j = 0; j < size; ++j) {
                std::uniform_int_distribution<std::uint32_t> pick(j, p - 1);
                std::swap(pool[j], pool[pick(rng)]);
                s.insert(pool[j]);
            }
            sets.push_back(std::move(s));
        }
        return sets;
    }
};

/// Runs check(sets, violations) over every instance; merges in instance order.
template <class Check>
InequalityReport run_suite(std::string name, PrimeModulus mod, unsigned m, const VerifyOptions& opt, Check check) {
    TupleSource source(mod, m, opt);
    constexpr std::size_t chunks = 64;
    auto parts = map_chunks(chunks, opt.workers, [&](std::size_t c) {
        auto [begin, end] = chunk_range(source.count, chunks, c);
        std::vector<Counterexample> found;
        for (std::uint64_t i = begin; i < end; ++i) check(source.instance(i), found);
        return found;
    });
    InequalityReport report{std::move(name), mod.value(), m, std::string(to_string(opt.mode)), source.count, {}, {}};
    for (auto& part : parts)
        for (auto& v : part) report.violations.push_back(std::move(v));
    return report;
}

inline std::uint64_t total_size(const std::vector<ResidueSet>& sets) {
    std::uint64_t s = 0;
    for (const auto& a : sets) s += a.size();
    return s;
}
inline std::uint64_t min_size(const std::vector<ResidueSet>& sets) {
    std::uint64_t s = sets.front().size();
    for (const auto& a : sets) s = std::min<std::uint64_t>(s, a.size());
    return s;
}

/// level[i] = |S_{i,m}| for i in [0, limit].
inline std::vector<std::uint64_t> level_sizes(const MultiplicityTable& t, std::uint64_t limit) {
    std::vector<std::uint64_t> level(limit + 1, 0);
    for (auto c : t.counts) level[std::min(c, limit)] += 1;
    // turn exact-count histogram into "at least i" counts
    for (std::uint64_t i = limit; i-- > 0;) level[i] += level[i + 1];
    return level;
}

inline Counterexample make_counterexample(const std::vector<ResidueSet>& sets, std::string param, std::int64_t value,
                                          double lhs, double rhs) {
    Counterexample c{sets, {}, lhs, rhs};
    if (!param.empty()) c.parameters.emplace_back(std::move(param), value);
    return c;
}

/// Sum_{i=1..t} |S_{i,m}| >= t min(p, sum|A_i| - t - m + 2) for all t <= min|A_i|.
inline void check_pollard_family(const std::vector<ResidueSet>& sets, std::vector<Counterexample>& out) {
    const std::int64_t p = sets.front().p();
    const std::int64_t m = static_cast<std::int64_t>(sets.size());
    const std::uint64_t tmax = min_size(sets);
    auto level = level_sizes(convolve_counts(sets), tmax);
    const std::int64_t total = static_cast<std::int64_t>(total_size(sets));
    std::int64_t lhs = 0;
    for (std::uint64_t t = 1; t <= tmax; ++t) {
        lhs += static_cast<std::int64_t>(level[t]);
        std::int64_t ti = static_cast<std::int64_t>(t);
        std::int64_t rhs = ti * std::min(p, total - ti - m + 2);
        if (lhs < rhs) out.push_back(make_counterexample(sets, "t", ti, static_cast<double>(lhs), static_cast<double>(rhs)));
    }
}

}  // namespace detail

/// |A_1 + ... + A_m| >= min(p, sum|A_i| - (m-1)).
inline InequalityReport verify_cd(PrimeModulus mod, unsigned m, const VerifyOptions& opt = {}) {
    return detail::run_suite("cauchy_davenport", mod, m, opt, [](const std::vector<ResidueSet>& sets, auto& out) {
        std::vector<std::uint64_t> sizes;
        for (const auto& a : sets) sizes.push_back(a.size());
        std::uint64_t rhs = cd_bound(sizes, sets.front().p());
        std::uint64_t lhs = msum(sets).size();
        if (lhs < rhs) out.push_back(detail::make_counterexample(sets, "", 0, double(lhs), double(rhs)));
    });
}

inline InequalityReport verify_pollard(PrimeModulus mod, const VerifyOptions& opt = {}) {
    return detail::run_suite("pollard", mod, 2, opt, detail::check_pollard_family);
}

inline InequalityReport verify_lemma4(PrimeModulus mod, unsigned m, const VerifyOptions& opt = {}) {
    if (m < 2) throw Error(ErrorKind::DomainError, "m-fold Pollard bound needs m >= 2");
    return detail::run_suite("pollard_mfold", mod, m, opt, detail::check_pollard_family);
}

/// |S_{h,m}| >= min(p, sum|A_i| - m + 2) - 2 sqrt(hp) for every h <= min|A_i|,
/// tested in integers: with D = min(...) - |S_h|, a violation needs D > 0 and
/// D^2 > 4hp.
/// The value "violations_hp_le_min2" counts violations with h p <= min|A_i|^2,
/// the range where t = (hp)^{1/2} fits under min|A_i|.
inline InequalityReport verify_lemma5(PrimeModulus mod, unsigned m, const VerifyOptions& opt = {}) {
    if (m < 2) throw Error(ErrorKind::DomainError, "threshold bound needs m >= 2");
    auto rep = detail::run_suite("threshold_lower_bound", mod, m, opt, [](const std::vector<ResidueSet>& sets, auto& out) {
        const std::int64_t p = sets.front().p();
        const std::int64_t mm = static_cast<std::int64_t>(sets.size());
        const std::uint64_t hmax = detail::min_size(sets);
        auto level = detail::level_sizes(convolve_counts(sets), hmax);
        const std::int64_t base = std::min(p, static_cast<std::int64_t>(detail::total_size(sets)) - mm + 2);
        for (std::uint64_t h = 1; h <= hmax; ++h) {
            std::int64_t lhs = static_cast<std::int64_t>(level[h]);
            std::int64_t gap = base - lhs;
            std::int64_t hp4 = 4 * static_cast<std::int64_t>(h) * p;
            if (gap > 0 && gap * gap > hp4) {
                double rhs = static_cast<double>(base) - 2.0 * std::sqrt(static_cast<double>(h) * static_cast<double>(p));
                out.push_back(detail::make_counterexample(sets, "h", static_cast<std::int64_t>(h), double(lhs), rhs));
            }
        }
    });
    std::uint64_t in_range = 0;
    for (const auto& v : rep.violations) {
        const std::uint64_t lo = detail::min_size(v.sets);
        in_range += static_cast<std::uint64_t>(v.parameters.front().second) * mod.value() <= lo * lo;
    }
    rep.values.emplace_back("violations_hp_le_min2", static_cast<double>(in_range));
    return rep;
}

// ---------------------------------------------------------------------------
// Counting lemmas

/// Smallest positive s with e s (r+1) <= 2^s.
inline unsigned min_s(unsigned r) {
    if (r < 1) throw Error(ErrorKind::DomainError, "min_s needs r >= 1");
    for (unsigned s = 1;; ++s) {
        if (std::log2(std::numbers::e * s * (r + 1.0)) <= static_cast<double>(s)) return s;
    }
}

inline bool min_s_condition(unsigned r, unsigned s) {
    return std::log2(std::numbers::e * s * (r + 1.0)) <= static_cast<double>(s);
}

/// log2 of a positive big integer, to double precision.
inline double log2_big(const BigInt& v) {
    if (v <= 0) throw Error(ErrorKind::DomainError, "log2 of non-positive value");
    std::size_t top = boost::multiprecision::msb(v);
    if (top < 62) return std::log2(static_cast<double>(static_cast<std::uint64_t>(v)));
    std::size_t drop = top - 62;
    auto head = static_cast<std::uint64_t>(BigInt(v >> drop));
    return std::log2(static_cast<double>(head)) + static_cast<double>(drop);
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// sum_{0 <= i <= m} C(n, i)
inline BigInt binomial_tail(std::uint64_t n, std::uint64_t m) {
    BigInt sum = 0, term = 1;
    for (std::uint64_t i = 0; i <= std::min(m, n); ++i) {
        sum += term;
        term *= n - i;
        term /= i + 1;
    }
    return sum;
}

struct BinomialTailBound {
    BigInt exact;
    double bound_log2 = 0;  // log2 (e n/m)^m

    double bound() const { return std::exp2(bound_log2); }
    bool holds() const { return log2_big(exact) <= bound_log2; }
};

inline BinomialTailBound binom_tail_bound(std::uint64_t n, std::uint64_t m) {
    if (m < 1 || m > n) throw Error(ErrorKind::DomainError, "binomial tail bound needs 1 <= m <= n");
    double lb = static_cast<double>(m) * std::log2(std::numbers::e * static_cast<double>(n) / static_cast<double>(m));
    return {binomial_tail(n, m), lb};
}

struct TFamilyCount {
    BigInt exact;             // |{A : |A| <= p/((r+1)s)}|
    double threshold = 0;     // p/((r+1)s)
    std::uint64_t max_size = 0;
    double bound_log2 = 0;    // p/(r+1)

    bool holds() const { return log2_big(exact) <= bound_log2; }
};

inline TFamilyCount t_family_count(std::uint64_t p, unsigned r, unsigned s) {
    if (r < 1 || s < 1) throw Error(ErrorKind::DomainError, "t_family_count needs r, s >= 1");
    TFamilyCount out;
    const std::uint64_t denom = std::uint64_t{r + 1} * s;
    out.threshold = static_cast<double>(p) / static_cast<double>(denom);
    out.max_size = p / denom;
    out.exact = binomial_tail(p, out.max_size);
    out.bound_log2 = static_cast<double>(p) / (r + 1.0);
    return out;
}

struct GranularCount {
    std::uint64_t exact = 0;  // |G_L(Z_p)|
    double bound_log2 = 0;    // log2(p 2^{p/L})
    double union_bound_log2 = 0;  // log2(p (p-1) 2^{floor(p/L)}): partitions x subsets x units

    double bound() const { return std::exp2(bound_log2); }
    bool holds() const { return std::log2(static_cast<double>(exact)) <= bound_log2; }
    bool holds_union_bound() const { return std::log2(static_cast<double>(exact)) <= union_bound_log2; }
};

/// Enumerates every d * U with d a unit, U a union of intervals of some
/// R_{y,L}, and counts the distinct sets. Feasible while
/// p (p-1) 2^{floor(p/L)} <= 2^30 and p <= 23.
inline GranularCount granular_family_count(std::uint32_t p, std::uint32_t L) {
    PrimeModulus mod(p);
    if (L < 1 || L > p) throw Error(ErrorKind::InvalidLength, "L outside [1, p]");
    const std::uint32_t n = p / L;
    if (p > 23 || std::log2(double(p) * (p - 1)) + n > 30.0)
        throw Error(ErrorKind::TooLarge, "granular enumeration at p=" + std::to_string(p) + ", L=" + std::to_string(L));

    // byte-sliced dilation tables: dil[d][chunk][byte]
    const unsigned chunks = (p + 7) / 8;
    std::vector<std::uint32_t> dil(std::size_t{p} * chunks * 256, 0);
    for (std::uint32_t d = 1; d < p; ++d)
        for (unsigned c = 0; c < chunks; ++c)
            for (unsigned b = 0; b < 256; ++b) {
                std::uint32_t img = 0;
                for (unsigned j = 0; j < 8; ++j) {
                    std::uint32_t r = c * 8 + j;
                    if ((b >> j) & 1U && r < p) img |= 1U << mod.mul(d, r);
                }
                dil[(std::size_t{d} * chunks + c) * 256 + b] = img;
            }

    std::vector<std::uint64_t> seen((std::size_t{1} << p) / 64 + 1, 0);
    std::uint64_t distinct = 0;
    for (std::uint32_t y = 0; y < p; ++y) {
        IntervalPartition part = make_partition(mod, y, L);
        std::vector<std::uint32_t> masks(n, 0);
        for (std::uint32_t i = 0; i < n; ++i)
            for (auto r : part.intervals[i]) masks[i] |= 1U << r;
        for (std::uint64_t sel = 0; sel < (1ULL << n); ++sel) {
            std::uint32_t u = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                if ((sel >> i) & 1U) u |= masks[i];
            for (std::uint32_t d = 1; d < p; ++d) {
                std::uint32_t img = 0;
                for (unsigned c = 0; c < chunks; ++c) img |= dil[(std::size_t{d} * chunks + c) * 256 + ((u >> (8 * c)) & 0xFF)];
                std::uint64_t& word = seen[img / 64];
                std::uint64_t bit = 1ULL << (img % 64);
                if (!(word & bit)) {
                    word |= bit;
                    ++distinct;
                }
            }
        }
    }
    return {distinct, std::log2(static_cast<double>(p)) + static_cast<double>(p) / L,
            std::log2(static_cast<double>(p) * (p - 1)) + static_cast<double>(n)};
}

// ---------------------------------------------------------------------------
// Report-shaped wrappers for the counting lemmas and transform identities

/// min_s(r) for r in [1, r_max] (checked minimal) and |T_{r,s}| <= 2^{p/(r+1)}.
inline InequalityReport verify_lemma6(std::uint64_t p, unsigned r_min, unsigned r_max) {
    InequalityReport rep{"small_family_count", static_cast<std::uint32_t>(p), 0, "exhaustive", 0, {}, {}};
    for (unsigned r = r_min; r <= r_max; ++r) {
        unsigned s = min_s(r);
        rep.values.emplace_back("s(r=" + std::to_string(r) + ")", s);
        ++rep.instances_checked;
        if (!min_s_condition(r, s) || (s > 1 && min_s_condition(r, s - 1))) {
            rep.violations.push_back({{}, {{"r", r}, {"s", s}}, double(s), 0});
        }
        auto t = t_family_count(p, r, s);
        ++rep.instances_checked;
        if (!t.holds()) rep.violations.push_back({{}, {{"r", r}, {"s", s}}, log2_big(t.exact), t.bound_log2});
    }
    return rep;
}

/// |G_L(Z_p)| <= p 2^{p/L} for every L in [L_min, p].
inline InequalityReport verify_lemma7(std::uint32_t p, std::uint32_t L_min = 2) {
    InequalityReport rep{"granular_family_count", p, 0, "exhaustive", 0, {}, {}};
    for (std::uint32_t L = L_min; L <= p; ++L) {
        auto g = granular_family_count(p, L);
        ++rep.instances_checked;
        rep.values.emplace_back("G(L=" + std::to_string(L) + ")", static_cast<double>(g.exact));
        rep.values.emplace_back("bound(L=" + std::to_string(L) + ")", g.bound());
        if (!g.holds()) rep.violations.push_back({{}, {{"L", L}}, double(g.exact), g.bound()});
    }
    return rep;
}

namespace detail {

inline ResidueSet random_subset(PrimeModulus mod, std::mt19937_64& rng) {
    ResidueSet s(mod);
    for (std::uint32_t x = 0; x < mod.value(); ++x)
        if (rng() >> 63) s.insert(x);
    return s;
}

}  // namespace detail

/// Parseval gap <= 1e-6 p^2 on `samples` random subsets (each residue kept with
/// probability 1/2).
inline InequalityReport verify_parseval(PrimeModulus mod, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1) {
    const double tol = 1e-6 * double(mod.value()) * double(mod.value());
    auto parts = map_chunks(samples, workers, [&](std::size_t i) {
        auto rng = substream(seed, i);
        ResidueSet a = detail::random_subset(mod, rng);
        double gap = parseval_gap(a);
        std::vector<Counterexample> found;
        if (gap > tol) found.push_back({{a}, {}, gap, tol});
        return found;
    });
    InequalityReport rep{"parseval", mod.value(), 1, "random", samples, {}, {}};
    for (auto& part : parts)
        for (auto& v : part) rep.violations.push_back(std::move(v));
    return rep;
}

/// Convolution theorem deviation <= 1e-6 p^2 for m random characteristic functions.
inline InequalityReport verify_convolution_suite(PrimeModulus mod, unsigned m, std::uint64_t samples, std::uint64_t seed,
                                                 unsigned workers = 1) {
    const double tol = 1e-6 * double(mod.value()) * double(mod.value());
    auto parts = map_chunks(samples, workers, [&](std::size_t i) {
        auto rng = substream(seed, i);
        std::vector<ResidueSet> sets;
        std::vector<ZpFunction> fs;
        for (unsigned j = 0; j < m; ++j) {
            sets.push_back(detail::random_subset(mod, rng));
            fs.push_back(ZpFunction::characteristic(sets.back()));
        }
        double dev = verify_convolution_theorem(fs);
        std::vector<Counterexample> found;
        if (dev > tol) found.push_back({sets, {}, dev, tol});
        return found;
    });
    InequalityReport rep{"convolution_theorem", mod.value(), m, "random", samples, {}, {}};
    for (auto& part : parts)
        for (auto& v : part) rep.violations.push_back(std::move(v));
    return rep;
}

}  // namespace sumsets
