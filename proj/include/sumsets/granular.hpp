#pragma once

// Granularization of a set A: choose a frequency dilation q under which the
// spectrum of A is nearly invariant under the interval kernel, then replace A
// by the union of partition intervals in which it is dense.

#include <sumsets/error.hpp>
#include <sumsets/parallel.hpp>
#include <sumsets/sumset.hpp>
#include <sumsets/transform.hpp>
#include <sumsets/zp_core.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace sumsets {

struct GranularizationParams {
    unsigned k = 2;
    unsigned l = 0;
    std::uint32_t L = 1;
    double eps1 = 0.5;
    double eps2 = 0.5;
    double eps3 = 0.5;
    /// |A| / p for the set the parameters describe.
    double alpha = 1.0;

    unsigned order() const noexcept { return k + l; }

    void validate() const {
        if (k + l < 2) throw Error(ErrorKind::DomainError, "granularization needs k + l >= 2");
        if (L < 1) throw Error(ErrorKind::InvalidLength, "L must be >= 1");
        if (!(eps1 > 0) || !(eps2 > 0) || !(eps3 > 0)) throw Error(ErrorKind::DomainError, "eps values must be > 0");
        if (!(alpha > 0) || alpha > 1) throw Error(ErrorKind::DomainError, "alpha must lie in (0, 1]");
    }

    static GranularizationParams for_set(const ResidueSet& a, unsigned k, unsigned l, std::uint32_t L, double eps1,
                                         double eps2, double eps3) {
        GranularizationParams params{k, l, L, eps1, eps2, eps3, static_cast<double>(a.size()) / a.p()};
        params.validate();
        return params;
    }
};

/// delta = 4^{-(k+l)} eps1^{k+l} eps2^{k+l-1} eps3^{1/2} alpha^{-(k+l)+3/2}
inline double delta_of(const GranularizationParams& params) {
    params.validate();
    const double m = params.order();
    double log_delta = -m * std::log(4.0) + m * std::log(params.eps1) + (m - 1) * std::log(params.eps2) +
                       0.5 * std::log(params.eps3) + (1.5 - m) * std::log(params.alpha);
    return std::exp(log_delta);
}

/// D = {x != 0 : |chi_A^(x)| >= delta p}.
inline ResidueSet significant_spectrum(const Spectrum& spectrum, double delta) {
    if (!(delta > 0)) throw Error(ErrorKind::DomainError, "delta must be > 0");
    const std::uint32_t p = spectrum.modulus.value();
    ResidueSet d(spectrum.modulus);
    for (std::uint32_t x = 1; x < p; ++x)
        if (std::abs(spectrum.values[x]) >= delta * p) d.insert(x);
    return d;
}

inline ResidueSet significant_spectrum(const ResidueSet& a, double delta) { return significant_spectrum(dft(a), delta); }

/// f(x) = (1/(2L-1)) sum_{|j| < L} e^{2 pi i jqx/p}, which is real:
/// (1 + 2 sum_{j=1}^{L-1} cos(2 pi jqx/p)) / (2L-1).
inline ZpFunction kernel(std::int64_t q, std::uint32_t L, PrimeModulus mod) {
    if (L < 1) throw Error(ErrorKind::InvalidLength, "kernel length must be >= 1");
    const std::uint32_t p = mod.value();
    const std::uint32_t qr = mod.reduce(q);
    ZpFunction f(mod);
    for (std::uint32_t x = 0; x < p; ++x) {
        const std::uint32_t step = mod.mul(qr, x);
        double acc = 1.0;
        std::uint32_t arg = 0;
        for (std::uint32_t j = 1; j < L; ++j) {
            arg = mod.add(arg, step);
            acc += 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(arg) / p);
        }
        f.values[x] = acc / (2.0 * L - 1.0);
    }
    return f;
}

struct QSearchResult {
    std::uint32_t q = 1;
    double max_dev = 0;  // max_x |chi_A^(x)| |1 - f_q(x)^{k+l}|
    bool satisfied = false;
};

namespace detail {

// deviation(q) = max_x mag[x] * h[qx], h(z) = |1 - f_1(z)^{k+l}|, since f_q(x) = f_1(qx).
inline double deviation_for(std::uint32_t q, const std::vector<double>& mag, const std::vector<double>& h,
                            PrimeModulus mod) {
    double worst = 0;
    std::uint32_t z = 0;
    for (std::uint32_t x = 0; x < mag.size(); ++x) {
        worst = std::max(worst, mag[x] * h[z]);
        z = mod.add(z, q);
    }
    return worst;
}

inline std::vector<double> kernel_defect(std::uint32_t L, unsigned order, PrimeModulus mod) {
    ZpFunction f = kernel(1, L, mod);
    std::vector<double> h(mod.value());
    for (std::uint32_t z = 0; z < h.size(); ++z) h[z] = std::abs(1.0 - std::pow(f.values[z], static_cast<int>(order)));
    return h;
}

}  // namespace detail

/// Deviation of the smoothing inequality for one fixed q.
inline double kernel_deviation(const ResidueSet& a, std::int64_t q, std::uint32_t L, unsigned order) {
    Spectrum s = dft(a);
    std::vector<double> mag(a.p());
    for (std::uint32_t x = 0; x < a.p(); ++x) mag[x] = std::abs(s.values[x]);
    return detail::deviation_for(a.modulus().reduce(q), mag, detail::kernel_defect(L, order, a.modulus()), a.modulus());
}

/// Scans q in [1, p-1] for the smallest maximum deviation; ties go to the
/// smallest q.
inline QSearchResult find_q(const ResidueSet& a, double delta, std::uint32_t L, unsigned k, unsigned l,
                            unsigned workers = 1) {
    if (k + l < 1) throw Error(ErrorKind::DomainError, "need k + l >= 1");
    const PrimeModulus mod = a.modulus();
    const std::uint32_t p = mod.value();
    Spectrum s = dft(a);
    std::vector<double> mag(p);
    for (std::uint32_t x = 0; x < p; ++x) mag[x] = std::abs(s.values[x]);
    const auto h = detail::kernel_defect(L, k + l, mod);

    constexpr std::size_t chunks = 32;
    auto parts = map_chunks(chunks, workers, [&](std::size_t c) {
        auto [begin, end] = chunk_range(p - 1, chunks, c);
        QSearchResult best{0, std::numeric_limits<double>::infinity(), false};
        for (std::size_t i = begin; i < end; ++i) {
            std::uint32_t q = static_cast<std::uint32_t>(i + 1);
            double dev = detail::deviation_for(q, mag, h, mod);
            if (dev < best.max_dev) best = {q, dev, false};
        }
        return best;
    });
    QSearchResult best{0, std::numeric_limits<double>::infinity(), false};
    for (const auto& part : parts)
        if (part.q != 0 && part.max_dev < best.max_dev) best = part;
    best.satisfied = best.max_dev <= delta * p;
    return best;
}

/// Union of the intervals J of R_{y,L} with |A cap J| >= eps1 L / 2. Remainder
/// residues are never included.
inline ResidueSet granularize(const ResidueSet& a, std::int64_t y, std::uint32_t L, double eps1) {
    IntervalPartition part = make_partition(a.modulus(), y, L);
    const double need = eps1 * L / 2.0;
    ResidueSet out(a.modulus());
    for (const auto& interval : part.intervals) {
        std::size_t hits = 0;
        for (auto r : interval) hits += a.contains(r);
        if (static_cast<double>(hits) >= need)
            for (auto r : interval) out.insert(r);
    }
    return out;
}

/// The offset y' with R_{y',L} = -R_{y,L}, so that
/// granularize(-A, y', L, e) = -granularize(A, y, L, e).
inline std::uint32_t mirrored_offset(PrimeModulus mod, std::int64_t y, std::uint32_t L) {
    const std::int64_t n = mod.value() / L;
    return mod.reduce(-y - 1 - n * static_cast<std::int64_t>(L));
}

/// |A \ A'|
inline std::size_t removed_mass(const ResidueSet& a, const ResidueSet& a_prime) { return (a - a_prime).size(); }

/// chi_1 = (chi_A * chi_J)/|J| and chi_2 = (chi_{-A} * chi_J)/|J| with
/// J = {-(L-1), ..., L-1}, each computed both as an exact convolution and as
/// the window count |A cap (J + x)|.
struct SmoothedIndicators {
    std::uint64_t window = 0;  // |J| as a subset of Z_p
    std::vector<std::uint64_t> conv1, window1, conv2, window2;
    ZpFunction chi1, chi2;

    bool formulas_agree() const { return conv1 == window1 && conv2 == window2; }
};

inline ResidueSet symmetric_window(PrimeModulus mod, std::uint32_t L) {
    ResidueSet j(mod);
    for (std::int64_t i = -static_cast<std::int64_t>(L) + 1; i < static_cast<std::int64_t>(L); ++i) j.insert(mod.reduce(i));
    return j;
}

inline SmoothedIndicators smoothed_indicators(const ResidueSet& a, std::uint32_t L) {
    if (L < 1) throw Error(ErrorKind::InvalidLength, "L must be >= 1");
    const PrimeModulus mod = a.modulus();
    const std::uint32_t p = mod.value();
    const ResidueSet window = symmetric_window(mod, L);
    const ResidueSet minus_a = negate(a);

    auto by_window = [&](const ResidueSet& s) {
        std::vector<std::uint64_t> out(p, 0);
        const auto offsets = window.elements();
        for (std::uint32_t x = 0; x < p; ++x)
            for (auto j : offsets) out[x] += s.contains(mod.add(j, x));
        return out;
    };
    auto by_convolution = [&](const ResidueSet& s) {
        std::vector<ResidueSet> factors{s, window};
        return convolve_counts(factors).counts;
    };

    SmoothedIndicators out{window.size(), by_convolution(a), by_window(a), by_convolution(minus_a), by_window(minus_a),
                           ZpFunction(mod), ZpFunction(mod)};
    for (std::uint32_t x = 0; x < p; ++x) {
        out.chi1.values[x] = static_cast<double>(out.conv1[x]) / out.window;
        out.chi2.values[x] = static_cast<double>(out.conv2[x]) / out.window;
    }
    return out;
}

struct ExceptionalSet {
    ResidueSet members;
    double threshold = 0;  // (eps2 p)^{k+l-1}
};

/// F = {x : (chi_{A'}^{*k} * chi_{-A'}^{*l})(x) >= (eps2 p)^{k+l-1}, x not in kA - lA}.
inline ExceptionalSet exceptional_set(const ResidueSet& a, const ResidueSet& a_prime, unsigned k, unsigned l, double eps2) {
    require_same_modulus(a.modulus(), a_prime.modulus());
    if (k + l < 2) throw Error(ErrorKind::DomainError, "need k + l >= 2");
    if (!(eps2 > 0)) throw Error(ErrorKind::DomainError, "eps2 must be > 0");
    const SumsetSpec spec{k, l};
    const double threshold = std::pow(eps2 * a.p(), static_cast<double>(k + l - 1));
    ExceptionalSet out{ResidueSet(a.modulus()), threshold};
    if (a_prime.empty()) return out;
    const MultiplicityTable counts = sumset_counts(spec, a_prime);
    const ResidueSet sums = iterated_sumset(spec, a);
    for (std::uint32_t x = 0; x < a.p(); ++x)
        if (static_cast<double>(counts.counts[x]) >= threshold && !sums.contains(x)) out.members.insert(x);
    return out;
}

/// log of the right side of the size condition on p, in long double:
/// exponent * log(sqrt(8(k+l)) L) with
/// exponent = 4^{2(k+l)} alpha^{2(k+l-1)} eps1^{-2(k+l)} eps2^{-2(k+l-1)} eps3^{-1}.
inline long double condition3_log_threshold(const GranularizationParams& params) {
    params.validate();
    const long double m = params.order();
    long double log_exponent = 2 * m * std::log(4.0L) + 2 * (m - 1) * std::log(static_cast<long double>(params.alpha)) -
                               2 * m * std::log(static_cast<long double>(params.eps1)) -
                               2 * (m - 1) * std::log(static_cast<long double>(params.eps2)) -
                               std::log(static_cast<long double>(params.eps3));
    long double log_base = 0.5L * std::log(8.0L * m) + std::log(static_cast<long double>(params.L));
    return std::exp(log_exponent) * log_base;
}

inline bool condition3_holds(std::uint64_t p, const GranularizationParams& params) {
    return std::log(static_cast<long double>(p)) > condition3_log_threshold(params);
}

struct GranularizationResult {
    GranularizationParams params;
    double delta = 0;
    ResidueSet significant;  // D
    std::uint32_t q = 1;
    /// dilate(frame_dilation, A_prime) is a union of intervals of R_{offset,L};
    /// equals q^{-1} mod p.
    std::uint32_t frame_dilation = 1;
    std::uint32_t offset = 0;
    double max_dev = 0;
    bool cond4_satisfied = false;
    bool condition3 = false;
    ResidueSet a_prime;
    std::size_t removed = 0;
    ExceptionalSet exceptional;
};

/// The whole pipeline: delta, D, q-search, granularization in the frame
/// q^{-1} * A, map back, and the exceptional set.
inline GranularizationResult run_granularization(const ResidueSet& a, const GranularizationParams& params,
                                                 std::int64_t offset = 0, unsigned workers = 1) {
    params.validate();
    const PrimeModulus mod = a.modulus();
    if (params.L > mod.value()) throw Error(ErrorKind::InvalidLength, "L exceeds p");
    const double delta = delta_of(params);
    QSearchResult qs = find_q(a, delta, params.L, params.k, params.l, workers);
    const std::uint32_t q_inv = mod.inverse(qs.q);

    ResidueSet framed = dilate(q_inv, a);
    ResidueSet framed_prime = granularize(framed, offset, params.L, params.eps1);
    ResidueSet a_prime = dilate(qs.q, framed_prime);

    GranularizationResult out{params,
                              delta,
                              significant_spectrum(a, delta),
                              qs.q,
                              q_inv,
                              mod.reduce(offset),
                              qs.max_dev,
                              qs.satisfied,
                              condition3_holds(mod.value(), params),
                              a_prime,
                              removed_mass(a, a_prime),
                              exceptional_set(a, a_prime, params.k, params.l, params.eps2)};
    return out;
}

}  // namespace sumsets
