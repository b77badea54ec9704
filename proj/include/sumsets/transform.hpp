#pragma once

// Functions on Z_p, their Fourier transforms f^(x) = sum_y f(y) e^{2 pi i xy/p},
// and m-fold convolutions. Integer tables are exact; the complex paths use
// double precision and sum in ascending residue order.

#include <sumsets/error.hpp>
#include <sumsets/zp_core.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace sumsets {

struct ZpFunction {
    PrimeModulus modulus;
    std::vector<double> values;

    explicit ZpFunction(PrimeModulus m) : modulus(m), values(m.value(), 0.0) {}
    ZpFunction(PrimeModulus m, std::vector<double> v) : modulus(m), values(std::move(v)) {
        if (values.size() != m.value()) throw Error(ErrorKind::DomainError, "function needs exactly p values");
    }

    static ZpFunction characteristic(const ResidueSet& a) {
        ZpFunction f(a.modulus());
        a.for_each([&](std::uint32_t x) { f.values[x] = 1.0; });
        return f;
    }

    double operator()(std::uint32_t x) const { return values[x]; }
};

struct MultiplicityTable {
    PrimeModulus modulus;
    std::vector<std::uint64_t> counts;

    explicit MultiplicityTable(PrimeModulus m) : modulus(m), counts(m.value(), 0) {}

    std::uint64_t operator()(std::uint32_t x) const { return counts[x]; }
    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
    ResidueSet support() const {
        ResidueSet s(modulus);
        for (std::uint32_t x = 0; x < counts.size(); ++x)
            if (counts[x]) s.insert(x);
        return s;
    }
    std::uint64_t max() const { return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end()); }
};

struct Spectrum {
    PrimeModulus modulus;
    std::vector<std::complex<double>> values;

    std::complex<double> operator()(std::uint32_t x) const { return values[x]; }
};

namespace detail {

/// Table of e^{2 pi i r/p} for r in [0, p), so that e^{2 pi i xy/p} is looked
/// up at (xy mod p) rather than evaluated at a large argument.
inline std::vector<std::complex<double>> roots_of_unity(std::uint32_t p) {
    std::vector<std::complex<double>> w(p);
    for (std::uint32_t r = 0; r < p; ++r) {
        double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
        w[r] = {std::cos(a), std::sin(a)};
    }
    return w;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "multiplicity exceeds 64 bits");
    return r;
}

}  // namespace detail

inline Spectrum dft(const ZpFunction& f) {
    const PrimeModulus m = f.modulus;
    const std::uint32_t p = m.value();
    const auto w = detail::roots_of_unity(p);
    Spectrum out{m, std::vector<std::complex<double>>(p)};
    for (std::uint32_t x = 0; x < p; ++x) {
        std::complex<double> acc{0.0, 0.0};
        std::uint32_t idx = 0;  // x*y mod p
        for (std::uint32_t y = 0; y < p; ++y) {
            if (f.values[y] != 0.0) acc += f.values[y] * w[idx];
            idx = m.add(idx, x);
        }
        out.values[x] = acc;
    }
    return out;
}

inline Spectrum dft(const ResidueSet& a) { return dft(ZpFunction::characteristic(a)); }

/// (f * g)(x) = sum_y f(y) g(x - y).
inline ZpFunction convolve(const ZpFunction& f, const ZpFunction& g) {
    require_same_modulus(f.modulus, g.modulus);
    const PrimeModulus m = f.modulus;
    const std::uint32_t p = m.value();
    ZpFunction out(m);
    for (std::uint32_t x = 0; x < p; ++x) {
        double acc = 0.0;
        std::uint32_t diff = x;  // x - y mod p
        for (std::uint32_t y = 0; y < p; ++y) {
            acc += f.values[y] * g.values[diff];
            diff = diff == 0 ? p - 1 : diff - 1;
        }
        out.values[x] = acc;
    }
    return out;
}

/// f_1 * ... * f_m, folded left to right.
inline ZpFunction convolve(std::span<const ZpFunction> fs) {
    if (fs.empty()) throw Error(ErrorKind::DomainError, "convolution of zero functions");
    ZpFunction acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = convolve(acc, fs[i]);
    return acc;
}

/// Rounds an integer-valued function to a table; fails if it is not one.
inline MultiplicityTable to_multiplicity(const ZpFunction& f, double tolerance = 1e-6) {
    MultiplicityTable t(f.modulus);
    for (std::size_t x = 0; x < f.values.size(); ++x) {
        double v = std::round(f.values[x]);
        if (v < 0 || std::abs(v - f.values[x]) > tolerance)
            throw Error(ErrorKind::DomainError, "function is not a nonnegative integer table");
        t.counts[x] = static_cast<std::uint64_t>(v);
    }
    return t;
}

/// Exact (t * chi_A)(x) = sum_{a in A} t(x - a).
inline MultiplicityTable convolve_counts(const MultiplicityTable& t, const ResidueSet& a) {
    require_same_modulus(t.modulus, a.modulus());
    const PrimeModulus m = t.modulus;
    const std::uint32_t p = m.value();
    detail::checked_mul(std::max<std::uint64_t>(t.total(), 1), std::max<std::size_t>(a.size(), 1));
    MultiplicityTable out(m);
    a.for_each([&](std::uint32_t shift) {
        for (std::uint32_t y = 0; y < p; ++y) out.counts[m.add(y, shift)] += t.counts[y];
    });
    return out;
}

/// Exact table of chi_{A_1} * ... * chi_{A_m}: the number of tuples in
/// A_1 x ... x A_m summing to each residue.
inline MultiplicityTable convolve_counts(std::span<const ResidueSet> sets) {
    if (sets.empty()) throw Error(ErrorKind::DomainError, "convolution of zero sets");
    const PrimeModulus m = sets.front().modulus();
    std::uint64_t product = 1;
    for (const auto& s : sets) {
        require_same_modulus(m, s.modulus());
        product = detail::checked_mul(product, s.size());
    }
    MultiplicityTable acc(m);
    sets.front().for_each([&](std::uint32_t x) { acc.counts[x] = 1; });
    for (std::size_t i = 1; i < sets.size(); ++i) acc = convolve_counts(acc, sets[i]);
    return acc;
}

/// Largest |dft(f_1 * ... * f_m)(x) - prod_i dft(f_i)(x)| over x.
inline double verify_convolution_theorem(std::span<const ZpFunction> fs) {
    if (fs.size() < 2) throw Error(ErrorKind::DomainError, "convolution theorem check needs m >= 2");
    for (const auto& f : fs) require_same_modulus(fs.front().modulus, f.modulus);
    const std::uint32_t p = fs.front().modulus.value();
    Spectrum lhs = dft(convolve(fs));
    std::vector<std::complex<double>> rhs(p, {1.0, 0.0});
    for (const auto& f : fs) {
        Spectrum s = dft(f);
        for (std::uint32_t x = 0; x < p; ++x) rhs[x] *= s.values[x];
    }
    double worst = 0.0;
    for (std::uint32_t x = 0; x < p; ++x) worst = std::max(worst, std::abs(lhs.values[x] - rhs[x]));
    return worst;
}

/// |sum_x |chi_A^(x)|^2 - p |A||.
inline double parseval_gap(const ResidueSet& a) {
    Spectrum s = dft(a);
    double energy = 0.0;
    for (const auto& v : s.values) energy += std::norm(v);
    return std::abs(energy - static_cast<double>(a.p()) * static_cast<double>(a.size()));
}

/// S_h = {x : table(x) >= h}.
inline ResidueSet threshold_set(const MultiplicityTable& t, double h) {
    if (!(h > 0)) throw Error(ErrorKind::DomainError, "threshold must be positive");
    ResidueSet s(t.modulus);
    for (std::uint32_t x = 0; x < t.counts.size(); ++x)
        if (static_cast<double>(t.counts[x]) >= h) s.insert(x);
    return s;
}

/// Integer-threshold form used by the inequality suites.
inline ResidueSet threshold_set_at(const MultiplicityTable& t, std::uint64_t h) {
    if (h == 0) throw Error(ErrorKind::DomainError, "threshold must be positive");
    ResidueSet s(t.modulus);
    for (std::uint32_t x = 0; x < t.counts.size(); ++x)
        if (t.counts[x] >= h) s.insert(x);
    return s;
}

}  // namespace sumsets
