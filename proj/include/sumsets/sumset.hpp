#pragma once

// kB - lB and general m-fold sumsets, by shifted bit-vector unions and
// independently as the support of an exact integer convolution.

#include <sumsets/error.hpp>
#include <sumsets/transform.hpp>
#include <sumsets/zp_core.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sumsets {

struct SumsetSpec {
    unsigned k = 0;
    unsigned l = 0;

    unsigned order() const noexcept { return k + l; }
    friend bool operator==(SumsetSpec, SumsetSpec) = default;
};

/// Throws unless k + l >= minimum_order.
inline void require_order(SumsetSpec spec, unsigned minimum_order) {
    if (spec.order() < minimum_order) {
        throw Error(ErrorKind::DomainError, "need k + l >= " + std::to_string(minimum_order) + ", got k=" +
                                                std::to_string(spec.k) + " l=" + std::to_string(spec.l));
    }
}

/// X + Y as the union of copies of the larger operand rotated by each element
/// of the smaller one.
inline ResidueSet add_sets(const ResidueSet& x, const ResidueSet& y) {
    require_same_modulus(x.modulus(), y.modulus());
    ResidueSet out(x.modulus());
    if (x.empty() || y.empty()) return out;
    const bool x_small = x.size() <= y.size();
    const ResidueSet& driver = x_small ? x : y;
    const ResidueSet& body = x_small ? y : x;
    driver.for_each([&](std::uint32_t t) { out.or_rotated(body, t); });
    return out;
}

inline ResidueSet msum(std::span<const ResidueSet> sets) {
    if (sets.empty()) throw Error(ErrorKind::DomainError, "msum needs at least one set");
    ResidueSet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) acc = add_sets(acc, sets[i]);
    return acc;
}

/// iA.
inline ResidueSet multiple(unsigned i, const ResidueSet& a) {
    if (i == 0) throw Error(ErrorKind::DomainError, "0A is not defined here");
    ResidueSet acc = a;
    for (unsigned j = 1; j < i; ++j) {
        if (acc.is_full()) break;
        acc = add_sets(acc, a);
    }
    return acc;
}

inline ResidueSet iterated_sumset(SumsetSpec spec, const ResidueSet& b) {
    require_order(spec, 1);
    if (b.empty()) return ResidueSet(b.modulus());
    if (spec.l == 0) return multiple(spec.k, b);
    ResidueSet minus_b = negate(b);
    if (spec.k == 0) return multiple(spec.l, minus_b);
    return add_sets(multiple(spec.k, b), multiple(spec.l, minus_b));
}

/// The (k+l)-fold count table chi_B^{*k} * chi_{-B}^{*l}.
inline MultiplicityTable sumset_counts(SumsetSpec spec, const ResidueSet& b) {
    require_order(spec, 1);
    std::vector<ResidueSet> factors(spec.k, b);
    if (spec.l) factors.insert(factors.end(), spec.l, negate(b));
    return convolve_counts(factors);
}

/// Support of sumset_counts; agrees with iterated_sumset on every input.
inline ResidueSet sumset_via_convolution(SumsetSpec spec, const ResidueSet& b) {
    require_order(spec, 1);
    if (b.empty()) throw Error(ErrorKind::EmptyInput, "convolution route needs nonempty B");
    return sumset_counts(spec, b).support();
}

}  // namespace sumsets
