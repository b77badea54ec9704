#include <sumsets/zp_core.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace sumsets;
using sumsets::oracle::Gen;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no sumsets::Error thrown";
    return ErrorKind::ParseError;
}

}  // namespace

TEST(PrimeModulus, AcceptsOddPrimes) {
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 101ULL, 997ULL, 2147483647ULL}) EXPECT_EQ(PrimeModulus(p).value(), p);
}

TEST(PrimeModulus, RejectsNonPrimes) {
    for (std::uint64_t n : {0ULL, 1ULL, 2ULL, 4ULL, 9ULL, 91ULL, 1ULL << 31}) {
        EXPECT_EQ(kind_of([&] { PrimeModulus m(n); }), ErrorKind::NotPrime) << n;
    }
}

TEST(PrimeModulus, IsPrimeMatchesSieve) {
    std::vector<bool> composite(2000, false);
    for (std::size_t i = 2; i < composite.size(); ++i)
        for (std::size_t j = 2 * i; j < composite.size(); j += i) composite[j] = true;
    for (std::size_t n = 2; n < composite.size(); ++n) EXPECT_EQ(is_prime(n), !composite[n]) << n;
}

TEST(PrimeModulus, Arithmetic) {
    PrimeModulus m(7);
    EXPECT_EQ(m.reduce(-1), 6U);
    EXPECT_EQ(m.reduce(15), 1U);
    EXPECT_EQ(m.add(5, 4), 2U);
    EXPECT_EQ(m.neg(0), 0U);
    EXPECT_EQ(m.neg(3), 4U);
    EXPECT_EQ(m.mul(3, 5), 1U);
    EXPECT_EQ(m.pow(3, 6), 1U);
    EXPECT_EQ(m.inverse(3), 5U);
    EXPECT_EQ(m.inverse(-1), 6U);
    EXPECT_EQ(kind_of([&] { m.inverse(14); }), ErrorKind::DomainError);
}

TEST(PrimeModulus, InverseProperty) {
    Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        PrimeModulus m = g.prime();
        std::int64_t d = g.between(-1000, 1000);
        if (m.reduce(d) == 0) continue;
        EXPECT_EQ(m.mul(m.reduce(d), m.inverse(d)), 1U);
    }
}

TEST(ResidueSet, ConstructionAndQueries) {
    PrimeModulus m(7);
    ResidueSet s = ResidueSet::of(m, {0, 2, 3});
    EXPECT_EQ(s.size(), 3U);
    EXPECT_TRUE(s.contains(2));
    EXPECT_FALSE(s.contains(1));
    EXPECT_EQ(s.to_list(), "0,2,3");
    EXPECT_EQ(ResidueSet(m).to_list(), "");
    EXPECT_TRUE(ResidueSet(m).empty());
    EXPECT_TRUE(ResidueSet::full(m).is_full());
    EXPECT_EQ(kind_of([&] { ResidueSet::of(m, {7}); }), ErrorKind::InvalidResidue);
    EXPECT_EQ(kind_of([&] { ResidueSet::of(m, {-1}); }), ErrorKind::InvalidResidue);
    std::vector<std::int64_t> raw{-1, 8, 14};
    EXPECT_EQ(ResidueSet::from_integers(m, raw).to_list(), "0,1,6");
}

TEST(ResidueSet, HexFormat) {
    PrimeModulus m(7);
    ResidueSet s = ResidueSet::of(m, {0, 2, 3});
    EXPECT_EQ(s.to_hex(), "0x0d");
    EXPECT_EQ(ResidueSet::from_hex(m, "0x0d"), s);
    EXPECT_EQ(ResidueSet::parse(m, "0x0D"), s);
    EXPECT_EQ(ResidueSet::parse(m, "0, 2,3"), s);
    EXPECT_EQ(ResidueSet::full(PrimeModulus(5)).to_hex(), "0x1f");
    EXPECT_EQ(ResidueSet(PrimeModulus(101)).to_hex().size(), 2U + 26U);
    EXPECT_EQ(kind_of([&] { ResidueSet::from_hex(m, "0x80"); }), ErrorKind::InvalidResidue);
    EXPECT_EQ(kind_of([&] { ResidueSet::from_hex(m, "0xg"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { ResidueSet::from_list(m, "1,,2"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { ResidueSet::from_list(m, "1,x"); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of([&] { ResidueSet::from_list(m, "0,9"); }), ErrorKind::InvalidResidue);
}

TEST(ResidueSet, RoundTripProperty) {
    Gen g(1);
    for (int trial = 0; trial < 300; ++trial) {
        PrimeModulus m = g.prime();
        ResidueSet s = g.subset(m);
        EXPECT_EQ(ResidueSet::from_hex(m, s.to_hex()), s);
        EXPECT_EQ(ResidueSet::from_list(m, s.to_list()), s);
        if (m.value() <= 64) {
            EXPECT_EQ(ResidueSet::from_mask(m, s.to_mask()), s);
        }
    }
}

TEST(ResidueSet, SetAlgebraMatchesStdSet) {
    Gen g(2);
    for (int trial = 0; trial < 300; ++trial) {
        PrimeModulus m = g.prime();
        ResidueSet a = g.subset(m), b = g.subset(m);
        auto pa = oracle::plain(a), pb = oracle::plain(b);
        oracle::Plain u, i, d;
        std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(u, u.end()));
        std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(i, i.end()));
        std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(d, d.end()));
        EXPECT_EQ(oracle::plain(a | b), u);
        EXPECT_EQ(oracle::plain(a & b), i);
        EXPECT_EQ(oracle::plain(a - b), d);
        EXPECT_EQ(a.subset_of(a | b), true);
        EXPECT_EQ((complement(a) | a).is_full(), true);
        EXPECT_TRUE((complement(a) & a).empty());
    }
}

TEST(ResidueSet, ModulusMismatch) {
    ResidueSet a(PrimeModulus(5)), b(PrimeModulus(7));
    EXPECT_EQ(kind_of([&] { a |= b; }), ErrorKind::ModulusMismatch);
    EXPECT_EQ(kind_of([&] { (void)(a < b); }), ErrorKind::ModulusMismatch);
    EXPECT_FALSE(a == b);
}

TEST(ResidueSet, RotationMatchesPointwiseShift) {
    Gen g(3);
    for (int trial = 0; trial < 300; ++trial) {
        PrimeModulus m = g.prime();
        ResidueSet a = g.subset(m);
        std::uint32_t t = static_cast<std::uint32_t>(g.below(m.value()));
        ResidueSet expect(m);
        for (auto x : a.elements()) expect.insert(m.add(x, t));
        EXPECT_EQ(a.rotated(t), expect);
        EXPECT_EQ(translate(static_cast<std::int64_t>(t) - m.value(), a), expect);
        ResidueSet acc = ResidueSet::of(m, {0});
        acc.or_rotated(a, t);
        expect.insert(0);
        EXPECT_EQ(acc, expect);
    }
}

TEST(ResidueSet, OrderingIsBitVectorValue) {
    PrimeModulus m(5);
    EXPECT_LT(ResidueSet::of(m, {0, 1, 2, 3}), ResidueSet::of(m, {4}));
    EXPECT_LT(ResidueSet(m), ResidueSet::of(m, {0}));
    Gen g(4);
    PrimeModulus q(13);
    for (int trial = 0; trial < 200; ++trial) {
        ResidueSet a = g.subset(q), b = g.subset(q);
        EXPECT_EQ(a < b, a.to_mask() < b.to_mask());
    }
}

TEST(Dilation, Examples) {
    PrimeModulus m(7);
    EXPECT_EQ(dilate(3, ResidueSet::of(m, {1, 2})).to_list(), "3,6");
    EXPECT_EQ(dilate(0, ResidueSet::of(m, {1, 2})).to_list(), "0");
    EXPECT_EQ(dilate(-1, ResidueSet::of(m, {1, 2})), negate(ResidueSet::of(m, {1, 2})));
    EXPECT_TRUE(dilate(0, ResidueSet(m)).empty());
}

TEST(Dilation, UnitsAreBijective) {
    Gen g(5);
    for (int trial = 0; trial < 300; ++trial) {
        PrimeModulus m = g.prime();
        ResidueSet a = g.subset(m);
        std::int64_t d = 1 + static_cast<std::int64_t>(g.below(m.value() - 1));
        ResidueSet img = dilate(d, a);
        EXPECT_EQ(img.size(), a.size());
        EXPECT_EQ(dilate(m.inverse(d), img), a);
        EXPECT_EQ(negate(negate(a)), a);
    }
}

TEST(IntervalPartition, DefinitionExample) {
    PrimeModulus m(7);
    IntervalPartition part = make_partition(m, 0, 2);
    ASSERT_EQ(part.count(), 3U);
    EXPECT_EQ(part.interval_set(0).to_list(), "1,2");
    EXPECT_EQ(part.interval_set(1).to_list(), "3,4");
    EXPECT_EQ(part.interval_set(2).to_list(), "5,6");
    EXPECT_EQ(part.remainder_set().to_list(), "0");
    EXPECT_EQ(part.interval_of(0), std::nullopt);
    EXPECT_EQ(part.interval_of(4), 1U);

    IntervalPartition wrap = make_partition(m, 5, 3);
    EXPECT_EQ(wrap.interval_set(0).to_list(), "0,1,6");
    EXPECT_EQ(wrap.interval_set(1).to_list(), "2,3,4");
    EXPECT_EQ(wrap.remainder_set().to_list(), "5");
}

TEST(IntervalPartition, Errors) {
    PrimeModulus m(7);
    EXPECT_EQ(kind_of([&] { make_partition(m, 0, 0); }), ErrorKind::InvalidLength);
    EXPECT_EQ(kind_of([&] { make_partition(m, 0, 8); }), ErrorKind::InvalidLength);
    EXPECT_EQ(make_partition(m, 3, 7).count(), 1U);
    EXPECT_TRUE(make_partition(m, 3, 7).remainder.empty());
}

TEST(IntervalPartition, CoversZpProperty) {
    Gen g(6);
    for (int trial = 0; trial < 200; ++trial) {
        PrimeModulus m = g.prime();
        std::uint32_t L = 1 + static_cast<std::uint32_t>(g.below(m.value()));
        std::int64_t y = g.between(-500, 500);
        IntervalPartition part = make_partition(m, y, L);
        EXPECT_EQ(part.count(), m.value() / L);
        EXPECT_EQ(part.remainder.size(), m.value() % L);
        ResidueSet seen(m);
        for (std::size_t i = 0; i < part.count(); ++i) {
            ResidueSet iv = part.interval_set(i);
            EXPECT_EQ(iv.size(), L);
            EXPECT_TRUE((seen & iv).empty());
            seen |= iv;
            for (auto r : iv.elements()) EXPECT_EQ(part.interval_of(r), i);
        }
        for (auto r : part.remainder) EXPECT_EQ(part.interval_of(r), std::nullopt);
        EXPECT_EQ((seen | part.remainder_set()).size(), m.value());
    }
}

TEST(CanonicalForm, OrbitInvariant) {
    Gen g(7);
    for (int trial = 0; trial < 100; ++trial) {
        PrimeModulus m(g.coin() ? 11 : 13);
        ResidueSet a = g.subset(m);
        std::int64_t d = 1 + static_cast<std::int64_t>(g.below(m.value() - 1));
        std::int64_t t = static_cast<std::int64_t>(g.below(m.value()));
        ResidueSet c = canonical_form(a, false);
        EXPECT_EQ(canonical_form(dilate(d, a), false), c);
        EXPECT_LE(c, a);
        EXPECT_EQ(canonical_form(translate(t, dilate(d, a)), true), canonical_form(a, true));
    }
    PrimeModulus m(7);
    EXPECT_EQ(canonical_form(ResidueSet::of(m, {3}), true).to_list(), "0");
    EXPECT_EQ(canonical_form(ResidueSet::of(m, {3}), false).to_list(), "1");
    EXPECT_EQ(canonical_form(ResidueSet::of(m, {0}), false).to_list(), "0");
}
