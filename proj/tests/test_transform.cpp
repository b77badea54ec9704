#include <sumsets/transform.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <vector>

using namespace sumsets;
using sumsets::oracle::Gen;

namespace {

std::vector<std::uint64_t> table_of(const std::map<std::int64_t, std::uint64_t>& m, std::uint32_t p) {
    std::vector<std::uint64_t> out(p, 0);
    for (auto [r, c] : m) out[static_cast<std::size_t>(r)] = c;
    return out;
}

// Reference transform evaluated with std::polar at the full argument.
std::complex<double> naive_dft_at(const ZpFunction& f, std::uint32_t x) {
    const double p = f.modulus.value();
    std::complex<double> acc{0, 0};
    for (std::uint32_t y = 0; y < f.values.size(); ++y)
        acc += f.values[y] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((std::uint64_t{x} * y) % f.modulus.value()) / p);
    return acc;
}

}  // namespace

TEST(Dft, Examples) {
    PrimeModulus m(5);
    Spectrum full = dft(ResidueSet::full(m));
    EXPECT_NEAR(full(0).real(), 5.0, 1e-12);
    for (std::uint32_t x = 1; x < 5; ++x) EXPECT_NEAR(std::abs(full(x)), 0.0, 1e-12);
    Spectrum zero = dft(ResidueSet::of(m, {0}));
    for (std::uint32_t x = 0; x < 5; ++x) EXPECT_NEAR(std::abs(zero(x) - std::complex<double>(1, 0)), 0.0, 1e-15);
}

TEST(Dft, SignConventionPositiveExponent) {
    PrimeModulus m(7);
    Spectrum s = dft(ResidueSet::of(m, {1}));
    EXPECT_NEAR(s(1).imag(), std::sin(2 * std::numbers::pi / 7), 1e-15);
}

TEST(Dft, MatchesNaiveEvaluationProperty) {
    Gen g(20);
    for (int trial = 0; trial < 40; ++trial) {
        PrimeModulus m = g.prime();
        ResidueSet a = g.subset(m);
        ZpFunction f = ZpFunction::characteristic(a);
        Spectrum s = dft(f);
        EXPECT_NEAR(s(0).real(), static_cast<double>(a.size()), 1e-9);
        for (std::uint32_t x = 0; x < m.value(); ++x) EXPECT_LT(std::abs(s(x) - naive_dft_at(f, x)), 1e-9);
    }
}

TEST(Convolve, Examples) {
    PrimeModulus m5(5);
    ResidueSet a = ResidueSet::of(m5, {0, 1});
    std::vector<ResidueSet> pair{a, a};
    EXPECT_EQ(convolve_counts(pair).counts, (std::vector<std::uint64_t>{1, 2, 1, 0, 0}));
    ZpFunction fa = ZpFunction::characteristic(a);
    EXPECT_EQ(to_multiplicity(convolve(fa, fa)).counts, (std::vector<std::uint64_t>{1, 2, 1, 0, 0}));

    PrimeModulus m7(7);
    ResidueSet b = ResidueSet::of(m7, {0, 1});
    std::vector<ResidueSet> triple{b, b, b};
    EXPECT_EQ(convolve_counts(triple).counts, (std::vector<std::uint64_t>{1, 3, 3, 1, 0, 0, 0}));
    std::vector<ZpFunction> ftriple(3, ZpFunction::characteristic(b));
    EXPECT_EQ(to_multiplicity(convolve(ftriple)).counts, (std::vector<std::uint64_t>{1, 3, 3, 1, 0, 0, 0}));
}

TEST(Convolve, IdentityAndErrors) {
    Gen g(21);
    PrimeModulus m(11);
    for (int trial = 0; trial < 20; ++trial) {
        ResidueSet a = g.subset(m);
        std::vector<ResidueSet> with_zero{a, ResidueSet::of(m, {0})};
        EXPECT_EQ(convolve_counts(with_zero).support(), a);
    }
    ResidueSet a(PrimeModulus(5)), b(PrimeModulus(7));
    std::vector<ResidueSet> mixed{a, b};
    EXPECT_THROW(convolve_counts(mixed), Error);
    EXPECT_THROW(convolve(ZpFunction(PrimeModulus(5)), ZpFunction(PrimeModulus(7))), Error);
    EXPECT_THROW(convolve_counts(std::span<const ResidueSet>{}), Error);
    EXPECT_THROW(ZpFunction(PrimeModulus(5), std::vector<double>(4, 0.0)), Error);
    EXPECT_THROW(to_multiplicity(ZpFunction(PrimeModulus(5), {0.5, 0, 0, 0, 0})), Error);
}

TEST(Convolve, ExactCountsMatchTupleEnumeration) {
    Gen g(22);
    for (std::uint32_t p : {3U, 5U, 7U, 11U, 13U}) {
        PrimeModulus m(p);
        for (unsigned count = 1; count <= 3; ++count) {
            for (int trial = 0; trial < 15; ++trial) {
                std::vector<ResidueSet> sets;
                std::vector<oracle::Plain> plain;
                std::vector<ZpFunction> fs;
                for (unsigned i = 0; i < count; ++i) {
                    sets.push_back(g.subset(m));
                    plain.push_back(oracle::plain(sets.back()));
                    fs.push_back(ZpFunction::characteristic(sets.back()));
                }
                auto expect = table_of(oracle::brute_counts(p, plain), p);
                EXPECT_EQ(convolve_counts(sets).counts, expect);
                EXPECT_EQ(to_multiplicity(convolve(fs)).counts, expect);
            }
        }
    }
}

TEST(Convolve, OverflowIsReported) {
    PrimeModulus m(131);
    std::vector<ResidueSet> many(10, ResidueSet::full(m));
    std::uint64_t expect = 1;
    for (int i = 0; i < 8; ++i) expect *= 131;
    EXPECT_EQ(convolve_counts(std::span<const ResidueSet>(many.data(), 8)).total(), expect);
    try {
        convolve_counts(many);
        FAIL() << "expected overflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Overflow);
    }
}

TEST(ConvolutionTheorem, Examples) {
    PrimeModulus m(7);
    std::vector<ZpFunction> deltas(2, ZpFunction::characteristic(ResidueSet::of(m, {0})));
    EXPECT_EQ(verify_convolution_theorem(deltas), 0.0);
    std::vector<ZpFunction> with_empty{ZpFunction::characteristic(ResidueSet::of(m, {1, 2})), ZpFunction(m)};
    EXPECT_EQ(verify_convolution_theorem(with_empty), 0.0);
    EXPECT_THROW(verify_convolution_theorem(std::span<const ZpFunction>(deltas.data(), 1)), Error);
}

TEST(ConvolutionTheorem, RandomSetsWithinTolerance) {
    Gen g(23);
    for (std::uint32_t p : {31U, 101U}) {
        PrimeModulus m(p);
        const double tol = 1e-6 * p * p;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<ZpFunction> fs;
            for (int i = 0; i < 3; ++i) fs.push_back(ZpFunction::characteristic(g.subset(m)));
            EXPECT_LE(verify_convolution_theorem(fs), tol);
        }
    }
}

TEST(Parseval, Examples) {
    EXPECT_EQ(parseval_gap(ResidueSet(PrimeModulus(5))), 0.0);
    EXPECT_NEAR(parseval_gap(ResidueSet::full(PrimeModulus(5))), 0.0, 1e-12);
    Gen g(24);
    PrimeModulus m(97);
    for (int trial = 0; trial < 20; ++trial) EXPECT_LE(parseval_gap(g.subset(m)), 1e-6 * 97 * 97);
}

TEST(ThresholdSet, Examples) {
    PrimeModulus m(5);
    ResidueSet a = ResidueSet::of(m, {0, 1});
    std::vector<ResidueSet> pair{a, a};
    MultiplicityTable t = convolve_counts(pair);
    EXPECT_EQ(threshold_set(t, 1.0).to_list(), "0,1,2");
    EXPECT_EQ(threshold_set(t, 2.0).to_list(), "1");
    EXPECT_EQ(threshold_set_at(t, 2).to_list(), "1");
    EXPECT_TRUE(threshold_set(t, 5.0).empty());
    EXPECT_THROW(threshold_set(t, 0.0), Error);
    EXPECT_THROW(threshold_set_at(t, 0), Error);
}

TEST(ThresholdSet, HOneIsSumsetProperty) {
    Gen g(25);
    for (int trial = 0; trial < 100; ++trial) {
        PrimeModulus m(g.coin() ? 13 : 17);
        std::vector<ResidueSet> sets{g.subset(m), g.subset(m)};
        auto brute = oracle::brute_counts(m.value(), {oracle::plain(sets[0]), oracle::plain(sets[1])});
        oracle::Plain expect;
        for (auto [r, c] : brute)
            if (c >= 1) expect.insert(r);
        EXPECT_EQ(oracle::plain(threshold_set_at(convolve_counts(sets), 1)), expect);
    }
}
