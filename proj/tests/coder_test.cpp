#include <gtest/gtest.h>

#include <cmath>

#include "mrecon/coder.hpp"
#include "mrecon/rng.hpp"
#include "test_support.hpp"

using namespace mrecon;

TEST(CodingScheme, Invariants) {
    const CodingScheme s(5, 0.1, 2.0);
    EXPECT_EQ(s.beta(), 2);
    EXPECT_THROW(CodingScheme(4, 0.0, 1.0), DomainError);
    EXPECT_THROW(CodingScheme(1, 0.0, 1.0), DomainError);
    EXPECT_THROW(CodingScheme(3, 0.0, 0.0), DegenerateSchemeError);
    EXPECT_THROW(CodingScheme(3, 0.0, -1.0), DegenerateSchemeError);
}

TEST(CodingScheme, ConstantReturnsCannotBeCoded) {
    const auto r = ReturnSeries::from_values({0.01, 0.01, 0.01});
    EXPECT_THROW(CodingScheme::from_returns(r, 3), DegenerateSchemeError);
}

TEST(Encode, ThreeSymbolBins) {
    const double mean = 0.002, sigma = 0.01;
    const CodingScheme s(3, mean, sigma);
    EXPECT_EQ(s.encode(mean + 1.5 * sigma), 1);
    EXPECT_EQ(s.encode(mean - 1.5 * sigma), -1);
    const CodingScheme unit(3, 0.0, 1.0);
    EXPECT_EQ(unit.encode(1.0), 0);   // closed center interval
    EXPECT_EQ(unit.encode(-1.0), 0);
    EXPECT_EQ(unit.encode(std::nextafter(1.0, 2.0)), 1);
    EXPECT_EQ(s.encode(mean), 0);
}

TEST(Encode, FiveSymbolBins) {
    // Boundaries at 0.5 sigma and sigma: (0, .5] -> 0, (.5, 1] -> 1, > 1 -> 2.
    const CodingScheme s(5, 0.0, 1.0);
    EXPECT_EQ(s.encode(0.75), 1);
    EXPECT_EQ(s.encode(-1.2), -2);
    EXPECT_EQ(s.encode(0.5), 0);
    EXPECT_EQ(s.encode(-0.5), 0);
    EXPECT_EQ(s.encode(1.0), 1);
    EXPECT_EQ(s.encode(0.0), 0);
    const CodingScheme seven(7, 0.0, 3.0);  // boundaries 1, 2, 3
    EXPECT_EQ(seven.encode(1.0), 0);
    EXPECT_EQ(seven.encode(1.5), 1);
    EXPECT_EQ(seven.encode(2.0), 1);
    EXPECT_EQ(seven.encode(2.5), 2);
    EXPECT_EQ(seven.encode(3.0), 2);
    EXPECT_EQ(seven.encode(-3.5), -3);
}

TEST(Encode, PropertiesOnRandomReturns) {
    UniformSource rng(11);
    for (int n : {3, 5, 7, 9}) {
        const CodingScheme s(n, 0.0003, 0.012);
        for (int i = 0; i < 20000; ++i) {
            const double a = (rng.uniform01() - 0.5) * 0.1, b = (rng.uniform01() - 0.5) * 0.1;
            const Symbol sa = s.encode(a), sb = s.encode(b);
            ASSERT_TRUE(s.contains(sa));
            if (a <= b) ASSERT_LE(sa, sb);
            else ASSERT_GE(sa, sb);
            const double d = a - s.mean();
            ASSERT_EQ(s.encode(s.mean() - d), -sa) << "d=" << d;
        }
    }
}

TEST(Decode, Examples) {
    const CodingScheme s3(3, 0.001, 0.02);
    EXPECT_EQ(decode_symbol(0, s3), 0.001);
    EXPECT_DOUBLE_EQ(decode_symbol(1, s3), 0.001 + 0.02);
    const CodingScheme s5(5, 0.001, 0.02);
    EXPECT_DOUBLE_EQ(decode_symbol(-2, s5), 0.001 - 0.02);
    EXPECT_THROW(decode_symbol(3, s5), DomainError);
    for (int s = -2; s < 2; ++s) EXPECT_LT(decode_symbol(s, s5), decode_symbol(s + 1, s5));
}

TEST(ReconstructPrices, Examples) {
    EXPECT_EQ(reconstruct_prices(100.0, std::vector<double>{0.0, 0.0}), (std::vector<double>{100, 100, 100}));
    const auto p = reconstruct_prices(100.0, std::vector<double>{std::log(1.01)});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_NEAR(p[1], 101.0, 1e-12);
    EXPECT_THROW(reconstruct_prices(0.0, std::vector<double>{}), DomainError);
    EXPECT_THROW(reconstruct_prices(-1.0, std::vector<double>{}), DomainError);
}

TEST(ReconstructPrices, InvertsLogReturns) {
    const auto s = fixtures::load_fixture("msft.csv");
    const auto r = log_returns(s, 1);
    const auto back = reconstruct_prices(s.prices.front(), r.values);
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t t = 0; t < s.size(); ++t) ASSERT_NEAR(back[t], s.prices[t], 1e-9 * s.prices[t]);
}

TEST(SymbolText, FormatAndParse) {
    const std::vector<Symbol> v{0, -1, 2, -2, 1};
    EXPECT_EQ(format_symbols(v), "0,-1,2,-2,1");
    EXPECT_EQ(parse_symbols("0,-1,2,-2,1\n"), v);
    EXPECT_TRUE(parse_symbols("").empty());
    EXPECT_THROW(parse_symbols("1,x"), FormatError);
}
