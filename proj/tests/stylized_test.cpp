#include <gtest/gtest.h>

#include <cmath>

#include "mrecon/rng.hpp"
#include "mrecon/stylized.hpp"
#include "test_support.hpp"

using namespace mrecon;

namespace {

std::vector<double> exp_prices(double c, std::size_t n) {
    std::vector<double> p(n);
    for (std::size_t t = 0; t < n; ++t) p[t] = std::exp(c * static_cast<double>(t));
    return p;
}

}  // namespace

TEST(SlidingVolatility, Examples) {
    for (double v : sliding_volatility(std::vector<double>(20, 0.01), 10)) EXPECT_EQ(v, 0.0);
    const double c = 0.3;
    const auto s = sliding_volatility(std::vector<double>{0, 0, c, c}, 2);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], 0.0);
    EXPECT_DOUBLE_EQ(s[1], c / 2);
    EXPECT_EQ(s[2], 0.0);
    for (double v : sliding_volatility(std::vector<double>{-c, c, -c, c, -c}, 2)) EXPECT_DOUBLE_EQ(v, c);
    EXPECT_THROW(sliding_volatility(std::vector<double>{1, 2}, 3), InsufficientDataError);
    EXPECT_THROW(sliding_volatility(std::vector<double>{1, 2}, 1), DomainError);
}

TEST(AccumulatedVolatility, PrefixSums) {
    EXPECT_EQ(accumulated_volatility(std::vector<double>{1, 2, 3}), (std::vector<double>{1, 3, 6}));
    EXPECT_EQ(accumulated_volatility(std::vector<double>{0, 0}), (std::vector<double>{0, 0}));
    const auto r = log_returns(fixtures::load_fixture("msft.csv"), 1);
    const auto acc = accumulated_volatility(sliding_volatility(r.values, 10));
    for (std::size_t i = 1; i < acc.size(); ++i) ASSERT_GE(acc[i], acc[i - 1]);
}

TEST(MaxReturn, Examples) {
    for (double d : max_return(std::vector<double>(50, 3.0), 20)) EXPECT_EQ(d, 0.0);
    const double c = 0.01;
    const auto delta = max_return(exp_prices(c, 300), 100);
    for (std::size_t n = 1; n <= 100; ++n) EXPECT_NEAR(delta[n - 1], c * n, 1e-12);
    EXPECT_THROW(max_return(std::vector<double>(5, 1.0), 5), InsufficientDataError);
}

TEST(MaxReturn, MatchesBruteForce) {
    UniformSource rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t len = static_cast<std::size_t>(rng.uniform_int(10, 200));
        std::vector<double> p{100.0};
        for (std::size_t i = 1; i < len; ++i) p.push_back(p.back() * std::exp((rng.uniform01() - 0.5) * 0.1));
        const auto delta = max_return(p, len - 1);
        for (std::size_t n = 1; n < len; ++n) {
            double best = -1e300;
            for (std::size_t t = 0; t + n < len; ++t) best = std::max(best, std::log(p[t + n] / p[t]));
            ASSERT_NEAR(delta[n - 1], best, 1e-12);
        }
    }
}

TEST(Moments, Examples) {
    const std::vector<double> qs{1, 2, 3};
    const std::vector<std::size_t> ns{1, 5, 10};
    const auto flat = moments(std::vector<double>(30, 2.0), qs, ns);
    for (const auto& row : flat.values)
        for (double v : row) EXPECT_EQ(v, 0.0);

    const double c = 0.02;
    const auto t = moments(exp_prices(c, 100), qs, ns);
    for (std::size_t iq = 0; iq < qs.size(); ++iq)
        for (std::size_t in = 0; in < ns.size(); ++in) {
            const double expect = std::pow(c * ns[in], qs[iq]);
            EXPECT_NEAR(t.values[iq][in], expect, 1e-10 * expect);
        }
}

TEST(Moments, JensenOnRealData) {
    const auto s = fixtures::load_fixture("sp500.csv");
    const std::vector<double> qs{1, 2, 1.5};
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= 50; ++n) ns.push_back(n);
    const auto t = moments(s.prices, qs, ns);
    for (std::size_t in = 0; in < ns.size(); ++in) {
        EXPECT_GE(t.values[1][in], t.values[0][in] * t.values[0][in]);
        EXPECT_GT(t.values[2][in], 0.0);
    }
}

TEST(ScalingExponent, ExactPowerLaw) {
    const auto t = moments(exp_prices(0.001, 400), std::vector<double>{1, 2, 4}, std::vector<std::size_t>{1, 2, 4, 8, 16, 32});
    const auto fits = scaling_exponent(t, 1, 100);
    ASSERT_EQ(fits.size(), 3u);
    for (const auto& f : fits) {
        EXPECT_NEAR(f.chi, f.q, 1e-9);
        EXPECT_NEAR(f.residual_norm, 0.0, 1e-9);
        EXPECT_EQ(f.points, 6u);
    }
}

TEST(ScalingExponent, Errors) {
    const auto flat = moments(std::vector<double>(30, 2.0), std::vector<double>{1}, std::vector<std::size_t>{1, 2, 3});
    try {
        scaling_exponent(flat, 1, 3);
        FAIL();
    } catch (const UndefinedLogError& e) {
        EXPECT_NE(std::string(e.what()).find("n=2"), std::string::npos);
    }
    EXPECT_THROW(scaling_exponent(flat, 1, 2), InsufficientDataError);
}

TEST(ScalingExponent, MonotoneInQForLogConcaveFamily) {
    // S_q(n) = n^(a q - b q^2) for small b is log-linear in n with a concave,
    // increasing exponent over q in [1, 8].
    MomentTable t;
    for (int q = 1; q <= 8; ++q) t.q_values.push_back(q);
    for (std::size_t n = 1; n <= 100; ++n) t.n_values.push_back(n);
    for (double q : t.q_values) {
        std::vector<double> row;
        for (auto n : t.n_values) row.push_back(std::pow(static_cast<double>(n), 0.6 * q - 0.02 * q * q));
        t.values.push_back(row);
    }
    const auto fits = scaling_exponent(t, 1, 100);
    for (std::size_t i = 1; i < fits.size(); ++i) EXPECT_GT(fits[i].chi, fits[i - 1].chi);
    for (const auto& f : fits) EXPECT_NEAR(f.chi, 0.6 * f.q - 0.02 * f.q * f.q, 1e-9);
}

TEST(ScalingExponent, RealDataHalfForFirstMoment) {
    for (const char* name : {"msft.csv", "sp500.csv", "nasdaq.csv"}) {
        const auto s = fixtures::load_fixture(name);
        std::vector<std::size_t> ns;
        for (std::size_t n = 1; n <= 100; ++n) ns.push_back(n);
        const auto fits = scaling_exponent(moments(s.prices, std::vector<double>{1}, ns), 1, 100);
        EXPECT_NEAR(fits[0].chi, 0.5, 0.15) << name;
    }
}

TEST(Autocorrelation, Examples) {
    const double c = 0.02;
    const auto flat = autocorrelation(std::vector<double>(50, c), 5, false);
    for (double v : flat.raw) EXPECT_NEAR(v, c * c, 1e-18);
    EXPECT_TRUE(flat.normalized.empty());

    std::vector<double> alt;
    for (int i = 0; i < 50; ++i) alt.push_back(i % 2 ? c : -c);
    EXPECT_NEAR(autocorrelation(alt, 3, false).raw[1], -c * c, 1e-18);
    EXPECT_NEAR(autocorrelation(alt, 3, true).raw[1], c * c, 1e-18);

    const auto r = log_returns(fixtures::load_fixture("msft.csv"), 1);
    const auto curve = autocorrelation(r.values, 20, false);
    EXPECT_NEAR(curve.raw[0], r.sigma * r.sigma + r.mean * r.mean, 1e-12 * curve.raw[0]);
    EXPECT_DOUBLE_EQ(curve.normalized[0], 1.0);
    EXPECT_THROW(autocorrelation(r.values, r.size(), false), InsufficientDataError);
}

TEST(Autocorrelation, AbsoluteReturnsAreMoreCorrelated) {
    const auto r = log_returns(fixtures::load_fixture("msft.csv"), 1);
    const auto plain = autocorrelation(r.values, 20, false);
    const auto absolute = autocorrelation(r.values, 20, true);
    for (std::size_t lag = 2; lag <= 20; ++lag) EXPECT_GT(absolute.normalized[lag], std::fabs(plain.normalized[lag]));
}

TEST(StylizedReport, RealSeries) {
    const auto s = fixtures::load_fixture("msft.csv");
    const auto a = compute_stylized(s);
    EXPECT_EQ(a.delta_curve.size(), 1000u);
    EXPECT_EQ(a.sliding_volatility.size(), a.returns.size() - 9);
    EXPECT_EQ(a.chi_curve.size(), 8u);
    for (double v : a.sliding_volatility) EXPECT_GE(v, 0.0);
    for (const auto& row : a.moment_table.values)
        for (double v : row) EXPECT_GE(v, 0.0);
    const auto b = compute_stylized(s);
    EXPECT_EQ(a.chi_curve[0].chi, b.chi_curve[0].chi);
}
