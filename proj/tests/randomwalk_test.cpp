#include <gtest/gtest.h>

#include <cmath>

#include "mrecon/randomwalk.hpp"

using namespace mrecon;

TEST(SimulateWalk, UnitStepsAndParity) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        UniformSource rng(seed);
        const auto path = simulate_walk(10.0, 500, rng);
        ASSERT_EQ(path.values.size(), 500u);
        EXPECT_EQ(std::fabs(path.values[0] - 10.0), 1.0);
        for (std::size_t t = 1; t < path.values.size(); ++t) {
            ASSERT_EQ(std::fabs(path.values[t] - path.values[t - 1]), 1.0);
            const auto offset = static_cast<long>(path.values[t] - 10.0);
            ASSERT_EQ(((offset % 2) + 2) % 2, static_cast<long>((t + 1) % 2));
        }
    }
}

TEST(SimulateWalk, DeterministicAndSingleStep) {
    UniformSource a(4), b(4);
    EXPECT_EQ(simulate_walk(0.0, 100, a).values, simulate_walk(0.0, 100, b).values);
    UniformSource c(5);
    const auto one = simulate_walk(3.0, 1, c);
    ASSERT_EQ(one.values.size(), 1u);
    EXPECT_TRUE(one.values[0] == 2.0 || one.values[0] == 4.0);
    EXPECT_THROW(simulate_walk(0.0, 0, c), DomainError);
}

TEST(EnsembleStats, MeanConstantAndSpreadSqrtT) {
    const std::size_t paths = 10000, steps = 100;
    const auto stats = ensemble_stats(50.0, steps, paths, 1);
    for (std::size_t t = 0; t < steps; ++t) {
        EXPECT_NEAR(stats[t].mean, 50.0, 4.0 / std::sqrt(double(paths)) * std::sqrt(double(t + 1)));
    }
    EXPECT_NEAR(stats[steps - 1].stddev, std::sqrt(100.0), 0.05 * std::sqrt(100.0));
    EXPECT_THROW(ensemble_stats(0.0, 10, 1, 0), DomainError);
}

TEST(EnsembleStats, DistinctPerPathSeeds) {
    UniformSource a(derive_seed(0, 0)), b(derive_seed(0, 1));
    EXPECT_NE(simulate_walk(0.0, 64, a).values, simulate_walk(0.0, 64, b).values);
    const auto x = ensemble_stats(0.0, 20, 50, 3), y = ensemble_stats(0.0, 20, 50, 3);
    for (std::size_t t = 0; t < 20; ++t) EXPECT_EQ(x[t].stddev, y[t].stddev);
}
