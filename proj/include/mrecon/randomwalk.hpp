#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mrecon/error.hpp"
#include "mrecon/rng.hpp"

namespace mrecon {

/// Unit-step coin-toss walk. values[0] is one step away from start_price.
struct WalkPath {
    double start_price = 0.0;
    std::vector<double> values;
};

inline WalkPath simulate_walk(double p0, std::size_t steps, UniformSource& rng) {
    if (steps < 1) throw DomainError("random walk needs at least one step");
    WalkPath path{p0, {}};
    path.values.reserve(steps);
    double p = p0;
    for (std::size_t t = 0; t < steps; ++t) {
        p += rng.coin() ? 1.0 : -1.0;
        path.values.push_back(p);
    }
    return path;
}

struct EnsemblePoint {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample (n - 1) standard deviation across paths
};

/// Per-step mean and sample standard deviation over `num_paths` walks, path i
/// seeded with derive_seed(master_seed, i). Element t is the state after t + 1 steps.
inline std::vector<EnsemblePoint> ensemble_stats(double p0, std::size_t steps, std::size_t num_paths,
                                                 std::uint64_t master_seed) {
    if (num_paths < 2) throw DomainError("ensemble needs at least 2 paths");
    std::vector<double> mean(steps, 0.0), m2(steps, 0.0);
    for (std::size_t i = 0; i < num_paths; ++i) {
        UniformSource rng(derive_seed(master_seed, i));
        const auto path = simulate_walk(p0, steps, rng);
        const double n = static_cast<double>(i + 1);
        for (std::size_t t = 0; t < steps; ++t) {
            const double d = path.values[t] - mean[t];
            mean[t] += d / n;
            m2[t] += d * (path.values[t] - mean[t]);
        }
    }
    std::vector<EnsemblePoint> out(steps);
    for (std::size_t t = 0; t < steps; ++t)
        out[t] = {mean[t], std::sqrt(m2[t] / static_cast<double>(num_paths - 1))};
    return out;
}

}  // namespace mrecon
