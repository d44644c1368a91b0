#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "mrecon/coder.hpp"
#include "mrecon/error.hpp"
#include "mrecon/ingest.hpp"
#include "mrecon/markov.hpp"
#include "mrecon/preprocess.hpp"
#include "mrecon/rng.hpp"

namespace mrecon {

/// Train = first floor(length / 2) symbols, test = the rest.
inline std::pair<SymbolSequence, SymbolSequence> split_sequence(const SymbolSequence& s) {
    if (s.size() < 4)
        throw InsufficientDataError("splitting needs at least 4 symbols, got " + std::to_string(s.size()));
    const auto m = static_cast<std::ptrdiff_t>(s.size() / 2);
    SymbolSequence train{{s.symbols.begin(), s.symbols.begin() + m}, s.scheme};
    SymbolSequence test{{s.symbols.begin() + m, s.symbols.end()}, s.scheme};
    return {std::move(train), std::move(test)};
}

/// One-step-ahead forecast conditioned on the true history.
///
/// out[0] copies test[0]. Each out[i + 1] is drawn from the distribution that
/// follows the last order_k true symbols up to test[i] (fewer near the start of
/// the test sequence, where backoff takes over).
inline std::vector<Symbol> one_step_forecast(const TransitionModel& model, std::span<const Symbol> test,
                                             UniformSource& rng) {
    std::vector<Symbol> out;
    if (test.empty()) return out;
    out.reserve(test.size());
    out.push_back(test[0]);
    const auto k = static_cast<std::size_t>(model.order_k());
    for (std::size_t i = 0; i + 1 < test.size(); ++i) {
        const std::size_t len = std::min(k, i + 1);
        const auto dist = model.conditional_distribution(test.subspan(i + 1 - len, len));
        out.push_back(sample_next(dist, rng.uniform01()));
    }
    return out;
}

/// I.i.d. uniform symbols over the alphabet.
inline std::vector<Symbol> random_baseline(const CodingScheme& scheme, std::size_t length, UniformSource& rng) {
    std::vector<Symbol> out(length);
    for (auto& s : out) s = static_cast<Symbol>(rng.uniform_int(-scheme.beta(), scheme.beta()));
    return out;
}

/// Per-step root-mean-square symbol difference.
inline double rms_error(std::span<const Symbol> actual, std::span<const Symbol> predicted) {
    if (actual.size() != predicted.size())
        throw DomainError("rms_error: length mismatch " + std::to_string(actual.size()) + " vs " +
                          std::to_string(predicted.size()));
    if (actual.empty()) throw DomainError("rms_error: empty sequences");
    double ss = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = static_cast<double>(actual[i] - predicted[i]);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(actual.size()));
}

struct ForecastRun {
    std::vector<Symbol> forecast_symbols;
    std::vector<Symbol> baseline_symbols;
    double markov_error = 0.0;
    double baseline_error = 0.0;
    std::uint64_t seed = 0;
};

/// Forecast plus baseline from one private generator seeded with `seed`.
inline ForecastRun forecast_run(const TransitionModel& model, const SymbolSequence& test, std::uint64_t seed) {
    UniformSource rng(seed);
    ForecastRun run;
    run.seed = seed;
    run.forecast_symbols = one_step_forecast(model, test.symbols, rng);
    run.baseline_symbols = random_baseline(test.scheme, test.size(), rng);
    run.markov_error = rms_error(test.symbols, run.forecast_symbols);
    run.baseline_error = rms_error(test.symbols, run.baseline_symbols);
    return run;
}

struct MonteCarloOptions {
    int alphabet_size = 3;
    int order_k = 1;
    int num_sims = 500;
    std::uint64_t master_seed = 0;
    bool reverse = false;            ///< model from the second half, forecast the first
    bool price_curves = true;        ///< price-space deviation curves (price input only)
    unsigned threads = 0;            ///< 0 = hardware concurrency
};

struct RunSummary {
    int index = 0;
    std::uint64_t seed = 0;
    double markov_error = 0.0;
    double baseline_error = 0.0;
};

struct PriceDeviationCurves {
    std::vector<double> markov;    ///< mean |p*_markov(i) - p(i)| per test step
    std::vector<double> baseline;  ///< same for the random baseline
};

struct MonteCarloReport {
    MonteCarloOptions options;
    std::size_t train_length = 0;
    std::size_t test_length = 0;
    std::vector<RunSummary> runs;
    double mean_markov_error = 0.0;
    double mean_baseline_error = 0.0;
    std::optional<PriceDeviationCurves> price_deviation_curves;
};

/// Everything a set of runs shares: the coded halves and the fitted model.
struct ForecastSetup {
    SymbolSequence train;
    SymbolSequence test;
    TransitionModel model;
    std::size_t test_offset = 0;  ///< index of test[0] in the full coded sequence
};

inline ForecastSetup make_setup(const SymbolSequence& full, int order_k, bool reverse) {
    auto [first, second] = split_sequence(full);
    const std::size_t first_len = first.size();
    if (reverse) std::swap(first, second);
    TransitionModel model(first, order_k);
    return {std::move(first), std::move(second), std::move(model), reverse ? 0 : first_len};
}

/// Codes 1-day returns with a scheme fitted on the model-training half only.
inline ForecastSetup make_setup(const PriceSeries& series, int alphabet_size, int order_k, bool reverse) {
    const auto returns = log_returns(series, 1);
    if (returns.size() < 4)
        throw InsufficientDataError("need at least 5 prices to split returns, got " +
                                    std::to_string(series.size()));
    const std::size_t m = returns.size() / 2;
    const auto begin = returns.values.begin();
    std::vector<double> fit_part = reverse ? std::vector<double>(begin + static_cast<std::ptrdiff_t>(m), returns.values.end())
                                           : std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(m));
    const auto fit = population_moments(fit_part);
    const CodingScheme scheme(alphabet_size, fit.mean, fit.sigma);
    return make_setup(encode(returns, scheme), order_k, reverse);
}

/// Runs `count` forecast runs, with seeds derived from (master_seed, run index).
/// Results are ordered by run index regardless of thread scheduling.
inline std::vector<ForecastRun> run_forecasts(const ForecastSetup& setup, int count, std::uint64_t master_seed,
                                              unsigned threads = 0) {
    if (count < 1) throw DomainError("number of simulations must be >= 1");
    std::vector<ForecastRun> runs(static_cast<std::size_t>(count));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++)
            runs[static_cast<std::size_t>(i)] =
                forecast_run(setup.model, setup.test, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return runs;
}

inline MonteCarloReport summarize(const ForecastSetup& setup, const std::vector<ForecastRun>& runs,
                                  const MonteCarloOptions& options) {
    MonteCarloReport report;
    report.options = options;
    report.train_length = setup.train.size();
    report.test_length = setup.test.size();
    double markov = 0.0, baseline = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        report.runs.push_back({static_cast<int>(i), runs[i].seed, runs[i].markov_error, runs[i].baseline_error});
        markov += runs[i].markov_error;
        baseline += runs[i].baseline_error;
    }
    report.mean_markov_error = markov / static_cast<double>(runs.size());
    report.mean_baseline_error = baseline / static_cast<double>(runs.size());
    return report;
}

/// Monte Carlo over an already coded sequence (no price curves).
inline MonteCarloReport monte_carlo(const SymbolSequence& full, MonteCarloOptions options) {
    options.alphabet_size = full.scheme.alphabet_size();
    options.price_curves = false;
    const auto setup = make_setup(full, options.order_k, options.reverse);
    const auto runs = run_forecasts(setup, options.num_sims, options.master_seed, options.threads);
    return summarize(setup, runs, options);
}

/// Forecast and baseline price paths for one run, plus the actual prices,
/// all anchored at the price preceding the first forecast return.
struct ReconstructedPaths {
    std::vector<double> actual;
    std::vector<double> markov;
    std::vector<double> baseline;
};

inline ReconstructedPaths reconstruct_paths(const PriceSeries& series, const ForecastSetup& setup,
                                            const ForecastRun& run) {
    const auto offset = static_cast<std::ptrdiff_t>(setup.test_offset);
    const auto len = static_cast<std::ptrdiff_t>(setup.test.size());
    ReconstructedPaths paths;
    paths.actual.assign(series.prices.begin() + offset, series.prices.begin() + offset + len + 1);
    const double anchor = paths.actual.front();
    paths.markov = reconstruct_prices(anchor, decode(run.forecast_symbols, setup.test.scheme));
    paths.baseline = reconstruct_prices(anchor, decode(run.baseline_symbols, setup.test.scheme));
    return paths;
}

/// Full price pipeline: returns, train-half scheme, coding, model, seeded runs,
/// and per-step mean absolute price deviation of both forecasters.
inline MonteCarloReport monte_carlo(const PriceSeries& series, const MonteCarloOptions& options) {
    const auto setup = make_setup(series, options.alphabet_size, options.order_k, options.reverse);
    const auto runs = run_forecasts(setup, options.num_sims, options.master_seed, options.threads);
    auto report = summarize(setup, runs, options);
    if (options.price_curves) {
        PriceDeviationCurves curves;
        curves.markov.assign(setup.test.size() + 1, 0.0);
        curves.baseline.assign(setup.test.size() + 1, 0.0);
        for (const auto& run : runs) {
            const auto paths = reconstruct_paths(series, setup, run);
            for (std::size_t i = 0; i < paths.actual.size(); ++i) {
                curves.markov[i] += std::fabs(paths.markov[i] - paths.actual[i]);
                curves.baseline[i] += std::fabs(paths.baseline[i] - paths.actual[i]);
            }
        }
        const auto n = static_cast<double>(runs.size());
        for (auto& v : curves.markov) v /= n;
        for (auto& v : curves.baseline) v /= n;
        report.price_deviation_curves = std::move(curves);
    }
    return report;
}

struct KSweepRow {
    int k = 0;
    double mean_markov_error = 0.0;
    double mean_baseline_error = 0.0;
};

/// Mean errors per chain order. Every K reuses the same master seed, so a
/// single-entry sweep equals the corresponding monte_carlo result.
template <typename Input>
std::vector<KSweepRow> k_sweep(const Input& input, int alphabet_size, std::span<const int> k_values,
                               int sims_per_k, std::uint64_t master_seed, unsigned threads = 0) {
    if (k_values.empty()) throw DomainError("k sweep needs at least one order");
    std::vector<KSweepRow> table;
    for (int k : k_values) {
        if (k < 1) throw DomainError("k sweep orders must be >= 1, got " + std::to_string(k));
        MonteCarloOptions options;
        options.alphabet_size = alphabet_size;
        options.order_k = k;
        options.num_sims = sims_per_k;
        options.master_seed = master_seed;
        options.price_curves = false;
        options.threads = threads;
        const auto report = monte_carlo(input, options);
        table.push_back({k, report.mean_markov_error, report.mean_baseline_error});
    }
    return table;
}

}  // namespace mrecon
