#pragma once

// JSON views of the library types (nlohmann/json).

#include <json.hpp>

#include "mrecon/coder.hpp"
#include "mrecon/forecast.hpp"
#include "mrecon/markov.hpp"
#include "mrecon/stylized.hpp"

namespace mrecon {

inline nlohmann::json to_json(const CodingScheme& s) {
    return {{"alphabet_size", s.alphabet_size()}, {"beta", s.beta()}, {"mean_r", s.mean()}, {"sigma_r", s.sigma()}};
}

/// Rows (context, successor, count, probability), one array per context length.
inline nlohmann::json to_json(const TransitionModel& model) {
    nlohmann::json levels = nlohmann::json::array();
    for (int z = 0; z <= model.order_k(); ++z) levels.push_back({{"context_length", z}, {"rows", nlohmann::json::array()}});
    for (const auto& row : export_rows(model)) {
        levels[row.context.size()]["rows"].push_back(
            {{"context", row.context}, {"successor", row.successor}, {"count", row.count}, {"probability", row.probability}});
    }
    return {{"order_k", model.order_k()}, {"alphabet_size", model.alphabet_size()}, {"levels", std::move(levels)}};
}

inline nlohmann::json to_json(const MonteCarloOptions& o) {
    return {{"alphabet_size", o.alphabet_size}, {"order_k", o.order_k}, {"num_sims", o.num_sims},
            {"master_seed", o.master_seed},     {"reverse", o.reverse}};
}

inline nlohmann::json to_json(const MonteCarloReport& r) {
    nlohmann::json per_run = nlohmann::json::array();
    for (const auto& run : r.runs)
        per_run.push_back({{"index", run.index}, {"seed", run.seed}, {"markov_error", run.markov_error},
                           {"baseline_error", run.baseline_error}});
    nlohmann::json out{{"params", to_json(r.options)},
                       {"train_length", r.train_length},
                       {"test_length", r.test_length},
                       {"per_run", std::move(per_run)},
                       {"mean_markov_error", r.mean_markov_error},
                       {"mean_baseline_error", r.mean_baseline_error}};
    if (r.price_deviation_curves)
        out["price_deviation_curves"] = {{"markov", r.price_deviation_curves->markov},
                                         {"baseline", r.price_deviation_curves->baseline}};
    else
        out["price_deviation_curves"] = nullptr;
    return out;
}

/// Scalar summary; the curves go to CSV.
inline nlohmann::json to_json(const StylizedReport& r) {
    nlohmann::json chi = nlohmann::json::array();
    for (const auto& f : r.chi_curve)
        chi.push_back({{"q", f.q}, {"chi", f.chi}, {"intercept", f.intercept}, {"residual_norm", f.residual_norm},
                       {"points", f.points}});
    return {{"trend", {{"degree", r.trend.degree}, {"coefficients", r.trend.coefficients}}},
            {"returns", {{"count", r.returns.size()}, {"mean", r.returns.mean}, {"sigma", r.returns.sigma}}},
            {"volatility_window", r.volatility_window},
            {"chi_curve", std::move(chi)}};
}

}  // namespace mrecon
