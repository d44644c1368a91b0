// mrecon: command-line front end for the market process reconstruction library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrecon/coder.hpp"
#include "mrecon/forecast.hpp"
#include "mrecon/ingest.hpp"
#include "mrecon/markov.hpp"
#include "mrecon/preprocess.hpp"
#include "mrecon/randomwalk.hpp"
#include "mrecon/serialize.hpp"
#include "mrecon/stylized.hpp"

namespace fs = std::filesystem;
using namespace mrecon;

namespace {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

/// "a..b" inclusive, or a single integer.
bool parse_range(const std::string& text, IntRange& out) {
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            out.lo = out.hi = std::stoi(text, &used);
            return used == text.size();
        }
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        out.lo = std::stoi(a, &used);
        if (used != a.size()) return false;
        out.hi = std::stoi(b, &used);
        return used == b.size() && out.lo <= out.hi;
    } catch (const std::exception&) {
        return false;
    }
}

struct RunConfig {
    std::string command;
    std::string input_path;
    int n_symbols = 3;
    int order_k = 1;
    int sims = 500;
    std::uint64_t seed = 0;
    int degree = 3;
    int window = 10;
    std::string k_range = "2..8";
    std::string fit_range = "1..100";
    std::string output_dir = "out";
    bool reverse = false;
    int runs = 4;
    double start_price = 0.0;
};

class Outputs {
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    std::ofstream open(const std::string& name) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        written_.push_back(path.string());
        return out;
    }

    void json(const std::string& name, const nlohmann::json& value) { open(name) << value.dump(2) << '\n'; }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

PriceSeries load(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw CLI::RequiredError("--input");
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) throw Error("cannot open input " + cfg.input_path);
    auto parsed = parse_price_csv(in, fs::path(cfg.input_path).stem().string());
    if (parsed.skipped_rows > 0)
        std::cerr << "warning: skipped " << parsed.skipped_rows << " rows without an adjusted close\n";
    return std::move(parsed.series);
}

std::string num(double v) { return format_double(v); }

void cmd_stats(const RunConfig& cfg, Outputs& out) {
    const auto series = load(cfg);
    IntRange fit;
    parse_range(cfg.fit_range, fit);
    StylizedOptions opt;
    opt.degree = cfg.degree;
    opt.window = static_cast<std::size_t>(cfg.window);
    opt.fit_lo = static_cast<std::size_t>(fit.lo);
    opt.fit_hi = static_cast<std::size_t>(fit.hi);
    const auto rep = compute_stylized(series, opt);

    {
        auto f = out.open("fig4_price_trend.csv");
        f << "t,date,price,trend\n";
        for (std::size_t t = 0; t < series.size(); ++t)
            f << t << ',' << series.dates[t].to_string() << ',' << num(series.prices[t]) << ','
              << num(rep.trend_values[t]) << '\n';
    }
    {
        auto f = out.open("fig5_detrended_rescaled.csv");
        f << "t,detrended,rescaled\n";
        for (std::size_t t = 0; t < series.size(); ++t)
            f << t << ',' << num(rep.detrended[t]) << ',' << num(rep.rescaled[t]) << '\n';
    }
    {
        auto f = out.open("fig6_returns.csv");
        f << "t,r,r_next\n";
        const auto& r = rep.returns.values;
        for (std::size_t t = 0; t < r.size(); ++t)
            f << t << ',' << num(r[t]) << ',' << (t + 1 < r.size() ? num(r[t + 1]) : std::string{}) << '\n';
    }
    const std::size_t first = rep.volatility_window - 1;
    {
        auto f = out.open("fig7a_sliding_volatility.csv");
        f << "t,sigma\n";
        for (std::size_t j = 0; j < rep.sliding_volatility.size(); ++j)
            f << first + j << ',' << num(rep.sliding_volatility[j]) << '\n';
    }
    {
        auto f = out.open("fig7b_accumulated_volatility.csv");
        f << "t,accumulated\n";
        for (std::size_t j = 0; j < rep.accumulated_volatility.size(); ++j)
            f << first + j << ',' << num(rep.accumulated_volatility[j]) << '\n';
    }
    {
        auto f = out.open("fig8a_max_return.csv");
        f << "n,delta\n";
        for (std::size_t i = 0; i < rep.delta_curve.size(); ++i) f << i + 1 << ',' << num(rep.delta_curve[i]) << '\n';
    }
    {
        auto f = out.open("fig8b_moments.csv");
        f << 'n';
        for (double q : rep.moment_table.q_values) f << ",S_" << num(q);
        f << '\n';
        for (std::size_t in = 0; in < rep.moment_table.n_values.size(); ++in) {
            f << rep.moment_table.n_values[in];
            for (const auto& row : rep.moment_table.values) f << ',' << num(row[in]);
            f << '\n';
        }
    }
    {
        auto f = out.open("fig9_scaling_exponent.csv");
        f << "q,chi,intercept,residual_norm,points\n";
        for (const auto& c : rep.chi_curve)
            f << num(c.q) << ',' << num(c.chi) << ',' << num(c.intercept) << ',' << num(c.residual_norm) << ','
              << c.points << '\n';
    }
    {
        auto f = out.open("fig10_correlation.csv");
        f << "T,C_r,C_abs_r,C_r_normalized,C_abs_r_normalized\n";
        const auto& a = rep.return_correlation;
        const auto& b = rep.absolute_correlation;
        for (std::size_t lag = 0; lag < a.raw.size(); ++lag) {
            f << lag << ',' << num(a.raw[lag]) << ',' << num(b.raw[lag]) << ','
              << (a.normalized.empty() ? std::string{} : num(a.normalized[lag])) << ','
              << (b.normalized.empty() ? std::string{} : num(b.normalized[lag])) << '\n';
        }
    }
    out.json("stats.json", to_json(rep));
}

void cmd_encode(const RunConfig& cfg, Outputs& out) {
    const auto series = load(cfg);
    const auto setup = make_setup(series, cfg.n_symbols, cfg.order_k, cfg.reverse);
    std::vector<Symbol> full = cfg.reverse ? setup.test.symbols : setup.train.symbols;
    const auto& other = cfg.reverse ? setup.train.symbols : setup.test.symbols;
    full.insert(full.end(), other.begin(), other.end());

    out.open("symbols.txt") << format_symbols(full) << '\n';
    out.json("transition_model.json",
             {{"scheme", to_json(setup.test.scheme)}, {"train_length", setup.train.size()}, {"model", to_json(setup.model)}});

    // Column-stochastic view of the full-order tensor: one column per observed context.
    auto f = out.open("transition_matrix.csv");
    const auto& level = setup.model.counts().levels.back();
    f << "successor";
    for (const auto& [ctx, cell] : level) f << ",\"" << format_symbols(ctx) << '"';
    f << '\n';
    const int beta = setup.model.beta();
    for (int s = -beta; s <= beta; ++s) {
        f << s;
        for (const auto& [ctx, cell] : level)
            f << ',' << num(static_cast<double>(cell.successors[static_cast<std::size_t>(s + beta)]) /
                            static_cast<double>(cell.total));
        f << '\n';
    }
}

MonteCarloOptions mc_options(const RunConfig& cfg) {
    MonteCarloOptions o;
    o.alphabet_size = cfg.n_symbols;
    o.order_k = cfg.order_k;
    o.num_sims = cfg.sims;
    o.master_seed = cfg.seed;
    o.reverse = cfg.reverse;
    return o;
}

void cmd_reconstruct(const RunConfig& cfg, Outputs& out) {
    const auto series = load(cfg);
    const auto setup = make_setup(series, cfg.n_symbols, cfg.order_k, cfg.reverse);
    const auto runs = run_forecasts(setup, cfg.runs, cfg.seed);
    std::vector<ReconstructedPaths> paths;
    for (const auto& r : runs) paths.push_back(reconstruct_paths(series, setup, r));

    auto f = out.open("fig12_reconstruction.csv");
    f << "step,date,actual";
    for (std::size_t i = 0; i < paths.size(); ++i) f << ",markov_" << i << ",random_" << i;
    f << '\n';
    for (std::size_t t = 0; t < paths.front().actual.size(); ++t) {
        f << t << ',' << series.dates[setup.test_offset + t].to_string() << ',' << num(paths.front().actual[t]);
        for (const auto& p : paths) f << ',' << num(p.markov[t]) << ',' << num(p.baseline[t]);
        f << '\n';
    }
}

void cmd_montecarlo(const RunConfig& cfg, Outputs& out) {
    const auto series = load(cfg);
    const auto report = monte_carlo(series, mc_options(cfg));
    out.json("montecarlo.json", to_json(report));
    {
        auto f = out.open("fig11_errors.csv");
        f << "run,seed,markov_error,baseline_error\n";
        for (const auto& r : report.runs)
            f << r.index << ',' << r.seed << ',' << num(r.markov_error) << ',' << num(r.baseline_error) << '\n';
    }
    auto f = out.open("fig13_price_deviation.csv");
    f << "step,markov,baseline\n";
    const auto& c = *report.price_deviation_curves;
    for (std::size_t t = 0; t < c.markov.size(); ++t) f << t << ',' << num(c.markov[t]) << ',' << num(c.baseline[t]) << '\n';
}

void cmd_ksweep(const RunConfig& cfg, Outputs& out) {
    const auto series = load(cfg);
    IntRange range;
    parse_range(cfg.k_range, range);
    std::vector<int> ks;
    for (int k = range.lo; k <= range.hi; ++k) ks.push_back(k);
    const auto table = k_sweep(series, cfg.n_symbols, std::span<const int>(ks), cfg.sims, cfg.seed);

    nlohmann::json rows = nlohmann::json::array();
    auto f = out.open("fig14_ksweep.csv");
    f << "k,markov_error,baseline_error\n";
    for (const auto& row : table) {
        f << row.k << ',' << num(row.mean_markov_error) << ',' << num(row.mean_baseline_error) << '\n';
        rows.push_back({{"k", row.k}, {"mean_markov_error", row.mean_markov_error},
                        {"mean_baseline_error", row.mean_baseline_error}});
    }
    out.json("ksweep.json", {{"params", {{"alphabet_size", cfg.n_symbols}, {"sims_per_k", cfg.sims}, {"master_seed", cfg.seed}}},
                             {"rows", std::move(rows)}});
}

void cmd_randomwalk(const RunConfig& cfg, Outputs& out) {
    for (std::size_t steps : {50u, 100u, 1000u, 10000u}) {
        UniformSource rng(derive_seed(cfg.seed, steps));
        const auto path = simulate_walk(cfg.start_price, steps, rng);
        auto f = out.open("fig1_walk_" + std::to_string(steps) + ".csv");
        f << "t,price\n0," << num(path.start_price) << '\n';
        for (std::size_t t = 0; t < path.values.size(); ++t) f << t + 1 << ',' << num(path.values[t]) << '\n';
    }
    const std::size_t steps = 1000;
    const auto stats = ensemble_stats(cfg.start_price, steps, static_cast<std::size_t>(cfg.sims), cfg.seed);
    auto f = out.open("randomwalk_ensemble.csv");
    f << "t,mean,stddev,analytic_stddev\n";
    for (std::size_t t = 0; t < stats.size(); ++t)
        f << t + 1 << ',' << num(stats[t].mean) << ',' << num(stats[t].stddev) << ','
          << num(std::sqrt(static_cast<double>(t + 1))) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov reconstruction of market processes from price series"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;

    app.add_option("--input", cfg.input_path, "Price CSV (Date,Open,High,Low,Close,Adj Close,Volume)");
    app.add_option("--symbols", cfg.n_symbols, "Alphabet size N (odd, >= 3)")
        ->check([](const std::string& s) {
            int n = 0;
            try { n = std::stoi(s); } catch (...) { return std::string("not an integer"); }
            return n >= 3 && n % 2 == 1 ? std::string{} : std::string("must be odd and >= 3");
        });
    app.add_option("--order", cfg.order_k, "Chain order K")->check(CLI::PositiveNumber);
    app.add_option("--sims", cfg.sims, "Simulations (random-walk paths for randomwalk)")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Master seed");
    app.add_option("--degree", cfg.degree, "Trend polynomial degree")->check(CLI::NonNegativeNumber);
    app.add_option("--window", cfg.window, "Sliding volatility window")->check(CLI::Range(2, 1 << 30));
    auto range_check = [](const std::string& s) {
        IntRange r;
        return parse_range(s, r) && r.lo >= 1 ? std::string{} : std::string("expected lo..hi with 1 <= lo <= hi");
    };
    app.add_option("--k-range", cfg.k_range, "Chain orders for ksweep, lo..hi")->check(range_check);
    app.add_option("--fit-range", cfg.fit_range, "Horizon range for the scaling fit, lo..hi")->check(range_check);
    app.add_option("--output-dir", cfg.output_dir, "Output directory (MARKET_RECON_OUT overrides)");
    app.add_flag("--reverse", cfg.reverse, "Fit on the second half and forecast the first");
    app.add_option("--runs", cfg.runs, "Runs drawn by reconstruct")->check(CLI::PositiveNumber);
    app.add_option("--start", cfg.start_price, "Random walk start value");

    for (const char* name : {"stats", "encode", "reconstruct", "montecarlo", "ksweep", "randomwalk"})
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("MARKET_RECON_OUT"); env && *env) cfg.output_dir = env;
    if (cfg.command == "randomwalk" && cfg.sims < 2) {
        std::cerr << "error: randomwalk needs --sims >= 2\n";
        return 2;
    }

    try {
        Outputs out{fs::path(cfg.output_dir)};
        if (cfg.command == "stats") cmd_stats(cfg, out);
        else if (cfg.command == "encode") cmd_encode(cfg, out);
        else if (cfg.command == "reconstruct") cmd_reconstruct(cfg, out);
        else if (cfg.command == "montecarlo") cmd_montecarlo(cfg, out);
        else if (cfg.command == "ksweep") cmd_ksweep(cfg, out);
        else if (cfg.command == "randomwalk") cmd_randomwalk(cfg, out);
        for (const auto& p : out.written()) std::cout << p << '\n';
    } catch (const CLI::RequiredError& e) {
        std::cerr << "error: " << cfg.command << " requires " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
