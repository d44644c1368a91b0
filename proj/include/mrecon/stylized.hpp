#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mrecon/error.hpp"
#include "mrecon/ingest.hpp"
#include "mrecon/preprocess.hpp"

namespace mrecon {

/// Population sigma over each trailing window of `window` returns.
/// Element j belongs to the window ending at return index j + window - 1.
inline std::vector<double> sliding_volatility(std::span<const double> returns, std::size_t window = 10) {
    if (window < 2) throw DomainError("volatility window must be >= 2");
    if (returns.size() < window)
        throw InsufficientDataError("window " + std::to_string(window) + " exceeds " +
                                    std::to_string(returns.size()) + " returns");
    std::vector<double> out;
    out.reserve(returns.size() - window + 1);
    for (std::size_t end = window; end <= returns.size(); ++end)
        out.push_back(population_moments(returns.subspan(end - window, window)).sigma);
    return out;
}

inline std::vector<double> accumulated_volatility(std::span<const double> sliding) {
    std::vector<double> out(sliding.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < sliding.size(); ++i) out[i] = acc += sliding[i];
    return out;
}

namespace detail {

inline std::vector<double> log_prices(std::span<const double> prices) {
    std::vector<double> out(prices.size());
    std::transform(prices.begin(), prices.end(), out.begin(), [](double p) { return std::log(p); });
    return out;
}

inline double power(double base, double q) {
    if (q == std::floor(q) && q >= 0.0 && q <= 64.0) {
        double r = 1.0;
        for (int i = 0; i < static_cast<int>(q); ++i) r *= base;
        return r;
    }
    return std::pow(base, q);
}

}  // namespace detail

/// delta(n) = max_t r(t, n) for n = 1..n_max. Element n-1 holds delta(n).
inline std::vector<double> max_return(std::span<const double> prices, std::size_t n_max) {
    if (n_max < 1 || n_max >= prices.size())
        throw InsufficientDataError("max_return needs 1 <= n_max < " + std::to_string(prices.size()));
    const auto lp = detail::log_prices(prices);
    std::vector<double> delta(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t + n < lp.size(); ++t) best = std::max(best, lp[t + n] - lp[t]);
        delta[n - 1] = best;
    }
    return delta;
}

/// S_q(n) = mean over t of |r(t, n)|^q; values[iq][in].
struct MomentTable {
    std::vector<double> q_values;
    std::vector<std::size_t> n_values;
    std::vector<std::vector<double>> values;
};

inline MomentTable moments(std::span<const double> prices, std::span<const double> q_values,
                           std::span<const std::size_t> n_values) {
    for (auto n : n_values) {
        if (n < 1 || n >= prices.size())
            throw InsufficientDataError("moment horizon " + std::to_string(n) + " needs 1 <= n < " +
                                        std::to_string(prices.size()));
    }
    const auto lp = detail::log_prices(prices);
    MomentTable table{{q_values.begin(), q_values.end()}, {n_values.begin(), n_values.end()}, {}};
    table.values.assign(q_values.size(), std::vector<double>(n_values.size(), 0.0));
    for (std::size_t in = 0; in < n_values.size(); ++in) {
        const std::size_t n = n_values[in];
        const std::size_t count = lp.size() - n;
        for (std::size_t iq = 0; iq < q_values.size(); ++iq) {
            double sum = 0.0;
            for (std::size_t t = 0; t < count; ++t)
                sum += detail::power(std::fabs(lp[t + n] - lp[t]), q_values[iq]);
            table.values[iq][in] = sum / static_cast<double>(count);
        }
    }
    return table;
}

struct ScalingFit {
    double q = 0.0;
    double chi = 0.0;            ///< slope of log S_q(n) against log n
    double intercept = 0.0;
    double residual_norm = 0.0;  ///< sqrt of summed squared log residuals
    std::size_t points = 0;
};

/// Log-log least-squares slope of S_q(n) over n in [n_lo, n_hi].
inline std::vector<ScalingFit> scaling_exponent(const MomentTable& table, std::size_t n_lo, std::size_t n_hi) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        if (table.n_values[i] >= n_lo && table.n_values[i] <= n_hi) cols.push_back(i);
    }
    if (cols.size() < 3)
        throw InsufficientDataError("scaling fit needs >= 3 horizons in [" + std::to_string(n_lo) + ", " +
                                    std::to_string(n_hi) + "], got " + std::to_string(cols.size()));
    std::string offending;
    for (std::size_t iq = 0; iq < table.q_values.size(); ++iq) {
        for (auto c : cols) {
            if (!(table.values[iq][c] > 0.0))
                offending += " (q=" + format_double(table.q_values[iq]) + ", n=" +
                             std::to_string(table.n_values[c]) + ")";
        }
    }
    if (!offending.empty()) throw UndefinedLogError("non-positive moments:" + offending);

    std::vector<ScalingFit> fits;
    const auto m = static_cast<double>(cols.size());
    for (std::size_t iq = 0; iq < table.q_values.size(); ++iq) {
        double mx = 0.0, my = 0.0;
        for (auto c : cols) {
            mx += std::log(static_cast<double>(table.n_values[c]));
            my += std::log(table.values[iq][c]);
        }
        mx /= m;
        my /= m;
        double sxx = 0.0, sxy = 0.0;
        for (auto c : cols) {
            const double dx = std::log(static_cast<double>(table.n_values[c])) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(table.values[iq][c]) - my);
        }
        ScalingFit fit;
        fit.q = table.q_values[iq];
        fit.chi = sxy / sxx;
        fit.intercept = my - fit.chi * mx;
        fit.points = cols.size();
        double rss = 0.0;
        for (auto c : cols) {
            const double e = std::log(table.values[iq][c]) -
                             (fit.intercept + fit.chi * std::log(static_cast<double>(table.n_values[c])));
            rss += e * e;
        }
        fit.residual_norm = std::sqrt(rss);
        fits.push_back(fit);
    }
    return fits;
}

struct CorrelationCurve {
    std::vector<double> raw;         ///< uncentered mean product at lags 0..t_max
    std::vector<double> normalized;  ///< centered, divided by lag-0 value; empty if variance is 0
};

/// C(T) = mean over t of x(t+T) x(t) with x = r or |r|, T = 0..t_max.
/// The normalized companion subtracts the series mean and divides by C(0).
inline CorrelationCurve autocorrelation(std::span<const double> returns, std::size_t t_max, bool use_absolute) {
    if (t_max >= returns.size())
        throw InsufficientDataError("lag " + std::to_string(t_max) + " needs more than " +
                                    std::to_string(returns.size()) + " returns");
    std::vector<double> x(returns.begin(), returns.end());
    if (use_absolute)
        for (auto& v : x) v = std::fabs(v);
    const auto m = population_moments(x);
    CorrelationCurve curve;
    curve.raw.resize(t_max + 1);
    std::vector<double> centered(t_max + 1);
    for (std::size_t lag = 0; lag <= t_max; ++lag) {
        const std::size_t count = x.size() - lag;
        double raw = 0.0, cen = 0.0;
        for (std::size_t t = 0; t < count; ++t) {
            raw += x[t + lag] * x[t];
            cen += (x[t + lag] - m.mean) * (x[t] - m.mean);
        }
        curve.raw[lag] = raw / static_cast<double>(count);
        centered[lag] = cen / static_cast<double>(count);
    }
    if (m.sigma > 0.0) {
        curve.normalized.resize(t_max + 1);
        for (std::size_t lag = 0; lag <= t_max; ++lag) curve.normalized[lag] = centered[lag] / centered[0];
    }
    return curve;
}

struct StylizedOptions {
    int degree = 3;
    std::size_t window = 10;
    std::size_t delta_n_max = 1000;
    std::vector<double> q_values{1, 2, 3, 4, 5, 6, 7, 8};
    std::size_t moment_n_max = 1000;
    std::size_t fit_lo = 1;
    std::size_t fit_hi = 100;
    std::size_t correlation_lag_max = 100;
};

/// Diagnostics on 1-day returns of the raw adjusted close, plus the
/// detrended / rescaled price views.
struct StylizedReport {
    TrendModel trend;
    std::vector<double> trend_values;
    std::vector<double> detrended;
    std::vector<double> rescaled;
    ReturnSeries returns;
    std::size_t volatility_window = 10;
    std::vector<double> sliding_volatility;
    std::vector<double> accumulated_volatility;
    std::vector<double> delta_curve;  ///< delta(n), n = 1..size
    MomentTable moment_table;
    std::vector<ScalingFit> chi_curve;
    CorrelationCurve return_correlation;
    CorrelationCurve absolute_correlation;
};

inline StylizedReport compute_stylized(const PriceSeries& series, const StylizedOptions& opt = {}) {
    StylizedReport rep;
    rep.trend = fit_polynomial_trend(series, opt.degree);
    rep.trend_values.resize(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) rep.trend_values[t] = rep.trend(static_cast<double>(t));
    rep.detrended = detrend(series, rep.trend);
    rep.rescaled = rescale(rep.detrended, series, rep.trend);
    rep.returns = log_returns(series, 1);
    rep.volatility_window = opt.window;
    rep.sliding_volatility = sliding_volatility(rep.returns.values, opt.window);
    rep.accumulated_volatility = accumulated_volatility(rep.sliding_volatility);

    const std::span<const double> prices(series.prices);
    rep.delta_curve = max_return(prices, std::min(opt.delta_n_max, series.size() - 1));
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= std::min(opt.moment_n_max, series.size() - 1); ++n) ns.push_back(n);
    rep.moment_table = moments(prices, opt.q_values, ns);
    rep.chi_curve = scaling_exponent(rep.moment_table, opt.fit_lo, opt.fit_hi);
    const std::size_t lag_max = std::min(opt.correlation_lag_max, rep.returns.size() - 1);
    rep.return_correlation = autocorrelation(rep.returns.values, lag_max, false);
    rep.absolute_correlation = autocorrelation(rep.returns.values, lag_max, true);
    return rep;
}

}  // namespace mrecon
