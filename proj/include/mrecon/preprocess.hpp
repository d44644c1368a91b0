#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mrecon/error.hpp"
#include "mrecon/ingest.hpp"

namespace mrecon {

/// Polynomial q(t) = c0 + c1 t + ... over the trading-day index t.
struct TrendModel {
    int degree = 0;
    std::vector<double> coefficients;  ///< ascending powers, size degree + 1

    double operator()(double t) const {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
};

/// Least-squares polynomial fit of prices against t = 0..T-1.
///
/// The abscissa is scaled to [0, 1] before a column-pivoted Householder QR
/// solve and the coefficients are mapped back, so large T with degree 3 stays
/// well conditioned.
inline TrendModel fit_polynomial_trend(std::span<const double> values, int degree = 3) {
    if (degree < 0) throw DomainError("polynomial degree must be non-negative");
    const auto count = values.size();
    if (count <= static_cast<std::size_t>(degree))
        throw UnderdeterminedFitError("degree " + std::to_string(degree) + " fit needs more than " +
                                      std::to_string(degree) + " points, got " +
                                      std::to_string(count));
    const auto rows = static_cast<Eigen::Index>(count);
    const auto cols = static_cast<Eigen::Index>(degree + 1);
    const double scale = count > 1 ? static_cast<double>(count - 1) : 1.0;

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double u = static_cast<double>(i) / scale;
        double power = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            design(i, j) = power;
            power *= u;
        }
        rhs(i) = values[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(rhs);

    TrendModel model;
    model.degree = degree;
    model.coefficients.resize(static_cast<std::size_t>(cols));
    double factor = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
        model.coefficients[static_cast<std::size_t>(j)] = scaled(j) / factor;
        factor *= scale;
    }
    return model;
}

inline TrendModel fit_polynomial_trend(const PriceSeries& series, int degree = 3) {
    return fit_polynomial_trend(std::span<const double>(series.prices), degree);
}

/// p(t) - q(t).
inline std::vector<double> detrend(const PriceSeries& series, const TrendModel& trend) {
    std::vector<double> out(series.size());
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = series.prices[t] - trend(static_cast<double>(t));
    return out;
}

/// x(t) = detrended(t) * <p> / q(t), with <p> the mean raw price.
inline std::vector<double> rescale(std::span<const double> detrended, const PriceSeries& series,
                                   const TrendModel& trend) {
    if (detrended.size() != series.size())
        throw DomainError("detrended length " + std::to_string(detrended.size()) +
                          " != series length " + std::to_string(series.size()));
    const double mean_price = series.mean_price();
    std::vector<double> out(detrended.size());
    for (std::size_t t = 0; t < out.size(); ++t) {
        const double q = trend(static_cast<double>(t));
        if (q == 0.0) throw SingularTrendError(t);
        out[t] = detrended[t] * mean_price / q;
    }
    return out;
}

/// Mean and population standard deviation.
struct Moments {
    double mean = 0.0;
    double sigma = 0.0;
};

inline Moments population_moments(std::span<const double> values) {
    if (values.empty()) return {};
    const double first = values.front();
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == first; }))
        return {first, 0.0};
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / n)};
}

/// n-day log returns r(t, n) = ln p(t+n) - ln p(t) with cached mean and sigma.
struct ReturnSeries {
    int horizon_n = 1;
    std::vector<double> values;
    double mean = 0.0;
    double sigma = 0.0;

    std::size_t size() const noexcept { return values.size(); }

    static ReturnSeries from_values(std::vector<double> values, int horizon = 1) {
        ReturnSeries r;
        r.horizon_n = horizon;
        r.values = std::move(values);
        const auto m = population_moments(r.values);
        r.mean = m.mean;
        r.sigma = m.sigma;
        return r;
    }
};

inline ReturnSeries log_returns(std::span<const double> prices, int n = 1) {
    if (n < 1) throw DomainError("return horizon must be positive");
    if (prices.size() <= static_cast<std::size_t>(n))
        throw InsufficientDataError("horizon " + std::to_string(n) + " needs more than " +
                                    std::to_string(n) + " prices, got " +
                                    std::to_string(prices.size()));
    std::vector<double> values(prices.size() - static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < values.size(); ++t)
        values[t] = std::log(prices[t + static_cast<std::size_t>(n)]) - std::log(prices[t]);
    return ReturnSeries::from_values(std::move(values), n);
}

inline ReturnSeries log_returns(const PriceSeries& series, int n = 1) {
    return log_returns(std::span<const double>(series.prices), n);
}

}  // namespace mrecon
