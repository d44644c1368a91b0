#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mrecon/error.hpp"
#include "mrecon/format.hpp"

namespace mrecon {

/// Calendar date, ordered chronologically.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;

    /// Parses strict `YYYY-MM-DD`. Returns false on any deviation.
    static bool parse(std::string_view text, Date& out) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
        auto digits = [&](std::size_t pos, std::size_t len, int& value) {
            value = 0;
            for (std::size_t i = pos; i < pos + len; ++i) {
                if (text[i] < '0' || text[i] > '9') return false;
                value = value * 10 + (text[i] - '0');
            }
            return true;
        };
        Date d;
        if (!digits(0, 4, d.year) || !digits(5, 2, d.month) || !digits(8, 2, d.day)) return false;
        if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
            return false;
        out = d;
        return true;
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        return buf;
    }

    static int days_in_month(int y, int m) {
        static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return m == 2 && leap ? 29 : days[m - 1];
    }
};

/// Dated adjusted-close observations, ascending by date.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> prices;
    std::string symbol_label;

    std::size_t size() const noexcept { return prices.size(); }

    double mean_price() const {
        return std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
    }

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Checks every PriceSeries invariant and returns the series unchanged.
inline PriceSeries validate_series(PriceSeries series) {
    if (series.dates.size() != series.prices.size())
        throw ValidationError("dates and prices differ in length");
    if (series.prices.size() < 2)
        throw InsufficientDataError("price series needs at least 2 observations, got " +
                                    std::to_string(series.prices.size()));
    for (std::size_t i = 0; i < series.prices.size(); ++i) {
        const double p = series.prices[i];
        if (!std::isfinite(p) || p <= 0.0)
            throw ValidationError("row " + std::to_string(i) + " (" + series.dates[i].to_string() +
                                  "): price must be positive and finite, got " + format_double(p));
        if (i > 0) {
            if (series.dates[i] == series.dates[i - 1])
                throw ValidationError("duplicate date " + series.dates[i].to_string());
            if (series.dates[i] < series.dates[i - 1])
                throw ValidationError("dates not increasing at " + series.dates[i].to_string());
        }
    }
    return series;
}

struct ParsedPrices {
    PriceSeries series;
    std::size_t skipped_rows = 0;  ///< rows with a "null" or empty adjusted close
};

inline constexpr std::string_view kPriceCsvHeader = "Date,Open,High,Low,Close,Adj Close,Volume";

/// Reads a provider export (Date, Open, High, Low, Close, Adj Close, Volume)
/// keeping the date and adjusted-close columns. Rows are sorted ascending.
inline ParsedPrices parse_price_csv(std::istream& in, std::string label = {}) {
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty input; expected header '" + std::string(kPriceCsvHeader) + "'");
    std::string_view header = trim(line);
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    {
        std::vector<std::string_view> cols;
        std::size_t start = 0;
        while (true) {
            const auto comma = header.find(',', start);
            cols.push_back(trim(header.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        static constexpr std::string_view expected[] = {"Date",  "Open",      "High",  "Low",
                                                        "Close", "Adj Close", "Volume"};
        bool ok = cols.size() == std::size(expected);
        for (std::size_t i = 0; ok && i < cols.size(); ++i) ok = cols[i] == expected[i];
        if (!ok)
            throw FormatError("malformed header '" + std::string(header) + "'; expected '" +
                              std::string(kPriceCsvHeader) + "'");
    }

    struct Row {
        Date date;
        double price;
    };
    std::vector<Row> rows;
    ParsedPrices result;
    std::size_t line_no = 1;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        fields.clear();
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            fields.push_back(trim(text.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 7)
            throw RowError(line_no, "expected 7 columns, got " + std::to_string(fields.size()));
        Date date;
        if (!Date::parse(fields[0], date))
            throw RowError(line_no, "bad date '" + std::string(fields[0]) + "', expected YYYY-MM-DD");
        const std::string_view adj = fields[5];
        if (adj.empty() || adj == "null") {
            ++result.skipped_rows;
            continue;
        }
        const auto price = parse_double(adj);
        if (!price) throw RowError(line_no, "non-numeric adjusted close '" + std::string(adj) + "'");
        rows.push_back({date, *price});
    }
    if (rows.size() < 2)
        throw InsufficientDataError("need at least 2 usable rows, got " + std::to_string(rows.size()));

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    result.series.symbol_label = std::move(label);
    result.series.dates.reserve(rows.size());
    result.series.prices.reserve(rows.size());
    for (const auto& r : rows) {
        result.series.dates.push_back(r.date);
        result.series.prices.push_back(r.price);
    }
    result.series = validate_series(std::move(result.series));
    return result;
}

/// Writes a series in the provider layout. Every price column carries the
/// adjusted close; volume is 0.
inline void write_price_csv(std::ostream& out, const PriceSeries& series) {
    out << kPriceCsvHeader << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::string p = format_double(series.prices[i]);
        out << series.dates[i].to_string() << ',' << p << ',' << p << ',' << p << ',' << p << ','
            << p << ",0\n";
    }
}

}  // namespace mrecon
