#pragma once

#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mrecon/error.hpp"
#include "mrecon/preprocess.hpp"

namespace mrecon {

using Symbol = int;

/// Symmetric N-symbol alphabet {-beta..beta} with sigma-scaled bins centered on a mean return.
class CodingScheme {
public:
    CodingScheme(int alphabet_size, double mean_r, double sigma_r)
        : alphabet_size_(alphabet_size), beta_((alphabet_size - 1) / 2), mean_(mean_r), sigma_(sigma_r) {
        if (alphabet_size < 3 || alphabet_size % 2 == 0)
            throw DomainError("alphabet size must be odd and >= 3, got " + std::to_string(alphabet_size));
        if (!std::isfinite(mean_r)) throw DomainError("coding mean must be finite");
        if (!(sigma_r > 0.0) || !std::isfinite(sigma_r))
            throw DegenerateSchemeError("coding sigma must be positive; constant returns cannot be coded");
    }

    /// Scheme centered on the mean and sigma of `returns`.
    static CodingScheme from_returns(const ReturnSeries& returns, int alphabet_size) {
        return CodingScheme(alphabet_size, returns.mean, returns.sigma);
    }

    int alphabet_size() const noexcept { return alphabet_size_; }
    int beta() const noexcept { return beta_; }
    double mean() const noexcept { return mean_; }
    double sigma() const noexcept { return sigma_; }

    bool contains(Symbol s) const noexcept { return s >= -beta_ && s <= beta_; }

    /// Zero-based position of `s` in alphabet order -beta..beta.
    std::size_t index_of(Symbol s) const noexcept { return static_cast<std::size_t>(s + beta_); }
    Symbol symbol_at(std::size_t index) const noexcept { return static_cast<Symbol>(index) - beta_; }

    /// Bin boundaries sit at k*sigma/beta, k = 1..beta. Intervals are
    /// left-open right-closed, so a value on a boundary takes the smaller |symbol|.
    Symbol encode(double r) const noexcept {
        const double d = r - mean_;
        const double a = std::fabs(d);
        const int sign = d < 0.0 ? -1 : 1;
        if (a > sigma_) return sign * beta_;
        for (int k = 0; k < beta_ - 1; ++k) {
            if (a <= (k + 1) * sigma_ / beta_) return sign * k;
        }
        return sign * (beta_ - 1);
    }

    /// Representative return of symbol `s`: mean + 2 sigma s / (N - 1).
    double decode(Symbol s) const {
        if (!contains(s))
            throw DomainError("symbol " + std::to_string(s) + " outside alphabet [-" +
                              std::to_string(beta_) + ", " + std::to_string(beta_) + "]");
        return mean_ + (2.0 * sigma_ / (alphabet_size_ - 1)) * s;
    }

    friend bool operator==(const CodingScheme&, const CodingScheme&) = default;

private:
    int alphabet_size_;
    int beta_;
    double mean_;
    double sigma_;
};

struct SymbolSequence {
    std::vector<Symbol> symbols;
    CodingScheme scheme;

    std::size_t size() const noexcept { return symbols.size(); }
};

inline SymbolSequence encode(std::span<const double> returns, const CodingScheme& scheme) {
    SymbolSequence out{{}, scheme};
    out.symbols.reserve(returns.size());
    for (double r : returns) out.symbols.push_back(scheme.encode(r));
    return out;
}

inline SymbolSequence encode(const ReturnSeries& returns, const CodingScheme& scheme) {
    return encode(std::span<const double>(returns.values), scheme);
}

inline double decode_symbol(Symbol s, const CodingScheme& scheme) { return scheme.decode(s); }

inline std::vector<double> decode(std::span<const Symbol> symbols, const CodingScheme& scheme) {
    std::vector<double> out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) out.push_back(scheme.decode(s));
    return out;
}

/// p*_0 = p0, p*_i = p*_{i-1} exp(r*_i). Output has one more element than `returns`.
inline std::vector<double> reconstruct_prices(double p0, std::span<const double> returns) {
    if (!(p0 > 0.0) || !std::isfinite(p0))
        throw DomainError("anchor price must be positive, got " + std::to_string(p0));
    std::vector<double> out;
    out.reserve(returns.size() + 1);
    out.push_back(p0);
    for (double r : returns) out.push_back(out.back() * std::exp(r));
    return out;
}

/// One line of comma-separated signed integers.
inline std::string format_symbols(std::span<const Symbol> symbols) {
    std::string out;
    out.reserve(symbols.size() * 3);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(symbols[i]);
    }
    return out;
}

inline std::vector<Symbol> parse_symbols(std::string_view line) {
    std::vector<Symbol> out;
    line = trim(line);
    if (line.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto field = trim(line.substr(start, comma - start));
        Symbol value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size())
            throw FormatError("bad symbol '" + std::string(field) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace mrecon
