#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mrecon/coder.hpp"
#include "mrecon/error.hpp"

namespace mrecon {

/// Symbol context ordered oldest to newest; the last element is the symbol
/// immediately before the one being predicted.
using Context = std::vector<Symbol>;

struct SuccessorCounts {
    std::vector<std::uint64_t> successors;  ///< indexed by alphabet position
    std::uint64_t total = 0;
};

/// Window counts for every context length z = 0..order_k.
///
/// Level z holds, for each observed length-z context, how often each symbol
/// followed it. Level order_k is the full-order tensor (array A, with the
/// per-context totals playing the role of array B); shorter levels feed backoff.
/// Every window of length z + 1 in the sequence is counted at level z, so
/// level z sums to (length - z).
struct TransitionCounts {
    int order_k = 0;
    int alphabet_size = 3;
    std::vector<std::map<Context, SuccessorCounts>> levels;

    std::uint64_t level_total(int z) const {
        std::uint64_t sum = 0;
        for (const auto& [ctx, c] : levels.at(static_cast<std::size_t>(z))) sum += c.total;
        return sum;
    }
};

inline TransitionCounts count_transitions(std::span<const Symbol> sequence, int alphabet_size, int k) {
    if (k < 0) throw DomainError("chain order must be non-negative");
    if (alphabet_size < 3 || alphabet_size % 2 == 0)
        throw DomainError("alphabet size must be odd and >= 3, got " + std::to_string(alphabet_size));
    if (sequence.size() < static_cast<std::size_t>(k) + 1)
        throw InsufficientDataError("order " + std::to_string(k) + " needs at least " +
                                    std::to_string(k + 1) + " symbols, got " +
                                    std::to_string(sequence.size()));
    const int beta = (alphabet_size - 1) / 2;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (sequence[i] < -beta || sequence[i] > beta)
            throw DomainError("symbol " + std::to_string(sequence[i]) + " at position " +
                              std::to_string(i) + " outside alphabet");
    }

    TransitionCounts counts;
    counts.order_k = k;
    counts.alphabet_size = alphabet_size;
    counts.levels.resize(static_cast<std::size_t>(k) + 1);
    const auto n = static_cast<std::size_t>(alphabet_size);
    Context ctx;
    for (std::size_t end = 0; end < sequence.size(); ++end) {
        const auto successor = static_cast<std::size_t>(sequence[end] + beta);
        const std::size_t max_z = std::min<std::size_t>(static_cast<std::size_t>(k), end);
        for (std::size_t z = 0; z <= max_z; ++z) {
            ctx.assign(sequence.begin() + static_cast<std::ptrdiff_t>(end - z),
                       sequence.begin() + static_cast<std::ptrdiff_t>(end));
            auto& cell = counts.levels[z][ctx];
            if (cell.successors.empty()) cell.successors.assign(n, 0);
            ++cell.successors[successor];
            ++cell.total;
        }
    }
    return counts;
}

struct ConditionalDistribution {
    std::vector<double> probabilities;  ///< over symbols -beta..beta
    int source_context_length = 0;      ///< context length used after backoff
};

/// Order-K chain estimated by counting, with backoff for unseen contexts.
/// Immutable once built; safe to share across threads.
class TransitionModel {
public:
    TransitionModel(std::span<const Symbol> train, int alphabet_size, int k)
        : counts_(count_transitions(train, alphabet_size, k)) {}

    TransitionModel(const SymbolSequence& train, int k)
        : TransitionModel(std::span<const Symbol>(train.symbols), train.scheme.alphabet_size(), k) {}

    explicit TransitionModel(TransitionCounts counts) : counts_(std::move(counts)) {}

    int order_k() const noexcept { return counts_.order_k; }
    int alphabet_size() const noexcept { return counts_.alphabet_size; }
    int beta() const noexcept { return (counts_.alphabet_size - 1) / 2; }
    const TransitionCounts& counts() const noexcept { return counts_; }

    /// Counts for `context` exactly as stored, or nullptr if never observed.
    const SuccessorCounts* find(std::span<const Symbol> context) const {
        if (context.size() > static_cast<std::size_t>(order_k())) return nullptr;
        const auto& level = counts_.levels[context.size()];
        auto it = level.find(Context(context.begin(), context.end()));
        return it == level.end() ? nullptr : &it->second;
    }

    /// Successor distribution for `context`, dropping the oldest symbol until
    /// an observed context is found. The empty context gives the marginal.
    ConditionalDistribution conditional_distribution(std::span<const Symbol> context) const {
        if (context.size() > static_cast<std::size_t>(order_k()))
            throw DomainError("context length " + std::to_string(context.size()) +
                              " exceeds chain order " + std::to_string(order_k()));
        for (Symbol s : context) {
            if (s < -beta() || s > beta())
                throw DomainError("context symbol " + std::to_string(s) + " outside alphabet");
        }
        for (std::size_t drop = 0; drop <= context.size(); ++drop) {
            const auto* cell = find(context.subspan(drop));
            if (cell == nullptr || cell->total == 0) continue;
            ConditionalDistribution dist;
            dist.source_context_length = static_cast<int>(context.size() - drop);
            dist.probabilities.resize(cell->successors.size());
            const auto total = static_cast<double>(cell->total);
            for (std::size_t i = 0; i < cell->successors.size(); ++i)
                dist.probabilities[i] = static_cast<double>(cell->successors[i]) / total;
            return dist;
        }
        throw NoDistributionError("transition model holds no observations");
    }

    ConditionalDistribution conditional_distribution(std::initializer_list<Symbol> context) const {
        return conditional_distribution(std::span<const Symbol>(context.begin(), context.size()));
    }

private:
    TransitionCounts counts_;
};

/// Inverse-CDF draw: the smallest symbol with positive probability whose
/// cumulative probability is >= epsilon. Epsilon beyond the accumulated mass
/// (rounding at 1.0) falls to the largest positive-probability symbol.
inline Symbol sample_next(const ConditionalDistribution& dist, double epsilon) {
    const int beta = static_cast<int>(dist.probabilities.size() - 1) / 2;
    double cumulative = 0.0;
    int last_positive = -1;
    for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
        const double p = dist.probabilities[i];
        if (p <= 0.0) continue;
        cumulative += p;
        last_positive = static_cast<int>(i);
        if (epsilon <= cumulative) return static_cast<Symbol>(i) - beta;
    }
    if (last_positive < 0) throw NoDistributionError("distribution has no positive mass");
    return last_positive - beta;
}

/// One (context, successor) cell of the exported tensor.
struct TransitionRow {
    Context context;
    Symbol successor = 0;
    std::uint64_t count = 0;
    double probability = 0.0;
};

/// Every observed context at every level, ordered by context length, then
/// lexicographically by context, then by successor symbol.
inline std::vector<TransitionRow> export_rows(const TransitionModel& model) {
    std::vector<TransitionRow> rows;
    const int beta = model.beta();
    for (const auto& level : model.counts().levels) {
        for (const auto& [ctx, cell] : level) {
            for (std::size_t i = 0; i < cell.successors.size(); ++i) {
                rows.push_back({ctx, static_cast<Symbol>(i) - beta, cell.successors[i],
                                cell.total ? static_cast<double>(cell.successors[i]) /
                                                 static_cast<double>(cell.total)
                                           : 0.0});
            }
        }
    }
    return rows;
}

}  // namespace mrecon
