#pragma once

#include "sealscript/corpus.hpp"
#include "sealscript/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace sealscript {

/// A state of the bigram chain: BEGIN, a sign, or END.
struct Symbol {
    enum class Kind : std::uint8_t { Begin, Sign, End };

    Kind kind = Kind::Sign;
    SignCode code{};

    static constexpr Symbol begin() { return {Kind::Begin, SignCode{}}; }
    static constexpr Symbol end() { return {Kind::End, SignCode{}}; }
    static constexpr Symbol sign(SignCode c) { return {Kind::Sign, c}; }

    friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
};

inline std::string to_string(const Symbol& s) {
    switch (s.kind) {
        case Symbol::Kind::Begin: return "BEGIN";
        case Symbol::Kind::End: return "END";
        case Symbol::Kind::Sign: return to_string(s.code);
    }
    return "?";
}

/// Additively smoothed first-order Markov model over inventory signs with boundary markers.
///
/// Rows are BEGIN followed by the signs in ascending code order; columns are the signs
/// followed by END, so every row has V = L + 1 possible successors and
///
///     P(b | a) = (count(a, b) + alpha) / (count(a, .) + alpha * V).
///
/// With alpha = 0 a row with no outgoing counts has no distribution and is reported as
/// undefined rather than as zeros.
class TransitionModel {
public:
    TransitionModel(std::vector<SignCode> alphabet, double alpha)
        : alphabet_(std::move(alphabet)),
          alpha_(alpha),
          counts_((alphabet_.size() + 1) * (alphabet_.size() + 1), 0),
          row_totals_(alphabet_.size() + 1, 0) {
        if (!(alpha >= 0.0)) throw ContractViolation("smoothing constant alpha must be >= 0");
        index_.reserve(alphabet_.size());
        for (std::size_t i = 0; i < alphabet_.size(); ++i) index_.emplace(alphabet_[i], i);
    }

    const std::vector<SignCode>& alphabet() const noexcept { return alphabet_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t successor_count() const noexcept { return alphabet_.size() + 1; }
    std::size_t row_count() const noexcept { return alphabet_.size() + 1; }

    bool knows(SignCode c) const { return index_.contains(c); }

    void add(Symbol from, Symbol to, std::uint64_t n = 1) {
        const auto r = row_of(from);
        counts_[r * width() + col_of(to)] += n;
        row_totals_[r] += n;
    }

    std::uint64_t count(Symbol from, Symbol to) const { return counts_[row_of(from) * width() + col_of(to)]; }
    std::uint64_t row_total(Symbol from) const { return row_totals_[row_of(from)]; }

    bool row_defined(Symbol from) const { return alpha_ > 0.0 || row_total(from) > 0; }

    double probability(Symbol from, Symbol to) const {
        const auto r = row_of(from);
        if (!(alpha_ > 0.0) && row_totals_[r] == 0)
            throw UndefinedProbability("transition row " + to_string(from) + " has no observations and alpha = 0");
        return (static_cast<double>(counts_[r * width() + col_of(to)]) + alpha_) /
               (static_cast<double>(row_totals_[r]) + alpha_ * static_cast<double>(successor_count()));
    }

    /// Row and column symbols by dense index, for iteration.
    Symbol row_symbol(std::size_t r) const { return r == 0 ? Symbol::begin() : Symbol::sign(alphabet_[r - 1]); }
    Symbol col_symbol(std::size_t c) const {
        return c == alphabet_.size() ? Symbol::end() : Symbol::sign(alphabet_[c]);
    }
    std::uint64_t count_at(std::size_t r, std::size_t c) const { return counts_[r * width() + c]; }

private:
    std::size_t width() const noexcept { return alphabet_.size() + 1; }

    std::size_t sign_index(SignCode c) const {
        auto it = index_.find(c);
        if (it == index_.end()) throw ContractViolation("sign " + to_string(c) + " is not in the model alphabet");
        return it->second;
    }
    std::size_t row_of(Symbol s) const {
        if (s.kind == Symbol::Kind::End) throw ContractViolation("END has no outgoing transitions");
        return s.kind == Symbol::Kind::Begin ? 0 : sign_index(s.code) + 1;
    }
    std::size_t col_of(Symbol s) const {
        if (s.kind == Symbol::Kind::Begin) throw ContractViolation("BEGIN is never a successor");
        return s.kind == Symbol::Kind::End ? alphabet_.size() : sign_index(s.code);
    }

    std::vector<SignCode> alphabet_;
    double alpha_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> row_totals_;
    std::unordered_map<SignCode, std::size_t> index_;
};

inline TransitionModel fit_bigram(const Corpus& c, const SignInventory& inv, double alpha) {
    if (c.empty()) throw ContractViolation("fit_bigram: empty corpus");
    TransitionModel m(inv.codes(), alpha);
    for (const auto& ins : c.inscriptions) {
        Symbol prev = Symbol::begin();
        for (auto code : ins.signs) {
            const auto cur = Symbol::sign(code);
            m.add(prev, cur);
            prev = cur;
        }
        m.add(prev, Symbol::end());
    }
    return m;
}

/// Natural-log probability of BEGIN -> signs... -> END.
inline double sequence_logprob(const TransitionModel& m, std::span<const SignCode> signs) {
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (!m.knows(signs[i]))
            throw UndefinedProbability("sign " + to_string(signs[i]) + " at position " + std::to_string(i) +
                                       " is not in the model alphabet");
    double lp = 0.0;
    Symbol prev = Symbol::begin();
    auto step = [&](Symbol next) {
        const double p = m.probability(prev, next);
        if (p <= 0.0)
            throw UndefinedProbability("transition " + to_string(prev) + " -> " + to_string(next) +
                                       " has probability 0");
        lp += std::log(p);
        prev = next;
    };
    for (auto code : signs) step(Symbol::sign(code));
    step(Symbol::end());
    return lp;
}

// ---------------------------------------------------------------------------

struct NGramTable {
    std::size_t n = 1;
    std::map<std::vector<SignCode>, std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Overlapping windows inside each inscription; blocks never straddle inscriptions.
inline NGramTable ngram_counts(const Corpus& c, std::size_t n) {
    if (n < 1) throw ContractViolation("ngram_counts: n must be >= 1");
    NGramTable t;
    t.n = n;
    for (const auto& ins : c.inscriptions) {
        if (ins.signs.size() < n) continue;
        for (std::size_t i = 0; i + n <= ins.signs.size(); ++i) {
            ++t.counts[std::vector<SignCode>(ins.signs.begin() + static_cast<std::ptrdiff_t>(i),
                                             ins.signs.begin() + static_cast<std::ptrdiff_t>(i + n))];
            ++t.total;
        }
    }
    return t;
}

enum class Estimator : std::uint8_t { Plugin, MillerMadow };
enum class Normalization : std::uint8_t { PerSymbol, Raw };

inline std::string_view to_string(Estimator e) { return e == Estimator::Plugin ? "plugin" : "miller-madow"; }
inline std::string_view to_string(Normalization n) { return n == Normalization::PerSymbol ? "per-symbol" : "raw"; }

struct EntropyProfile {
    std::size_t L = 2;
    Estimator estimator = Estimator::Plugin;
    Normalization normalization = Normalization::PerSymbol;
    /// H_n in base-L units for n = 1..n_max (index n-1); absent when no block of size n exists.
    std::vector<std::optional<double>> raw;

    std::size_t n_max() const { return raw.size(); }

    std::optional<double> per_symbol(std::size_t n) const {
        const auto& h = raw.at(n - 1);
        return h ? std::optional<double>(*h / static_cast<double>(n)) : std::nullopt;
    }
    /// Value under the profile's selected normalization.
    std::optional<double> value(std::size_t n) const {
        return normalization == Normalization::PerSymbol ? per_symbol(n) : raw.at(n - 1);
    }
};

/// Entropy of one n-gram distribution in base-L units.
inline std::optional<double> table_entropy(const NGramTable& t, std::size_t L, Estimator est) {
    if (t.total == 0) return std::nullopt;
    const double total = static_cast<double>(t.total);
    const double lnL = std::log(static_cast<double>(L));
    double h = 0.0;
    for (const auto& [_, count] : t.counts) {
        const double p = static_cast<double>(count) / total;
        h -= p * std::log(p);
    }
    h /= lnL;
    if (est == Estimator::MillerMadow)
        h += static_cast<double>(t.counts.size() - 1) / (2.0 * total * lnL);
    return h;
}

inline EntropyProfile block_entropy(const Corpus& c, std::size_t n_max, Estimator est, Normalization norm,
                                    std::size_t L) {
    if (L < 2) throw ContractViolation("block_entropy: alphabet size L must be >= 2");
    if (n_max < 1) throw ContractViolation("block_entropy: n_max must be >= 1");
    if (c.empty()) throw ContractViolation("block_entropy: empty corpus");
    EntropyProfile p;
    p.L = L;
    p.estimator = est;
    p.normalization = norm;
    p.raw.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) p.raw.push_back(table_entropy(ngram_counts(c, n), L, est));
    return p;
}

// ---------------------------------------------------------------------------
// Baseline sequences

struct UniformIid {};
struct Constant {};
struct Markov {
    std::reference_wrapper<const TransitionModel> model;
};
using SequenceKind = std::variant<UniformIid, Constant, Markov>;

inline std::vector<SignCode> generate_uniform(const SignInventory& inv, std::size_t length, std::uint64_t seed) {
    const auto codes = inv.codes();
    Rng rng(seed);
    std::vector<SignCode> out(length);
    for (auto& c : out) c = codes[rng.below(codes.size())];
    return out;
}

inline std::vector<SignCode> generate_constant(const SignInventory& inv, std::size_t length) {
    return std::vector<SignCode>(length, inv.min_code());
}

/// Walks the chain from BEGIN; drawing END restarts at BEGIN without emitting anything.
inline std::vector<SignCode> generate_markov(const TransitionModel& m, std::size_t length, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SignCode> out;
    out.reserve(length);
    const std::size_t cols = m.successor_count();
    std::vector<std::vector<double>> cdf(m.row_count());  // filled on first visit

    auto row_cdf = [&](std::size_t r) -> const std::vector<double>& {
        auto& row = cdf[r];
        if (row.empty()) {
            row.resize(cols);
            double acc = 0.0;
            for (std::size_t c = 0; c < cols; ++c) row[c] = acc += m.probability(m.row_symbol(r), m.col_symbol(c));
        }
        return row;
    };

    std::size_t state = 0;  // row index; 0 is BEGIN
    while (out.size() < length) {
        const auto& row = row_cdf(state);
        // Scale by the row's own total so rounding in the running sum cannot strand u past the end.
        const double u = rng.unit() * row.back();
        auto chosen = static_cast<std::size_t>(std::upper_bound(row.begin(), row.end(), u) - row.begin());
        if (chosen == cols) {
            chosen = cols - 1;
            while (chosen > 0 && row[chosen] == row[chosen - 1]) --chosen;
        }
        const Symbol next = m.col_symbol(chosen);
        if (next.kind == Symbol::Kind::End) {
            state = 0;
            continue;
        }
        out.push_back(next.code);
        state = chosen + 1;
    }
    return out;
}

inline std::vector<SignCode> generate_sequence(const SequenceKind& kind, std::size_t length, std::uint64_t seed,
                                               const SignInventory& inv) {
    if (length < 1) throw ContractViolation("generate_sequence: length must be >= 1");
    return std::visit(
        [&](const auto& k) -> std::vector<SignCode> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, UniformIid>) return generate_uniform(inv, length, seed);
            else if constexpr (std::is_same_v<K, Constant>) return generate_constant(inv, length);
            else return generate_markov(k.model.get(), length, seed);
        },
        kind);
}

/// Wraps a flat sequence as a one-inscription corpus.
inline Corpus sequence_corpus(std::vector<SignCode> signs, std::string id = "seq") {
    Corpus c;
    Inscription ins;
    ins.id = std::move(id);
    ins.signs = std::move(signs);
    c.inscriptions.push_back(std::move(ins));
    return c;
}

}  // namespace sealscript
