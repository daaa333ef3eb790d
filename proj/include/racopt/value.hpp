// value.hpp -- exact strategy values and optimal values for arbitrary (n, d)
//
// The value of a strategy is the average, over uniform words and uniform
// question positions, of the best row agreement divided by n. Small games are
// evaluated by direct word enumeration; the optimal value for any (n, d) is
// obtained without enumeration from the distribution of the maximal letter
// multiplicity, computed by a binomial-transition DP over the alphabet.

#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "rational.hpp"

namespace racopt {

// ============================================================================
// Binomial coefficients
// ============================================================================

namespace detail {

// Grow-only shared Pascal triangle. Rows are immutable once published and the
// deque never relocates them, so readers need no lock after the publish.
class PascalTriangle {
public:
    static PascalTriangle& instance() {
        static PascalTriangle tri;
        return tri;
    }

    const std::vector<BigInt>& row(int n) {
        if (n < 0) throw std::invalid_argument("binomial: negative n");
        const std::size_t want = static_cast<std::size_t>(n) + 1;
        if (published_.load(std::memory_order_acquire) < want) grow(want);
        return rows_[static_cast<std::size_t>(n)];
    }

private:
    PascalTriangle() { grow(201); }

    void grow(std::size_t want) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (rows_.size() < want) {
            const std::size_t n = rows_.size();
            std::vector<BigInt> r(n + 1);
            r[0] = 1;
            r[n] = 1;
            for (std::size_t k = 1; k < n; ++k)
                r[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
            rows_.push_back(std::move(r));
            published_.store(rows_.size(), std::memory_order_release);
        }
    }

    std::deque<std::vector<BigInt>> rows_;
    std::atomic<std::size_t> published_{0};
    std::mutex mutex_;
};

inline const std::vector<BigInt>& pascal_row(int n) {
    return PascalTriangle::instance().row(n);
}

}  // namespace detail

/// C(n, k); zero outside 0 <= k <= n.
inline const BigInt& binomial(int n, int k) {
    static const BigInt kZero = 0;
    if (n < 0 || k < 0 || k > n) return kZero;
    return detail::pascal_row(n)[static_cast<std::size_t>(k)];
}

// ============================================================================
// Strategy values by word enumeration
// ============================================================================

/// Exact value of a decoding matrix with Alice playing best response:
/// (1 / (n d^n)) * sum over all words of the best row agreement.
/// Refuses word spaces larger than `word_cap`.
inline Rational strategy_value(const DecodingMatrix& f,
                               std::uint64_t word_cap = kDefaultWordCap) {
    const GameParams& p = f.params();
    const std::uint64_t count = require_word_space_within(p, word_cap);
    const int n = p.n;
    const int d = p.d;

    // Odometer over words with per-row agreement counts updated in place.
    Word w(static_cast<std::size_t>(n), 0);
    std::vector<int> agree(static_cast<std::size_t>(d), 0);
    for (Letter y = 0; y < d; ++y)
        for (int j = 0; j < n; ++j) agree[static_cast<std::size_t>(y)] += f.at(y, j) == 0;

    BigInt total = 0;
    std::uint64_t chunk = 0;
    std::uint64_t processed = 0;
    while (true) {
        int best = 0;
        for (int a : agree) best = a > best ? a : best;
        chunk += static_cast<std::uint64_t>(best);
        if ((++processed & 0xFFFFFF) == 0) {  // flush long runs before overflow
            total += chunk;
            chunk = 0;
        }
        if (processed == count) break;
        int j = n - 1;
        while (j >= 0) {
            const Letter old = w[static_cast<std::size_t>(j)];
            const Letter next = old + 1 == d ? 0 : old + 1;
            w[static_cast<std::size_t>(j)] = next;
            for (Letter y = 0; y < d; ++y) {
                const Letter r = f.at(y, j);
                agree[static_cast<std::size_t>(y)] += (r == next) - (r == old);
            }
            if (next != 0) break;
            --j;
        }
    }
    total += chunk;
    return Rational(total, BigInt(n) * p.word_space_size());
}

/// Exact value of an explicit (encoding, decoding) pair:
/// (1 / (n d^n)) * sum over words x of sim(f_{enc(x)}, x).
/// With a best-response encoding this equals strategy_value(f). An explicit
/// table must cover the whole word space, exactly.
inline Rational pair_value(const EncodingFunction& enc, const DecodingMatrix& f,
                           std::uint64_t word_cap = kDefaultWordCap) {
    if (enc.is_best_response()) return strategy_value(f, word_cap);

    const GameParams& p = f.params();
    require_word_space_within(p, word_cap);
    const WordRange range(p, word_cap);
    if (enc.table().size() != range.size())
        throw std::invalid_argument("pair_value: explicit table must cover all " +
                                    p.word_space_size().str() + " words");
    BigInt total = 0;
    for (const Word& x : range) total += sim(f.row(enc.encode(f, x)), x);
    return Rational(total, BigInt(p.n) * p.word_space_size());
}

/// Expected value of a mixture: the weighted sum of component values.
inline Rational randomized_value(const RandomizedStrategy& r,
                                 std::uint64_t word_cap = kDefaultWordCap) {
    Rational total = 0;
    for (const auto& c : r.components()) total += c.weight * strategy_value(c.matrix, word_cap);
    return total;
}

// ============================================================================
// Optimal values via the multiplicity DP
// ============================================================================

namespace detail {

// prefix[n][dd] = sum over m = 1..n-1 of the number of length-n words over a
// dd-letter alphabet in which every letter occurs at most m times. Computed
// for all n <= n_max and dd <= d_max at once: for each threshold m the DP adds
// letters one at a time, and t[p] after dd rounds counts length-p words over
// dd letters with all multiplicities <= m (transition: the new letter takes c
// of the p positions, C(p, c) ways).
inline std::vector<std::vector<BigInt>> multiplicity_prefix_sums(int n_max, int d_max) {
    std::vector<std::vector<BigInt>> prefix(static_cast<std::size_t>(n_max) + 1,
                                            std::vector<BigInt>(static_cast<std::size_t>(d_max) + 1));
    for (int m = 1; m < n_max; ++m) {
        std::vector<BigInt> t(static_cast<std::size_t>(n_max) + 1);
        t[0] = 1;
        for (int dd = 1; dd <= d_max; ++dd) {
            for (int p = n_max; p >= 1; --p) {  // downwards so t[p - c] is still the old round
                const std::vector<BigInt>& pascal = pascal_row(p);
                BigInt sum = t[static_cast<std::size_t>(p)];
                const int c_max = m < p ? m : p;
                for (int c = 1; c <= c_max; ++c)
                    sum += pascal[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(p - c)];
                t[static_cast<std::size_t>(p)] = std::move(sum);
            }
            for (int n = m + 1; n <= n_max; ++n)
                prefix[static_cast<std::size_t>(n)][static_cast<std::size_t>(dd)] +=
                    t[static_cast<std::size_t>(n)];
        }
    }
    return prefix;
}

// E[max letter multiplicity] = n - (sum of the "all multiplicities <= m"
// counts for m < n) / d^n, so the optimal value (that expectation over n) is
// (n d^n - prefix) / (n d^n).
inline Rational value_from_prefix(int n, int d, const BigInt& prefix) {
    const BigInt denom = BigInt(n) * int_pow(d, static_cast<std::uint64_t>(n));
    return Rational(denom - prefix, denom);
}

}  // namespace detail

/// Number of length-n words over the d-letter alphabet in which every letter
/// occurs at most m times; the single-threshold form of the DP behind
/// optimal_value. Differencing consecutive thresholds yields the count of
/// words whose maximal letter multiplicity is exactly m.
inline BigInt words_with_multiplicity_at_most(const GameParams& params, int m) {
    if (m < 0) return 0;
    if (m >= params.n) return params.word_space_size();
    std::vector<BigInt> t(static_cast<std::size_t>(params.n) + 1);
    t[0] = 1;
    for (int dd = 1; dd <= params.d; ++dd)
        for (int p = params.n; p >= 1; --p) {
            const std::vector<BigInt>& pascal = detail::pascal_row(p);
            BigInt sum = t[static_cast<std::size_t>(p)];
            const int c_max = m < p ? m : p;
            for (int c = 1; c <= c_max; ++c)
                sum += pascal[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(p - c)];
            t[static_cast<std::size_t>(p)] = std::move(sum);
        }
    return t[static_cast<std::size_t>(params.n)];
}

/// Exact optimal value of the (n, d) game. No enumeration cap: the DP runs in
/// O(d n^3) big-integer operations and covers n, d up to 100 in seconds.
/// Equals strategy_value(majority_strategy(params)) wherever the latter is
/// computable.
inline Rational optimal_value(const GameParams& params) {
    const auto prefix = detail::multiplicity_prefix_sums(params.n, params.d);
    return detail::value_from_prefix(
        params.n, params.d,
        prefix[static_cast<std::size_t>(params.n)][static_cast<std::size_t>(params.d)]);
}

/// Full grid of exact optimal values; result[n-1][d-1] is the value of the
/// (n, d) game. Shares one DP pass across all cells, so the whole grid costs
/// no more than its hardest cell.
inline std::vector<std::vector<Rational>> optimal_value_table(int n_max, int d_max) {
    if (n_max < 1 || d_max < 1)
        throw std::invalid_argument("optimal_value_table: bounds must be >= 1");
    const auto prefix = detail::multiplicity_prefix_sums(n_max, d_max);
    std::vector<std::vector<Rational>> table(static_cast<std::size_t>(n_max),
                                             std::vector<Rational>(static_cast<std::size_t>(d_max)));
    for (int n = 1; n <= n_max; ++n)
        for (int d = 1; d <= d_max; ++d)
            table[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(d - 1)] =
                detail::value_from_prefix(
                    n, d, prefix[static_cast<std::size_t>(n)][static_cast<std::size_t>(d)]);
    return table;
}

/// Closed form for n = 2: (d + 1) / (2d).
inline Rational lemma4_value(int d) {
    if (d < 1) throw std::invalid_argument("lemma4_value: d must be >= 1");
    return Rational(BigInt(d) + 1, BigInt(2) * d);
}

/// Closed form for d = 2 and even n: 2^-n * sum_k C(n, k) * max(k, n-k) / n.
inline Rational lemma5_value(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::domain_error("lemma5_value: defined for even n >= 2");
    BigInt sum = 0;
    for (int k = 0; k <= n; ++k) sum += binomial(n, k) * (k > n - k ? k : n - k);
    return Rational(sum, BigInt(n) * int_pow(2, static_cast<std::uint64_t>(n)));
}

// ============================================================================
// Reports
// ============================================================================

enum class ValueMethod { kWordEnumeration, kMultiplicityDP, kLemma4Formula, kLemma5Formula };

inline std::string to_string(ValueMethod m) {
    switch (m) {
        case ValueMethod::kWordEnumeration: return "WordEnumeration";
        case ValueMethod::kMultiplicityDP: return "MultiplicityDP";
        case ValueMethod::kLemma4Formula: return "Lemma4Formula";
        case ValueMethod::kLemma5Formula: return "Lemma5Formula";
    }
    throw std::logic_error("to_string(ValueMethod): bad enum");
}

/// A computed value together with its provenance.
struct ValueReport {
    GameParams params;
    Rational value;
    ValueMethod method = ValueMethod::kWordEnumeration;
};

}  // namespace racopt
