// optimality.hpp -- optimality predicates, counting, and the exhaustive oracle
//
// A decoding matrix is optimal exactly when enough of its columns are
// permutations of the alphabet: every column in the general regime (n > 2
// with d > 2 or n odd), all but at most one column when n = 2 or when d = 2
// with even n. Degenerate games (n = 1 or d = 1) always achieve value 1 and
// are classified separately. The exhaustive oracle scans the whole matrix
// space and is the independent check for all of the above on small instances.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "rational.hpp"
#include "value.hpp"

namespace racopt {

// ============================================================================
// Regimes and column predicates
// ============================================================================

enum class OptimalityClass {
    kTrivial,     ///< d = 1 or n = 1
    kGeneral,     ///< n > 2 and (d > 2 or n odd)
    kNEquals2,    ///< n = 2, d >= 2
    kBinaryEvenN  ///< d = 2, even n > 2
};

inline std::string to_string(OptimalityClass c) {
    switch (c) {
        case OptimalityClass::kTrivial: return "Trivial";
        case OptimalityClass::kGeneral: return "General";
        case OptimalityClass::kNEquals2: return "NEquals2";
        case OptimalityClass::kBinaryEvenN: return "BinaryEvenN";
    }
    throw std::logic_error("to_string(OptimalityClass): bad enum");
}

/// The unique regime of (n, d). (2, 2) classifies as NEquals2.
inline OptimalityClass classify(const GameParams& p) {
    if (p.d == 1 || p.n == 1) return OptimalityClass::kTrivial;
    if (p.n == 2) return OptimalityClass::kNEquals2;
    if (p.d == 2 && p.n % 2 == 0) return OptimalityClass::kBinaryEvenN;
    return OptimalityClass::kGeneral;
}

/// True iff column j of g contains every letter exactly once.
inline bool column_is_permutation(const DecodingMatrix& g, int j) {
    const int d = g.params().d;
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    for (Letter y = 0; y < d; ++y) {
        char& s = seen[static_cast<std::size_t>(g.at(y, j))];
        if (s) return false;
        s = 1;
    }
    return true;
}

/// Every column is a permutation of the alphabet.
inline bool satisfies_property1(const DecodingMatrix& g) {
    for (int j = 0; j < g.params().n; ++j)
        if (!column_is_permutation(g, j)) return false;
    return true;
}

/// At most one column fails to be a permutation of the alphabet.
inline bool satisfies_property2(const DecodingMatrix& g) {
    int bad = 0;
    for (int j = 0; j < g.params().n; ++j)
        if (!column_is_permutation(g, j) && ++bad > 1) return false;
    return true;
}

/// Regime-based optimality test. In the trivial regime every matrix is
/// accepted (for n = 1 the "at most one exceptional column" condition is
/// vacuous); counting there defers to the oracle, see count_optimal.
inline bool is_optimal(const DecodingMatrix& g) {
    switch (classify(g.params())) {
        case OptimalityClass::kTrivial: return true;
        case OptimalityClass::kGeneral: return satisfies_property1(g);
        case OptimalityClass::kNEquals2:
        case OptimalityClass::kBinaryEvenN: return satisfies_property2(g);
    }
    throw std::logic_error("is_optimal: bad regime");
}

/// A mixture achieves the optimal value iff every component does.
inline bool is_optimal(const RandomizedStrategy& r) {
    for (const auto& c : r.components())
        if (!is_optimal(c.matrix)) return false;
    return true;
}

// ============================================================================
// Matrix-space enumeration
// ============================================================================

/// Decoding matrix with the given row-major lexicographic ordinal: the
/// ordinal's base-d digits fill entries (0,0), (0,1), ..., (d-1,n-1), most
/// significant first.
inline DecodingMatrix matrix_at(const GameParams& params, std::uint64_t ordinal) {
    std::vector<Word> rows(static_cast<std::size_t>(params.d),
                           Word(static_cast<std::size_t>(params.n)));
    for (int k = params.d * params.n - 1; k >= 0; --k) {
        rows[static_cast<std::size_t>(k / params.n)][static_cast<std::size_t>(k % params.n)] =
            static_cast<Letter>(ordinal % static_cast<std::uint64_t>(params.d));
        ordinal /= static_cast<std::uint64_t>(params.d);
    }
    if (ordinal != 0) throw std::out_of_range("matrix_at: ordinal >= d^(d*n)");
    return DecodingMatrix(params, std::move(rows));
}

/// Inverse of matrix_at.
inline std::uint64_t matrix_ordinal(const DecodingMatrix& m) {
    BigInt ordinal = 0;
    for (const Word& row : m.rows())
        for (Letter a : row) ordinal = ordinal * m.params().d + a;
    if (ordinal > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("matrix_ordinal: ordinal does not fit in 64 bits");
    return ordinal.convert_to<std::uint64_t>();
}

/// Result of an exhaustive scan of the matrix space.
struct OracleResult {
    GameParams params;
    Rational max_value;        ///< exact maximum of strategy_value over all matrices
    BigInt optimizer_count;    ///< exact number of matrices achieving the maximum
    /// The maximizers themselves, in ascending ordinal order; absent when the
    /// count exceeded the retain limit passed to oracle_enumerate.
    std::optional<std::vector<DecodingMatrix>> optimizers;
};

/// Scans all d^(d*n) decoding matrices, returning the exact maximal value and
/// optimizer count (and the optimizers themselves while their number stays
/// within `retain_limit`). Deterministic; refuses spaces past `matrix_cap`.
inline OracleResult oracle_enumerate(const GameParams& params,
                                     std::uint64_t matrix_cap = kDefaultMatrixCap,
                                     std::uint64_t retain_limit = 0) {
    const BigInt space = params.matrix_space_size();
    if (space > matrix_cap) throw CapExceeded("matrix space", space, matrix_cap);

    const int n = params.n;
    const int d = params.d;
    if (d == 1) {  // single all-zeros matrix; the lone word is matched everywhere
        std::optional<std::vector<DecodingMatrix>> opts;
        if (retain_limit >= 1) opts = std::vector<DecodingMatrix>{matrix_at(params, 0)};
        return OracleResult{params, Rational(1), BigInt(1), std::move(opts)};
    }

    const std::uint64_t total = space.convert_to<std::uint64_t>();
    const std::uint64_t nwords = params.word_space_size().convert_to<std::uint64_t>();

    // Row codes and word codes share the base-d encoding, so one similarity
    // table serves both: sim_table[r * nwords + w] = sim(word r, word w).
    std::vector<std::uint16_t> sim_table(static_cast<std::size_t>(nwords) * nwords);
    {
        std::vector<Word> words;
        words.reserve(static_cast<std::size_t>(nwords));
        for (std::uint64_t i = 0; i < nwords; ++i) words.push_back(word_at(params, i));
        for (std::uint64_t r = 0; r < nwords; ++r)
            for (std::uint64_t w = r; w < nwords; ++w) {
                const auto s = static_cast<std::uint16_t>(
                    sim(words[static_cast<std::size_t>(r)], words[static_cast<std::size_t>(w)]));
                sim_table[static_cast<std::size_t>(r * nwords + w)] = s;
                sim_table[static_cast<std::size_t>(w * nwords + r)] = s;
            }
    }

    std::vector<std::uint64_t> column_weight(static_cast<std::size_t>(n));
    {
        std::uint64_t p = 1;
        for (int j = n - 1; j >= 0; --j) {
            column_weight[static_cast<std::size_t>(j)] = p;
            p *= static_cast<std::uint64_t>(d);
        }
    }

    std::vector<Letter> digits(static_cast<std::size_t>(d) * static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> row_code(static_cast<std::size_t>(d), 0);

    std::uint64_t best_score = 0;
    bool have_best = false;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> kept;
    bool overflowed = false;

    for (std::uint64_t ordinal = 0;; ++ordinal) {
        std::uint64_t score = 0;
        for (std::uint64_t w = 0; w < nwords; ++w) {
            std::uint16_t m = 0;
            for (int y = 0; y < d; ++y) {
                const std::uint16_t s =
                    sim_table[static_cast<std::size_t>(row_code[static_cast<std::size_t>(y)] * nwords + w)];
                if (s > m) m = s;
            }
            score += m;
        }

        if (!have_best || score > best_score) {
            have_best = true;
            best_score = score;
            count = 1;
            kept.clear();
            overflowed = retain_limit == 0;
            if (!overflowed) kept.push_back(ordinal);
        } else if (score == best_score) {
            ++count;
            if (!overflowed) {
                if (kept.size() < retain_limit) {
                    kept.push_back(ordinal);
                } else {
                    overflowed = true;
                    kept.clear();
                }
            }
        }

        if (ordinal + 1 == total) break;
        int k = d * n - 1;
        while (true) {
            Letter& digit = digits[static_cast<std::size_t>(k)];
            const Letter old = digit;
            const Letter next = old + 1 == d ? 0 : old + 1;
            digit = next;
            row_code[static_cast<std::size_t>(k / n)] +=
                static_cast<std::uint64_t>(next - old) * column_weight[static_cast<std::size_t>(k % n)];
            if (next != 0) break;
            --k;  // total bounds the odometer; k cannot run off the front
        }
    }

    OracleResult result{params,
                        Rational(BigInt(best_score), BigInt(n) * params.word_space_size()),
                        BigInt(count), std::nullopt};
    if (!overflowed) {
        std::vector<DecodingMatrix> opts;
        opts.reserve(kept.size());
        for (std::uint64_t ordinal : kept) opts.push_back(matrix_at(params, ordinal));
        result.optimizers = std::move(opts);
    }
    return result;
}

// ============================================================================
// Counting optimal strategies
// ============================================================================

/// Number of optimal decoding matrices, when a route to it exists:
///   - general regime: (d!)^n;
///   - n = 2 or (d = 2, even n): the Property-2 count
///     (d!)^n + n (d^d - d!) (d!)^(n-1), a derived closed form that the tests
///     cross-validate against the oracle on every instance they can scan;
///   - d = 1: the single existing matrix is optimal;
///   - n = 1 (d >= 2): no closed form is claimed; the exhaustive oracle count
///     is returned when the matrix space fits under `matrix_cap`, otherwise
///     nullopt.
inline std::optional<BigInt> count_optimal(const GameParams& p,
                                           std::uint64_t matrix_cap = kDefaultMatrixCap) {
    switch (classify(p)) {
        case OptimalityClass::kTrivial: {
            if (p.d == 1) return BigInt(1);
            if (p.matrix_space_size() > matrix_cap) return std::nullopt;
            return oracle_enumerate(p, matrix_cap).optimizer_count;
        }
        case OptimalityClass::kGeneral:
            return int_pow(factorial(p.d), static_cast<std::uint64_t>(p.n));
        case OptimalityClass::kNEquals2:
        case OptimalityClass::kBinaryEvenN: {
            const BigInt df = factorial(p.d);
            const BigInt perm_cols = int_pow(df, static_cast<std::uint64_t>(p.n));
            const BigInt one_bad = BigInt(p.n) *
                                   (int_pow(p.d, static_cast<std::uint64_t>(p.d)) - df) *
                                   int_pow(df, static_cast<std::uint64_t>(p.n - 1));
            return perm_cols + one_bad;
        }
    }
    throw std::logic_error("count_optimal: bad regime");
}

}  // namespace racopt
