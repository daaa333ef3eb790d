// core.hpp -- game parameters, words, decoding matrices and the similarity measure
//
// Models the classical n->1 random access code game: Alice holds a uniformly
// random word of n letters over a d-letter alphabet and may send a single
// letter; Bob answers a uniformly random position query from the received
// letter alone. Bob's deterministic strategy is a d x n decoding matrix; Alice
// plays best response against it. Letters are 0-based throughout the library;
// presentation layers convert to the 1-based alphabet {1, ..., d}.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace racopt {

/// A letter of the alphabet, valid range [0, d).
using Letter = int;

/// A word is a fixed-length sequence of letters.
using Word = std::vector<Letter>;

/// Default refusal threshold for word-space enumeration (d^n).
constexpr std::uint64_t kDefaultWordCap = 100'000'000;

/// Default refusal threshold for exhaustive matrix-space scans (d^(d*n)).
constexpr std::uint64_t kDefaultMatrixCap = 20'000'000;

/// Cap value meaning "no cap" (enumerations still refuse past 2^64-1 items).
constexpr std::uint64_t kUncapped = std::numeric_limits<std::uint64_t>::max();

/// Upper bound on accepted n and d; keeps d^n and d^(d*n) cheap to *represent*
/// as big integers even though they are far beyond any enumeration cap.
constexpr int kMaxParam = 1'000'000;

/// Thrown when an enumeration would exceed the configured cap. Enumerations
/// fail loudly up front instead of running for an unbounded time.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& space_name, BigInt space_size, std::uint64_t cap)
        : std::runtime_error(space_name + " has " + space_size.str() +
                             " elements, which exceeds the enumeration cap of " +
                             std::to_string(cap)),
          space_size_(std::move(space_size)),
          cap_(cap) {}

    const BigInt& space_size() const noexcept { return space_size_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    BigInt space_size_;
    std::uint64_t cap_;
};

/// The pair (n, d): word length and alphabet size.
struct GameParams {
    int n = 1;  ///< word length, >= 1
    int d = 1;  ///< alphabet size, >= 1

    GameParams(int n_, int d_) : n(n_), d(d_) {
        if (n < 1 || d < 1)
            throw std::invalid_argument("GameParams: n and d must be >= 1");
        if (n > kMaxParam || d > kMaxParam)
            throw std::invalid_argument("GameParams: n and d must be <= " +
                                        std::to_string(kMaxParam));
    }

    /// d^n, the number of words.
    BigInt word_space_size() const { return int_pow(d, static_cast<std::uint64_t>(n)); }

    /// d^(d*n), the number of decoding matrices.
    BigInt matrix_space_size() const {
        return int_pow(d, static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(n));
    }

    friend auto operator<=>(const GameParams&, const GameParams&) = default;
};

inline bool is_valid_word(const GameParams& params, const Word& w) {
    if (w.size() != static_cast<std::size_t>(params.n)) return false;
    return std::all_of(w.begin(), w.end(),
                       [&](Letter a) { return a >= 0 && a < params.d; });
}

inline void require_valid_word(const GameParams& params, const Word& w) {
    if (!is_valid_word(params, w))
        throw std::invalid_argument("word is not valid for n=" + std::to_string(params.n) +
                                    ", d=" + std::to_string(params.d));
}

/// Number of positions in which two equal-length words agree. Symmetric, and
/// sim(z, z) == length.
inline int sim(const Word& z, const Word& x) {
    if (z.size() != x.size())
        throw std::invalid_argument("sim: words of unequal length (" +
                                    std::to_string(z.size()) + " vs " +
                                    std::to_string(x.size()) + ")");
    int agree = 0;
    for (std::size_t j = 0; j < z.size(); ++j) agree += z[j] == x[j];
    return agree;
}

// ============================================================================
// Decoding matrices
// ============================================================================

/// Bob's complete strategy: row y holds the answers f(y, 0..n-1) he gives for
/// each question after receiving letter y. Immutable after construction.
class DecodingMatrix {
public:
    DecodingMatrix(GameParams params, std::vector<Word> rows)
        : params_(params), rows_(std::move(rows)) {
        if (rows_.size() != static_cast<std::size_t>(params_.d))
            throw std::invalid_argument("DecodingMatrix: expected d=" +
                                        std::to_string(params_.d) + " rows, got " +
                                        std::to_string(rows_.size()));
        for (const Word& row : rows_)
            if (!is_valid_word(params_, row))
                throw std::invalid_argument(
                    "DecodingMatrix: every row must have n letters in [0, d)");
    }

    const GameParams& params() const noexcept { return params_; }
    const std::vector<Word>& rows() const noexcept { return rows_; }

    const Word& row(Letter y) const {
        if (y < 0 || y >= params_.d) throw std::out_of_range("DecodingMatrix::row");
        return rows_[static_cast<std::size_t>(y)];
    }

    /// Entry f(y, j).
    Letter at(Letter y, int j) const {
        if (j < 0 || j >= params_.n) throw std::out_of_range("DecodingMatrix::at");
        return row(y)[static_cast<std::size_t>(j)];
    }

    /// Copy of this matrix with the single entry (y, j) replaced by `a`.
    DecodingMatrix with_entry(Letter y, int j, Letter a) const {
        if (a < 0 || a >= params_.d)
            throw std::invalid_argument("with_entry: letter out of range");
        at(y, j);  // bounds check
        std::vector<Word> rows = rows_;
        rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(j)] = a;
        return DecodingMatrix(params_, std::move(rows));
    }

    friend auto operator<=>(const DecodingMatrix&, const DecodingMatrix&) = default;

private:
    GameParams params_;
    std::vector<Word> rows_;
};

/// The majority-encoding-identity-decoding strategy: row y answers y for
/// every question.
inline DecodingMatrix majority_strategy(const GameParams& params) {
    std::vector<Word> rows;
    rows.reserve(static_cast<std::size_t>(params.d));
    for (Letter y = 0; y < params.d; ++y)
        rows.emplace_back(static_cast<std::size_t>(params.n), y);
    return DecodingMatrix(params, std::move(rows));
}

/// Relabels letters independently per column: result(y, j) = perms[j][g(y, j)].
/// Expects exactly n permutations, each a bijection on [0, d).
inline DecodingMatrix apply_column_permutations(const DecodingMatrix& g,
                                                const std::vector<std::vector<Letter>>& perms) {
    const GameParams& p = g.params();
    if (perms.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("apply_column_permutations: expected n=" +
                                    std::to_string(p.n) + " permutations");
    for (const auto& perm : perms) {
        if (perm.size() != static_cast<std::size_t>(p.d))
            throw std::invalid_argument("apply_column_permutations: permutation size != d");
        std::vector<char> seen(static_cast<std::size_t>(p.d), 0);
        for (Letter a : perm) {
            if (a < 0 || a >= p.d || seen[static_cast<std::size_t>(a)])
                throw std::invalid_argument(
                    "apply_column_permutations: not a bijection on [0, d)");
            seen[static_cast<std::size_t>(a)] = 1;
        }
    }
    std::vector<Word> rows = g.rows();
    for (Word& row : rows)
        for (int j = 0; j < p.n; ++j)
            row[static_cast<std::size_t>(j)] =
                perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(row[static_cast<std::size_t>(j)])];
    return DecodingMatrix(p, std::move(rows));
}

// ============================================================================
// Word enumeration
// ============================================================================

/// Checks d^n against `cap`; returns the count as a machine integer.
inline std::uint64_t require_word_space_within(const GameParams& params, std::uint64_t cap) {
    const BigInt space = params.word_space_size();
    if (space > cap) throw CapExceeded("word space", space, cap);
    return space.convert_to<std::uint64_t>();
}

/// Word with the given lexicographic ordinal (position 0 is the most
/// significant digit; letter 0 sorts first).
inline Word word_at(const GameParams& params, std::uint64_t ordinal) {
    Word w(static_cast<std::size_t>(params.n));
    for (int j = params.n - 1; j >= 0; --j) {
        w[static_cast<std::size_t>(j)] =
            static_cast<Letter>(ordinal % static_cast<std::uint64_t>(params.d));
        ordinal /= static_cast<std::uint64_t>(params.d);
    }
    if (ordinal != 0) throw std::out_of_range("word_at: ordinal >= d^n");
    return w;
}

/// Inverse of word_at.
inline std::uint64_t word_ordinal(const GameParams& params, const Word& w) {
    require_valid_word(params, w);
    BigInt ordinal = 0;
    for (Letter a : w) ordinal = ordinal * params.d + a;
    if (ordinal > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("word_ordinal: ordinal does not fit in 64 bits");
    return ordinal.convert_to<std::uint64_t>();
}

/// Lexicographic stream over all d^n words. Construction refuses word spaces
/// past the cap. Iteration is deterministic; disjoint ordinal ranges may be
/// consumed independently (see word_at) with schedule-independent results.
class WordRange {
public:
    explicit WordRange(GameParams params, std::uint64_t cap = kDefaultWordCap)
        : params_(params), count_(require_word_space_within(params, cap)) {}

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Word;
        using difference_type = std::ptrdiff_t;
        using pointer = const Word*;
        using reference = const Word&;

        iterator() = default;

        reference operator*() const { return word_; }
        pointer operator->() const { return &word_; }

        iterator& operator++() {
            advance();
            return *this;
        }
        iterator operator++(int) {
            iterator tmp = *this;
            advance();
            return tmp;
        }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.index_ == b.index_;
        }

    private:
        friend class WordRange;
        iterator(GameParams params, std::uint64_t index, std::uint64_t count)
            : params_(params), index_(index), count_(count) {
            if (index_ < count_) word_.assign(static_cast<std::size_t>(params_.n), 0);
        }

        void advance() {
            ++index_;
            if (index_ >= count_) return;
            int j = params_.n - 1;
            while (j >= 0) {
                Letter& a = word_[static_cast<std::size_t>(j)];
                if (++a == params_.d) {
                    a = 0;
                    --j;
                } else {
                    break;
                }
            }
        }

        GameParams params_{1, 1};
        std::uint64_t index_ = 0;
        std::uint64_t count_ = 0;
        Word word_;
    };

    iterator begin() const { return iterator(params_, 0, count_); }
    iterator end() const { return iterator(params_, count_, count_); }

    std::uint64_t size() const noexcept { return count_; }
    const GameParams& params() const noexcept { return params_; }

private:
    GameParams params_;
    std::uint64_t count_;
};

// ============================================================================
// Encodings
// ============================================================================

/// Alice's best response to a fixed decoding matrix: the smallest y whose row
/// best approximates x. Ties never affect the game value (it only uses the
/// max), so the lowest index is a safe deterministic choice.
inline Letter best_response_encode(const DecodingMatrix& f, const Word& x) {
    require_valid_word(f.params(), x);
    Letter best = 0;
    int best_sim = -1;
    for (Letter y = 0; y < f.params().d; ++y) {
        const int s = sim(f.row(y), x);
        if (s > best_sim) {
            best_sim = s;
            best = y;
        }
    }
    return best;
}

/// Alice's encoding: either the implicit best response against a decoding
/// matrix, or an explicit table mapping every word to a letter.
class EncodingFunction {
public:
    static EncodingFunction best_response() { return EncodingFunction(std::nullopt); }

    static EncodingFunction explicit_table(std::map<Word, Letter> table) {
        return EncodingFunction(std::move(table));
    }

    bool is_best_response() const noexcept { return !table_.has_value(); }

    const std::map<Word, Letter>& table() const {
        if (!table_) throw std::logic_error("EncodingFunction: best-response has no table");
        return *table_;
    }

    Letter encode(const DecodingMatrix& f, const Word& x) const {
        if (!table_) return best_response_encode(f, x);
        require_valid_word(f.params(), x);
        const auto it = table_->find(x);
        if (it == table_->end())
            throw std::invalid_argument("EncodingFunction: explicit table does not cover word");
        if (it->second < 0 || it->second >= f.params().d)
            throw std::invalid_argument("EncodingFunction: table letter out of range");
        return it->second;
    }

private:
    explicit EncodingFunction(std::optional<std::map<Word, Letter>> table)
        : table_(std::move(table)) {}

    std::optional<std::map<Word, Letter>> table_;
};

// ============================================================================
// Randomized strategies
// ============================================================================

struct RandomizedComponent {
    Rational weight;
    DecodingMatrix matrix;
};

/// A probability mixture of deterministic decoding matrices over one game.
/// Weights are exact, strictly positive and sum to exactly 1.
class RandomizedStrategy {
public:
    explicit RandomizedStrategy(std::vector<RandomizedComponent> components)
        : components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("RandomizedStrategy: no components");
        Rational total = 0;
        for (const auto& c : components_) {
            if (c.weight <= 0)
                throw std::invalid_argument("RandomizedStrategy: weights must be > 0");
            if (!(c.matrix.params() == components_.front().matrix.params()))
                throw std::invalid_argument(
                    "RandomizedStrategy: components must share one GameParams");
            total += c.weight;
        }
        if (total != 1)
            throw std::invalid_argument("RandomizedStrategy: weights must sum to exactly 1");
    }

    const std::vector<RandomizedComponent>& components() const noexcept { return components_; }
    const GameParams& params() const noexcept { return components_.front().matrix.params(); }

private:
    std::vector<RandomizedComponent> components_;
};

}  // namespace racopt
