// improve.hpp -- value-monotone strategy improvement and strictness witnesses
//
// The improvement step moves a duplicated column letter onto a letter missing
// from that column; it never lowers the strategy value. Iterating it
// normalizes any matrix into one whose columns are all permutations. The
// witness constructions certify strictness: they exhibit a word whose best
// approximation provably degrades when two rows are merged in a column
// (general regime) or when two columns are degenerate (binary even-n regime).

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "optimality.hpp"
#include "rational.hpp"
#include "value.hpp"

namespace racopt {

// ============================================================================
// Lemma-1 improvement steps
// ============================================================================

/// Which requirement of the improvement step failed.
enum class StepCondition {
    kTargetLetterAbsent,     ///< (i): no row may already hold `a` in column j
    kSourceLetterDuplicated  ///< (ii): f(y1, j) must occur in some other row of column j
};

class StepConditionError : public std::invalid_argument {
public:
    StepConditionError(StepCondition failed, const std::string& what)
        : std::invalid_argument(what), failed_(failed) {}

    StepCondition failed_condition() const noexcept { return failed_; }

private:
    StepCondition failed_;
};

/// One recorded improvement: in column j, row y's letter changed from -> to.
struct ImprovementStep {
    int column = 0;
    Letter row = 0;
    Letter from = 0;
    Letter to = 0;

    friend bool operator==(const ImprovementStep&, const ImprovementStep&) = default;
};

/// Replaces f(y1, j) with `a`, requiring that (i) no row holds `a` in column
/// j and (ii) the replaced letter occurs in at least one other row of column
/// j. Under those conditions the new strategy is at least as good as f (the
/// tests verify the value guarantee; the operation checks only the
/// conditions).
inline DecodingMatrix lemma1_step(const DecodingMatrix& f, int j, Letter y1, Letter a) {
    const GameParams& p = f.params();
    if (j < 0 || j >= p.n) throw std::invalid_argument("lemma1_step: column out of range");
    if (y1 < 0 || y1 >= p.d) throw std::invalid_argument("lemma1_step: row out of range");
    if (a < 0 || a >= p.d) throw std::invalid_argument("lemma1_step: letter out of range");

    for (Letter y0 = 0; y0 < p.d; ++y0)
        if (f.at(y0, j) == a)
            throw StepConditionError(
                StepCondition::kTargetLetterAbsent,
                "lemma1_step: condition (i) failed: letter " + std::to_string(a) +
                    " already occurs in column " + std::to_string(j));

    const Letter b = f.at(y1, j);
    bool duplicated = false;
    for (Letter y2 = 0; y2 < p.d; ++y2)
        if (y2 != y1 && f.at(y2, j) == b) {
            duplicated = true;
            break;
        }
    if (!duplicated)
        throw StepConditionError(
            StepCondition::kSourceLetterDuplicated,
            "lemma1_step: condition (ii) failed: letter " + std::to_string(b) +
                " occurs only in row " + std::to_string(y1) + " of column " + std::to_string(j));

    return f.with_entry(y1, j, a);
}

// ============================================================================
// Normalization
// ============================================================================

/// Replayable record of a normalization run.
struct NormalizationTrace {
    DecodingMatrix initial;
    DecodingMatrix final;
    std::vector<ImprovementStep> steps;
    /// Exact value of `initial` followed by the value after each step
    /// (non-decreasing); present only when the word space fits under the cap
    /// given to normalize_to_property1.
    std::optional<std::vector<Rational>> values;
};

/// Drives a matrix to one in which every column is a permutation, without ever
/// lowering the value. Scan order is fixed for reproducibility: columns left
/// to right; within a column, the smallest absent letter is assigned to the
/// lowest-index row holding a duplicated letter. Terminates within d*n steps.
inline NormalizationTrace normalize_to_property1(const DecodingMatrix& f,
                                                 std::uint64_t word_cap = kDefaultWordCap) {
    const GameParams& p = f.params();
    const bool with_values = p.word_space_size() <= word_cap;

    DecodingMatrix current = f;
    std::vector<ImprovementStep> steps;
    std::optional<std::vector<Rational>> values;
    if (with_values) values.emplace().push_back(strategy_value(current, word_cap));

    for (int j = 0; j < p.n; ++j) {
        while (true) {
            std::vector<int> occurrences(static_cast<std::size_t>(p.d), 0);
            for (Letter y = 0; y < p.d; ++y) ++occurrences[static_cast<std::size_t>(current.at(y, j))];

            Letter absent = -1;
            for (Letter a = 0; a < p.d; ++a)
                if (occurrences[static_cast<std::size_t>(a)] == 0) {
                    absent = a;
                    break;
                }
            if (absent < 0) break;  // column is a permutation

            Letter y1 = -1;  // exists by pigeonhole once a letter is absent
            for (Letter y = 0; y < p.d; ++y)
                if (occurrences[static_cast<std::size_t>(current.at(y, j))] >= 2) {
                    y1 = y;
                    break;
                }

            const Letter b = current.at(y1, j);
            current = lemma1_step(current, j, y1, absent);
            steps.push_back(ImprovementStep{j, y1, b, absent});
            if (with_values) values->push_back(strategy_value(current, word_cap));
        }
    }
    return NormalizationTrace{f, std::move(current), std::move(steps), std::move(values)};
}

// ============================================================================
// Strictness witnesses
// ============================================================================

/// Word certifying that merging rows y1 and y2 of a Property-1 matrix in
/// column j strictly hurts: reading positions in the order (j, then the other
/// columns ascending), the first half of the witness copies row y1 (starting
/// with g(y1, j) itself) and the rest copies row y2; for even n the last
/// position instead takes the smallest letter differing from both rows there.
/// The merged matrix f = g with g(y1, j) := g(y2, j) approximates the witness
/// strictly worse than g does. Defined for n > 2 with d > 2 or n odd.
inline Word lemma3_witness(const DecodingMatrix& g, int j, Letter y1, Letter y2) {
    const GameParams& p = g.params();
    if (j < 0 || j >= p.n) throw std::invalid_argument("lemma3_witness: column out of range");
    if (y1 < 0 || y1 >= p.d || y2 < 0 || y2 >= p.d || y1 == y2)
        throw std::invalid_argument("lemma3_witness: rows must be distinct and in range");
    if (p.n <= 2 || (p.d == 2 && p.n % 2 == 0))
        throw std::domain_error(
            "lemma3_witness: requires n > 2 and (d > 2 or n odd); the n = 2 and "
            "binary even-n regimes have their own characterization");
    if (!satisfies_property1(g))
        throw std::domain_error("lemma3_witness: matrix must satisfy Property 1");

    std::vector<int> columns;
    columns.reserve(static_cast<std::size_t>(p.n));
    columns.push_back(j);
    for (int c = 0; c < p.n; ++c)
        if (c != j) columns.push_back(c);

    // ceil(n/2) positions from y1, the rest from y2
    const int from_y1 = (p.n + 1) / 2;
    Word x(static_cast<std::size_t>(p.n));
    for (int k = 0; k < p.n; ++k) {
        const int c = columns[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(c)] = k < from_y1 ? g.at(y1, c) : g.at(y2, c);
    }
    if (p.n % 2 == 0) {
        const int last = columns[static_cast<std::size_t>(p.n - 1)];
        const Letter avoid1 = g.at(y1, last);
        const Letter avoid2 = g.at(y2, last);
        for (Letter z = 0; z < p.d; ++z)
            if (z != avoid1 && z != avoid2) {
                x[static_cast<std::size_t>(last)] = z;
                break;
            }
    }
    return x;
}

/// Word certifying that a binary matrix with degenerate (constant) leading
/// columns is strictly suboptimal: on every column where the two rows agree
/// the witness takes the missing letter, and the columns where they differ
/// are split between row 0 (first half, rounded up) and row 1. No row then
/// agrees with the witness in more than n/2 - 1 positions, and exactly
/// n/2 - 1 is reached when only columns 0 and 1 are degenerate, which is the
/// classical construction z1 z2 f0[2..n/2] f1[n/2+1..n-1]. Requires d = 2,
/// even n > 2, and a missing letter in each of the first two columns.
inline Word lemma5_witness(const DecodingMatrix& f) {
    const GameParams& p = f.params();
    if (p.d != 2 || p.n <= 2 || p.n % 2 != 0)
        throw std::domain_error("lemma5_witness: requires d = 2 and even n > 2");
    if (column_is_permutation(f, 0) || column_is_permutation(f, 1))
        throw std::invalid_argument(
            "lemma5_witness: each of the first two columns must miss a letter");

    std::vector<int> split_columns;  // columns where the rows disagree
    for (int c = 0; c < p.n; ++c)
        if (f.at(0, c) != f.at(1, c)) split_columns.push_back(c);

    Word x(static_cast<std::size_t>(p.n));
    for (int c = 0; c < p.n; ++c)
        if (f.at(0, c) == f.at(1, c)) x[static_cast<std::size_t>(c)] = 1 - f.at(0, c);
    const std::size_t first_half = (split_columns.size() + 1) / 2;
    for (std::size_t i = 0; i < split_columns.size(); ++i) {
        const int c = split_columns[i];
        x[static_cast<std::size_t>(c)] = i < first_half ? f.at(0, c) : f.at(1, c);
    }
    return x;
}

}  // namespace racopt
