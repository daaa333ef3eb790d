#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <racopt/core.hpp>
#include <racopt/optimality.hpp>

#include "support/oracle.hpp"

using namespace racopt;

namespace {

DecodingMatrix make_matrix(int n, int d, std::vector<Word> rows) {
    return DecodingMatrix(GameParams(n, d), std::move(rows));
}

std::vector<std::vector<Letter>> identity_perms(int n, int d) {
    std::vector<Letter> id(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) id[static_cast<std::size_t>(a)] = a;
    return std::vector<std::vector<Letter>>(static_cast<std::size_t>(n), id);
}

}  // namespace

TEST_CASE("GameParams validates its range") {
    CHECK_THROWS_AS(GameParams(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(GameParams(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(GameParams(kMaxParam + 1, 2), std::invalid_argument);
    const GameParams p(3, 2);
    CHECK(p.word_space_size() == 8);
    CHECK(p.matrix_space_size() == 64);
}

TEST_CASE("sim counts agreeing positions") {
    CHECK(sim({0, 1, 2, 0}, {0, 1, 2, 0}) == 4);
    CHECK(sim({0, 1}, {1, 0}) == 0);
    // flipping a single position moves sim by exactly 1
    CHECK(sim({0, 1, 1}, {1, 1, 1}) == 2);
    CHECK(sim({1, 1, 1}, {1, 1, 1}) == 3);
    CHECK_THROWS_AS(sim({0, 1}, {0, 1, 0}), std::invalid_argument);
}

TEST_CASE("sim is symmetric and single-position changes move it by at most 1") {
    std::mt19937_64 rng(7);
    const GameParams p(6, 3);
    for (int trial = 0; trial < 200; ++trial) {
        Word z(6), x(6);
        for (int j = 0; j < 6; ++j) {
            z[j] = static_cast<Letter>(rng() % 3);
            x[j] = static_cast<Letter>(rng() % 3);
        }
        CHECK(sim(z, x) == sim(x, z));
        CHECK(sim(z, z) == p.n);
        Word z2 = z;
        const int pos = static_cast<int>(rng() % 6);
        z2[pos] = static_cast<Letter>((z2[pos] + 1 + static_cast<int>(rng() % 2)) % 3);
        const int delta = sim(z2, x) - sim(z, x);
        CHECK(delta >= -1);
        CHECK(delta <= 1);
    }
}

TEST_CASE("DecodingMatrix validates shape and entries") {
    CHECK_THROWS_AS(make_matrix(2, 2, {{0, 0}}), std::invalid_argument);          // missing row
    CHECK_THROWS_AS(make_matrix(2, 2, {{0, 0}, {0}}), std::invalid_argument);     // short row
    CHECK_THROWS_AS(make_matrix(2, 2, {{0, 0}, {0, 2}}), std::invalid_argument);  // letter >= d
    const auto m = make_matrix(2, 2, {{0, 1}, {1, 0}});
    CHECK(m.at(1, 0) == 1);
    CHECK(m.with_entry(1, 0, 0).at(1, 0) == 0);
    CHECK(m.with_entry(1, 0, 0).at(0, 1) == 1);
}

TEST_CASE("majority strategy answers the received letter everywhere") {
    const auto g22 = majority_strategy(GameParams(2, 2));
    CHECK(g22.rows() == std::vector<Word>{{0, 0}, {1, 1}});
    const auto g33 = majority_strategy(GameParams(3, 3));
    CHECK(g33.rows() == std::vector<Word>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
    const auto g11 = majority_strategy(GameParams(1, 1));
    CHECK(g11.rows() == std::vector<Word>{{0}});
}

TEST_CASE("best_response_encode picks the lowest maximizing row") {
    const auto ident = make_matrix(3, 2, {{0, 0, 0}, {1, 1, 1}});
    CHECK(best_response_encode(ident, {0, 1, 0}) == 0);  // majority letter of 010

    const auto tie = make_matrix(2, 2, {{0, 0}, {1, 1}});
    CHECK(best_response_encode(tie, {0, 1}) == 0);  // symmetric tie -> lowest index

    const auto m = make_matrix(3, 3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(best_response_encode(m, {1, 2, 2}) == 1);  // sims 1, 2, 0

    CHECK_THROWS_AS(best_response_encode(m, {1, 2}), std::invalid_argument);
}

TEST_CASE("best response attains the max similarity for every word") {
    const auto m = make_matrix(3, 3, {{0, 1, 2}, {1, 2, 0}, {0, 0, 1}});
    for (const Word& x : WordRange(m.params())) {
        int best = 0;
        for (const Word& row : m.rows()) best = std::max(best, sim(row, x));
        CHECK(sim(m.row(best_response_encode(m, x)), x) == best);
    }
}

TEST_CASE("apply_column_permutations relabels columns") {
    const auto g = majority_strategy(GameParams(2, 2));
    CHECK(apply_column_permutations(g, identity_perms(2, 2)) == g);

    const std::vector<std::vector<Letter>> swap_then_id{{1, 0}, {0, 1}};
    const auto h = apply_column_permutations(g, swap_then_id);
    CHECK(h.rows() == std::vector<Word>{{1, 0}, {0, 1}});

    CHECK_THROWS_AS(apply_column_permutations(g, {{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(apply_column_permutations(g, {{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("permutation tuples act by composition") {
    const auto g = majority_strategy(GameParams(3, 3));
    const std::vector<std::vector<Letter>> p1{{1, 2, 0}, {0, 2, 1}, {2, 1, 0}};
    const std::vector<std::vector<Letter>> p2{{2, 0, 1}, {1, 0, 2}, {0, 2, 1}};
    std::vector<std::vector<Letter>> composed(3, std::vector<Letter>(3));
    for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a) composed[j][a] = p2[j][static_cast<std::size_t>(p1[j][a])];
    CHECK(apply_column_permutations(apply_column_permutations(g, p1), p2) ==
          apply_column_permutations(g, composed));
}

TEST_CASE("every Property-1 matrix is a unique permutation image of the majority strategy") {
    const GameParams p(3, 2);
    std::set<std::vector<Word>> images;
    const std::vector<std::vector<Letter>> perms_of_2{{0, 1}, {1, 0}};
    for (const auto& a : perms_of_2)
        for (const auto& b : perms_of_2)
            for (const auto& c : perms_of_2)
                images.insert(apply_column_permutations(majority_strategy(p), {a, b, c}).rows());
    CHECK(images.size() == 8);  // (d!)^n distinct images

    std::set<std::vector<Word>> property1;
    for (std::uint64_t i = 0; i < 64; ++i) {
        const auto m = matrix_at(p, i);
        if (satisfies_property1(m)) property1.insert(m.rows());
    }
    CHECK(images == property1);
}

TEST_CASE("iterate_words yields the lexicographic stream") {
    std::vector<Word> got;
    for (const Word& w : WordRange(GameParams(2, 2))) got.push_back(w);
    CHECK(got == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    got.clear();
    for (const Word& w : WordRange(GameParams(1, 3))) got.push_back(w);
    CHECK(got == std::vector<Word>{{0}, {1}, {2}});

    const WordRange r(GameParams(3, 2));
    CHECK(r.size() == 8);
    std::vector<Word> all(r.begin(), r.end());
    CHECK(all.size() == 8);
    CHECK(all.front() == Word{0, 0, 0});
    CHECK(all.back() == Word{1, 1, 1});
    CHECK(std::set<Word>(all.begin(), all.end()).size() == 8);  // no repeats
}

TEST_CASE("word enumeration refuses spaces past the cap, naming it") {
    try {
        WordRange range(GameParams(20, 4));  // 4^20 > 10^8
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.cap() == kDefaultWordCap);
        CHECK(e.space_size() == int_pow(4, 20));
        CHECK(std::string(e.what()).find(std::to_string(kDefaultWordCap)) != std::string::npos);
    }
    CHECK_NOTHROW(WordRange(GameParams(20, 4), kUncapped >= int_pow(4, 20) ? kUncapped : 0));
}

TEST_CASE("word_at and word_ordinal are inverse and match iteration order") {
    const GameParams p(4, 3);
    std::uint64_t i = 0;
    for (const Word& w : WordRange(p)) {
        CHECK(word_at(p, i) == w);
        CHECK(word_ordinal(p, w) == i);
        ++i;
    }
    CHECK_THROWS_AS(word_at(p, 81), std::out_of_range);
}

TEST_CASE("word streams can be consumed by disjoint ordinal ranges") {
    const GameParams p(3, 3);
    const auto words = test_oracle::all_words(3, 3);
    // Any split of [0, 27) covers exactly the full stream.
    for (std::uint64_t cut : {0ull, 5ull, 13ull, 27ull}) {
        std::vector<Word> combined;
        for (std::uint64_t i = 0; i < cut; ++i) combined.push_back(word_at(p, i));
        for (std::uint64_t i = cut; i < 27; ++i) combined.push_back(word_at(p, i));
        CHECK(combined == words);
    }
}

TEST_CASE("explicit encodings dispatch through their table") {
    const auto f = make_matrix(2, 2, {{0, 0}, {1, 1}});
    std::map<Word, Letter> table;
    for (const Word& w : WordRange(f.params())) table[w] = 0;
    const auto enc = EncodingFunction::explicit_table(table);
    CHECK_FALSE(enc.is_best_response());
    CHECK(enc.encode(f, {1, 1}) == 0);

    const auto best = EncodingFunction::best_response();
    CHECK(best.is_best_response());
    CHECK(best.encode(f, {1, 1}) == 1);
    CHECK_THROWS_AS(best.table(), std::logic_error);

    std::map<Word, Letter> partial = table;
    partial.erase({0, 1});
    CHECK_THROWS_AS(EncodingFunction::explicit_table(partial).encode(f, {0, 1}),
                    std::invalid_argument);
}

TEST_CASE("RandomizedStrategy validates weights and params") {
    const auto m = majority_strategy(GameParams(2, 2));
    const auto other = majority_strategy(GameParams(2, 3));
    CHECK_NOTHROW(RandomizedStrategy({{Rational(1, 2), m}, {Rational(1, 2), m}}));
    CHECK_THROWS_AS(RandomizedStrategy({}), std::invalid_argument);
    CHECK_THROWS_AS(RandomizedStrategy({{Rational(1, 2), m}, {Rational(1, 3), m}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RandomizedStrategy({{Rational(0), m}, {Rational(1), m}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RandomizedStrategy({{Rational(1, 2), m}, {Rational(1, 2), other}}),
                    std::invalid_argument);
}
