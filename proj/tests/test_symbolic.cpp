#include <doctest.h>

#include "cantorlim/symbolic.hpp"

#include <random>

using namespace cantorlim;

TEST_CASE("is_mixing: full shift on 9 letters") {
    CHECK(is_mixing(Alphabet(9), TransitionSet::full(9)));
}

TEST_CASE("is_mixing: single letter with self-loop") {
    CHECK(is_mixing(Alphabet(1), TransitionSet(1, {{0, 0}})));
}

TEST_CASE("is_mixing: period-2 adjacency is not mixing") {
    // A^N alternates between the two off-diagonal patterns; verified by hand
    // for N <= 4, so no power can be strictly positive
    const TransitionSet t(2, {{0, 1}, {1, 0}});
    CHECK_FALSE(is_mixing(Alphabet(2), t));
}

TEST_CASE("is_mixing: irreducible but periodic 3-cycle") {
    const TransitionSet t(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_FALSE(is_mixing(Alphabet(3), t));
}

TEST_CASE("concat splices at the junction letter") {
    const FiniteWord a({0, 1}), b({1, 2});
    CHECK(concat(a, b) == FiniteWord({0, 1, 2}));
    CHECK(concat(a, b).size() == a.size() + b.size());

    const FiniteWord single({3});
    CHECK(concat(single, single) == single);
    CHECK(concat(single, single).size() == 0);

    CHECK(concat(FiniteWord({0, 1, 0}), FiniteWord({0, 2})) == FiniteWord({0, 1, 0, 2}));
    CHECK_THROWS_AS(concat(FiniteWord({0, 1}), FiniteWord({2, 0})), SymbolicError);
}

TEST_CASE("concat is associative where defined") {
    std::mt19937_64 g(11);
    std::uniform_int_distribution<int> len(1, 5), letter(0, 8);
    for (int trial = 0; trial < 200; ++trial) {
        auto word_from = [&](Letter start) {
            std::vector<Letter> s{start};
            const int n = len(g);
            for (int i = 0; i < n; ++i) s.push_back(static_cast<Letter>(letter(g)));
            return FiniteWord(s);
        };
        const FiniteWord a = word_from(static_cast<Letter>(letter(g)));
        const FiniteWord b = word_from(a.last());
        const FiniteWord c = word_from(b.last());
        CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    }
}

TEST_CASE("wedge: longest common suffix") {
    const NegSequence t1({1, 0, 5}), t2({2, 0, 5});
    const auto r = wedge(t1, t2);
    CHECK(r.word == FiniteWord({0, 5}));
    CHECK_FALSE(r.exhausted);

    const auto r2 = wedge(NegSequence({3, 5}), NegSequence({4, 5}));
    CHECK(r2.word == FiniteWord({5}));
    CHECK_FALSE(r2.exhausted);
}

TEST_CASE("wedge: truncations agreeing on the full overlap report exhausted") {
    const auto r = wedge(NegSequence({0, 5}), NegSequence({7, 0, 5}));
    CHECK(r.word == FiniteWord({0, 5}));
    CHECK(r.exhausted);

    const auto r2 = wedge(NegSequence({1, 2, 3}), NegSequence({1, 2, 3}));
    CHECK(r2.word == FiniteWord({1, 2, 3}));
    CHECK(r2.exhausted);
}

TEST_CASE("wedge: differing final letters is an error") {
    CHECK_THROWS_AS(wedge(NegSequence({0, 1}), NegSequence({0, 2})), SymbolicError);
}

TEST_CASE("wedge is symmetric") {
    std::mt19937_64 g(23);
    std::uniform_int_distribution<int> len(0, 6), letter(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const Letter last = static_cast<Letter>(letter(g));
        auto make = [&] {
            std::vector<Letter> s;
            const int n = len(g);
            for (int i = 0; i < n; ++i) s.push_back(static_cast<Letter>(letter(g)));
            s.push_back(last);
            return NegSequence(s);
        };
        const NegSequence t1 = make(), t2 = make();
        const auto a = wedge(t1, t2);
        const auto b = wedge(t2, t1);
        CHECK(a.word == b.word);
        CHECK(a.exhausted == b.exhausted);
    }
}

TEST_CASE("admissibility over the full shift") {
    const auto t = TransitionSet::full(9);
    std::mt19937_64 g(37);
    std::uniform_int_distribution<int> letter(0, 8), len(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Letter> s;
        const int n = len(g);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<Letter>(letter(g)));
        CHECK(is_admissible(FiniteWord(s), t));
    }
}

TEST_CASE("alphabet invariants") {
    CHECK_THROWS_AS(Alphabet(0), SymbolicError);
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{"a", "a"}), SymbolicError);
    const Alphabet a(std::vector<std::string>{"p", "q"});
    CHECK(a.label(1) == "q");
}

TEST_CASE("negative sequence views") {
    const NegSequence t({7, 3, 4}); // (theta_-2, theta_-1, theta_0)
    CHECK(t.truncation_depth() == 2);
    CHECK(t.last() == 4);
    CHECK(t.at_offset(2) == 7);
    CHECK(t.tail_word(1) == FiniteWord({3, 4}));
    CHECK(t.appended(5).last() == 5);
    CHECK(t.appended(5).truncation_depth() == 3);
}
