#include "common.hpp"

using namespace locdiv;
using tst::alpha;

TEST_CASE("dfa validation and word acceptance", "[automata]") {
    Dfa d = tst::dfa_contains('a', "ab");
    CHECK(d.accepts(to_word("ba")));
    CHECK_FALSE(d.accepts(to_word("bbb")));
    CHECK_FALSE(d.accepts(to_word("")));
    // Letters outside the alphabet make the word fall outside A*.
    CHECK_FALSE(d.accepts(to_word("ca")));

    Dfa bad = d;
    bad.initial = 5;
    CHECK_THROWS_AS(validate_dfa(bad), Error);
    bad = d;
    bad.delta[0] = 9;
    CHECK_THROWS_AS(validate_dfa(bad), Error);
    bad = d;
    bad.delta.pop_back();
    CHECK_THROWS_AS(validate_dfa(bad), Error);
}

TEST_CASE("canonical numbering is stable under state permutation", "[automata]") {
    Dfa d = tst::dfa_count_mod('a', 3, 0, "ab");
    // Permute states 0<->2 by hand.
    Dfa p;
    p.alphabet = d.alphabet;
    p.states = 3;
    p.initial = 2;
    p.accepting = {0, 0, 1};
    p.delta.resize(6);
    std::vector<int> perm{2, 1, 0};
    for (int s = 0; s < 3; ++s)
        for (int li = 0; li < 2; ++li) p.delta[perm[s] * 2 + li] = perm[d.step(s, li)];
    Dfa cd = canonicalize(d), cp = canonicalize(p);
    CHECK(cd.delta == cp.delta);
    CHECK(cd.accepting == cp.accepting);

    // Unreachable states disappear.
    Dfa u = d;
    u.states = 4;
    u.accepting.push_back(1);
    u.delta = {1, 0, 2, 1, 0, 2, 3, 3};  // state 3 loops on itself, unreachable
    CHECK(canonicalize(u).states == 3);
}

TEST_CASE("minimization collapses equivalent states", "[automata]") {
    // Two redundant copies of the "seen a" state.
    Dfa d;
    d.alphabet = alpha("ab");
    d.states = 3;
    d.initial = 0;
    d.accepting = {0, 1, 1};
    d.delta = {1, 0, 2, 1, 1, 2};
    Dfa m = minimize(d);
    CHECK(m.states == 2);
    CHECK(equivalent(m, tst::dfa_contains('a', "ab")));

    CHECK(minimize(tst::dfa_ab_star()).states == 3);
    CHECK(minimize(dfa_full(alpha("ab"))).states == 1);
}

TEST_CASE("boolean combinations match word-level semantics", "[automata]") {
    Dfa x = tst::dfa_contains('a', "ab");
    Dfa y = tst::dfa_count_mod('b', 2, 0, "ab");
    Dfa u = unite(x, y), i = intersect(x, y), df = difference(x, y), c = complement(x);
    for (const Word& w : all_words(alpha("ab"), 6)) {
        bool in_x = x.accepts(w), in_y = y.accepts(w);
        CHECK(u.accepts(w) == (in_x || in_y));
        CHECK(i.accepts(w) == (in_x && in_y));
        CHECK(df.accepts(w) == (in_x && !in_y));
        CHECK(c.accepts(w) == !in_x);
    }
    CHECK_THROWS_AS(unite(x, tst::dfa_contains('a', "abc")), Error);
}

TEST_CASE("emptiness, inclusion, equivalence", "[automata]") {
    Dfa none = dfa_empty(alpha("ab"));
    Dfa any = dfa_full(alpha("ab"));
    CHECK(is_empty(none));
    CHECK_FALSE(is_empty(any));
    CHECK(is_subset(tst::dfa_ab_star(), any));
    CHECK_FALSE(is_subset(any, tst::dfa_ab_star()));
    CHECK(equivalent(complement(none), any));
    CHECK(is_empty(intersect(tst::dfa_contains('a', "ab"),
                             complement(tst::dfa_contains('a', "ab")))));
}

TEST_CASE("accepted words come out in length-lex order", "[automata]") {
    auto words = enumerate_accepted(tst::dfa_ab_star(), 4);
    REQUIRE(words.size() == 3);
    CHECK(words[0] == to_word(""));
    CHECK(words[1] == to_word("ab"));
    CHECK(words[2] == to_word("abab"));

    auto words2 = enumerate_accepted(tst::dfa_contains('a', "ab"), 2);
    std::vector<Word> expect{to_word("a"), to_word("aa"), to_word("ab"), to_word("ba")};
    CHECK(words2 == expect);
}

TEST_CASE("concatenation and star via the nfa glue", "[automata]") {
    Dfa a = dfa_letter(alpha("ab"), 'a');
    Dfa b = dfa_letter(alpha("ab"), 'b');
    Dfa ab = dfa_concat(a, b);
    CHECK(equivalent(dfa_star(ab), tst::dfa_ab_star()));
    CHECK(equivalent(dfa_concat(dfa_epsilon(alpha("ab")), a), a));
    CHECK(equivalent(dfa_concat(dfa_empty(alpha("ab")), a), dfa_empty(alpha("ab"))));
    CHECK(equivalent(dfa_star(dfa_empty(alpha("ab"))), dfa_epsilon(alpha("ab"))));
}

TEST_CASE("regex parsing, printing, compiling", "[automata]") {
    Alphabet ab = alpha("ab");
    CHECK(equivalent(compile_regex("(ab)*", ab), tst::dfa_ab_star()));
    CHECK(equivalent(compile_regex("(a+b)*a(a+b)*", ab), tst::dfa_contains('a', "ab")));
    CHECK(equivalent(compile_regex("0", ab), dfa_empty(ab)));
    CHECK(equivalent(compile_regex("1", ab), dfa_epsilon(ab)));
    CHECK(equivalent(compile_regex("0*", ab), dfa_epsilon(ab)));

    // Concatenation binds tighter than +, star tighter than concatenation.
    Dfa d = compile_regex("ab+b", ab);
    CHECK(d.accepts(to_word("ab")));
    CHECK(d.accepts(to_word("b")));
    CHECK_FALSE(d.accepts(to_word("a")));
    Dfa e = compile_regex("ab*", ab);
    CHECK(e.accepts(to_word("abb")));
    CHECK_FALSE(e.accepts(to_word("abab")));

    RegexPtr r = parse_regex(" ( a b ) * ", ab);
    CHECK(equivalent(compile_regex(print_regex(r), ab), tst::dfa_ab_star()));

    CHECK_THROWS_AS(parse_regex("(ab", ab), ParseError);
    CHECK_THROWS_AS(parse_regex("a++b", ab), ParseError);
    CHECK_THROWS_AS(parse_regex("", ab), ParseError);
    CHECK_THROWS_AS(parse_regex("ac", ab), ParseError);
    try {
        parse_regex("a)b", ab);
        FAIL("expected a parse error");
    } catch (const ParseError& pe) {
        CHECK(pe.position == 1);
    }
}

TEST_CASE("transition monoid of the two simplest machines", "[automata]") {
    TransitionMonoid tm = transition_monoid(tst::dfa_contains('a', "ab"));
    CHECK(tm.monoid.size == 2);
    CHECK(tm.monoid.table == std::vector<int>{0, 1, 1, 1});
    CHECK(tm.morphism.image('a') == 1);
    CHECK(tm.morphism.image('b') == 0);
    CHECK(is_aperiodic(tm.monoid));

    TransitionMonoid z = transition_monoid(tst::dfa_count_mod('a', 3, 0, "a"));
    CHECK(z.monoid.size == 3);
    CHECK_FALSE(is_aperiodic(z.monoid));
}

TEST_CASE("transition monoid tracks the run of the automaton", "[automata]") {
    for (const Dfa& d : {tst::dfa_ab_star(), tst::dfa_count_mod('b', 2, 1, "ab")}) {
        TransitionMonoid tm = transition_monoid(d);
        for (const Word& w : all_words(alpha("ab"), 5)) {
            int elem = tm.morphism.eval(w);
            int state = tm.transformation[elem][d.initial];
            CHECK(d.accepts(w) == static_cast<bool>(d.accepting[state]));
        }
    }
    CHECK(transition_monoid(tst::dfa_ab_star()).monoid.size == 6);
    CHECK(is_aperiodic(transition_monoid(tst::dfa_ab_star()).monoid));
}
