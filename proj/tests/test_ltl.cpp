#include <random>

#include "common.hpp"
#include "locdiv/localizer.hpp"
#include "locdiv/ltl.hpp"

using namespace locdiv;
using tst::alpha;

namespace {

CltlPtr random_cltl(std::mt19937_64& rng, const Alphabet& a, int depth) {
    auto pick_letter = [&] { return a[rng() % a.size()]; };
    if (depth <= 0) {
        switch (rng() % 3) {
            case 0: return cltl_empty(a);
            case 1: return cltl_full(a);
            default: return cltl_prefix(pick_letter(), cltl_full(a));
        }
    }
    switch (rng() % 5) {
        case 0: return cltl_compl(random_cltl(rng, a, depth - 1));
        case 1: return cltl_union(random_cltl(rng, a, depth - 1), random_cltl(rng, a, depth - 1));
        case 2: return cltl_prefix(pick_letter(), random_cltl(rng, a, depth - 1));
        case 3: return cltl_until(random_cltl(rng, a, depth - 1), random_cltl(rng, a, depth - 1));
        default: return cltl_empty(a);
    }
}

// Reference semantics for the builder operations, computed from the unique
// first/last occurrence of c.
bool last_c_split(const Word& w, Letter c, Word& before, Word& after) {
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
        if (w[i] == c) {
            before.assign(w.begin(), w.begin() + i);
            after.assign(w.begin() + i + 1, w.end());
            return true;
        }
    return false;
}

bool first_c_split(const Word& w, Letter c, Word& before, Word& from) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == c) {
            before.assign(w.begin(), w.begin() + i);
            from.assign(w.begin() + i, w.end());
            return true;
        }
    return false;
}

}  // namespace

TEST_CASE("formula evaluation over finite words", "[ltl]") {
    Word ab = to_word("ab"), aab = to_word("aab");
    CHECK(eval_ltl(ltl_atom('a'), ab, 1));
    CHECK_FALSE(eval_ltl(ltl_next(ltl_atom('b')), ab, 2));  // no position 3
    CHECK(eval_ltl(ltl_until(ltl_atom('a'), ltl_atom('b')), aab, 1));
    CHECK(eval_ltl(ltl_next(ltl_atom('b')), ab, 1));
    CHECK(eval_ltl(ltl_finally(ltl_atom('b')), aab, 1));
    CHECK_FALSE(eval_ltl(ltl_finally(ltl_atom('b')), to_word("aaa"), 1));
    CHECK(eval_ltl(ltl_until(ltl_atom('a'), ltl_atom('a')), aab, 1));  // witness k=i
    CHECK_THROWS_AS(eval_ltl(ltl_true(), ab, 0), Error);
    CHECK_THROWS_AS(eval_ltl(ltl_true(), ab, 3), Error);
}

TEST_CASE("formula constant folding", "[ltl]") {
    LtlPtr a = ltl_atom('a');
    CHECK(ltl_not(ltl_not(a)) == a);
    CHECK(ltl_or(ltl_false(), a) == a);
    CHECK(is_ltl_true(ltl_or(a, ltl_true())));
    CHECK(is_ltl_false(ltl_not(ltl_true())));
}

TEST_CASE("formula text syntax round trip", "[ltl]") {
    Alphabet ab = alpha("ab");
    for (const char* text : {"true", "false", "'a'", "!'b'", "('a' | 'b')", "('a' & X 'b')",
                             "('a' U 'b')", "F 'a'", "X ('a' U !'b')"}) {
        LtlPtr f = parse_ltl(text, ab);
        LtlPtr g = parse_ltl(print_ltl(f), ab);
        for (const Word& w : all_words(ab, 5))
            if (!w.empty()) CHECK(eval_ltl(f, w, 1) == eval_ltl(g, w, 1));
    }
    CHECK(print_ltl(parse_ltl("F 'a'", ab)) == "F 'a'");
    CHECK(print_ltl(ltl_false()) == "false");
    // Bare letters are accepted.
    CHECK(eval_ltl(parse_ltl("(a U b)", ab), to_word("aab"), 1));
    CHECK_THROWS_AS(parse_ltl("('a' |", ab), ParseError);
    CHECK_THROWS_AS(parse_ltl("'c'", ab), ParseError);
    CHECK_THROWS_AS(parse_ltl("'a' 'b'", ab), ParseError);
    CHECK_THROWS_AS(parse_ltl("", ab), ParseError);
}

TEST_CASE("expression denotation and epsilon analysis", "[ltl]") {
    Alphabet ab = alpha("ab");
    CltlPtr full = cltl_full(ab);
    CHECK_FALSE(denote_cltl(cltl_empty(ab), to_word("a")));
    CHECK_FALSE(denote_cltl(cltl_prefix('a', full), Word{}));
    CHECK(denote_cltl(cltl_until(full, cltl_prefix('b', full)), to_word("aab")));

    CHECK(has_epsilon(full));
    CHECK_FALSE(has_epsilon(cltl_empty(ab)));
    CHECK_FALSE(has_epsilon(cltl_prefix('a', full)));
    CHECK(has_epsilon(cltl_compl(cltl_prefix('a', full))));
    CHECK(has_epsilon(cltl_until(cltl_empty(ab), full)));
    CHECK_FALSE(has_epsilon(cltl_until(full, cltl_prefix('a', full))));

    // until denotation: every strict nonempty suffix of the front part must
    // satisfy the left side
    CltlPtr astar_b = cltl_until(cltl_prefix('a', full), cltl_prefix('b', full));
    CHECK(denote_cltl(astar_b, to_word("aab")));
    CHECK(denote_cltl(astar_b, to_word("b")));
    CHECK(denote_cltl(astar_b, to_word("bba")));  // split at the last b
    CHECK_FALSE(denote_cltl(astar_b, to_word("aaa")));
    CHECK_FALSE(denote_cltl(astar_b, Word{}));
    CHECK_THROWS_AS(denote_cltl(astar_b, to_word("abc")), Error);
}

TEST_CASE("expression folding", "[ltl]") {
    Alphabet ab = alpha("ab");
    CltlPtr x = cltl_prefix('a', cltl_full(ab));
    CHECK(cltl_compl(cltl_compl(x)) == x);
    CHECK(cltl_union(cltl_empty(ab), x) == x);
    CHECK(cltl_union(x, x) == x);
    CHECK(is_cltl_empty(cltl_until(x, cltl_empty(ab))));
    CHECK(cltl_until(cltl_empty(ab), x) == x);
    CHECK(is_cltl_empty(cltl_prefix('a', cltl_empty(ab))));
    CHECK(is_cltl_full(cltl_until(x, cltl_full(ab))));
}

TEST_CASE("translation agrees with the expression on nonempty words", "[ltl]") {
    Alphabet ab = alpha("ab");
    std::mt19937_64 rng(default_seed());
    for (int trial = 0; trial < 100; ++trial) {
        CltlPtr e = random_cltl(rng, ab, 4);
        LtlPtr f = cltl_to_ltl(e);
        for (const Word& w : all_words(ab, 6))
            if (!w.empty()) CHECK(denote_cltl(e, w) == eval_ltl(f, w, 1));
    }
    // Spot checks of the two ε-dependent cases.
    CltlPtr a_full = cltl_prefix('a', cltl_full(ab));  // ε ∈ tail
    CHECK(eval_ltl(cltl_to_ltl(a_full), to_word("a"), 1));
    CltlPtr glob = cltl_until(a_full, cltl_full(ab));
    CHECK(is_ltl_false(cltl_to_ltl(cltl_empty(ab))));
    CHECK(eval_ltl(cltl_to_ltl(glob), to_word("aaa"), 1));
}

TEST_CASE("builder: alphabet lift", "[ltl]") {
    LtlClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    std::mt19937_64 rng(default_seed());
    for (int trial = 0; trial < 40; ++trial) {
        CltlPtr k = random_cltl(rng, b, 3);
        CltlPtr lifted = bld.lift_alphabet(k, a);
        CHECK(has_epsilon(lifted) == has_epsilon(k));
        for (const Word& w : all_words(a, 7)) {
            bool cfree = true;
            for (Letter x : w) cfree = cfree && x != 'c';
            CHECK(denote_cltl(lifted, w) == (cfree && denote_cltl(k, w)));
        }
    }
}

TEST_CASE("builder: the three concatenation shapes", "[ltl]") {
    LtlClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    Letter c = 'c';
    std::mt19937_64 rng(default_seed() + 1);
    CltlPtr c_start = cltl_prefix(c, cltl_full(a));
    for (int trial = 0; trial < 40; ++trial) {
        CltlPtr ka = random_cltl(rng, a, 3);
        CltlPtr kb = random_cltl(rng, b, 3);
        CltlPtr lb = random_cltl(rng, b, 3);
        CltlPtr la = cltl_intersect(random_cltl(rng, a, 3), c_start);  // ⊆ cA*

        CltlPtr app = bld.append_c(ka, c, lb, a);
        CltlPtr cat = bld.concat_into_c_side(kb, la, c);
        CltlPtr kcb = bld.kc_bstar(ka, c);
        CltlPtr kca = bld.kc_astar(kb, c, a);
        for (const Word& w : all_words(a, 7)) {
            Word u, v;
            bool has_last = last_c_split(w, c, u, v);
            CHECK(denote_cltl(kcb, w) == (has_last && denote_cltl(ka, u)));
            CHECK(denote_cltl(app, w) ==
                  (has_last && denote_cltl(ka, u) && denote_cltl(lb, v)));
            Word x, y;
            bool has_first = first_c_split(w, c, x, y);
            CHECK(denote_cltl(kca, w) == (has_first && denote_cltl(kb, x)));
            CHECK(denote_cltl(cat, w) ==
                  (has_first && denote_cltl(kb, x) && denote_cltl(la, y)));
        }
    }
}

TEST_CASE("builder: until rewriting needs the B-start guard", "[ltl]") {
    // {ε} U̇ {b} denotes {b}; its cA*-concatenation is exactly bcA*.  An
    // unguarded rewrite would also admit words with leading c's.
    LtlClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    CltlPtr eps_b = bld.epsilon(b);
    CltlPtr just_b = cltl_until(eps_b, cltl_prefix('b', eps_b));
    CltlPtr r = bld.kc_astar(just_b, 'c', a);
    CHECK(denote_cltl(r, to_word("bc")));
    CHECK(denote_cltl(r, to_word("bcc")));
    CHECK(denote_cltl(r, to_word("bcbb")));
    CHECK_FALSE(denote_cltl(r, to_word("cbc")));
    CHECK_FALSE(denote_cltl(r, to_word("c")));
}

TEST_CASE("builder: block-decomposition preimage", "[ltl]") {
    LtlClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    Letter c = 'c';
    Morphism g = make_morphism(b, {1}, tst::monoid_u1());
    std::vector<int> t_elems{0, 1};
    SigmaContext<CltlPtr> ctx;
    ctx.base_alphabet = a;
    ctx.c = c;
    ctx.derived = {first_synthetic_letter, first_synthetic_letter + 1};
    ctx.key = "test-u1";
    CltlPtr g0 = bld.epsilon(b);                       // preimage of the identity
    CltlPtr g1 = cltl_prefix('b', cltl_full(b));       // preimage of the absorber
    ctx.g_inverse = [&](Letter t) { return t == ctx.derived[0] ? g0 : g1; };

    auto expected = [&](const CltlPtr& k, const Word& w) {
        if (!w.empty() && w.front() != c) return false;
        Word derived_word;
        std::size_t i = 0;
        while (i < w.size()) {
            std::size_t j = i + 1;
            Word body;
            while (j < w.size() && w[j] != c) body.push_back(w[j++]);
            derived_word.push_back(ctx.derived[g.eval(body)]);
            i = j;
        }
        return denote_cltl(k, derived_word);
    };

    std::mt19937_64 rng(default_seed() + 2);
    for (int trial = 0; trial < 40; ++trial) {
        CltlPtr k = random_cltl(rng, ctx.derived, 3);
        CltlPtr s = bld.sigma_preimage(k, ctx);
        for (const Word& w : all_words(a, 7)) CHECK(denote_cltl(s, w) == expected(k, w));
    }
    CHECK_THROWS_AS(bld.sigma_preimage(cltl_empty(a), ctx), Error);
}

TEST_CASE("builder: one-block preimage denotes cB*", "[ltl]") {
    // With a trivial target monoid the derived alphabet has one letter whose
    // preimage is all of B*; the expression for that single-letter word pulls
    // back to cB*.
    LtlClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    MonoidTable one = make_monoid(1, 0, {0});
    SigmaContext<CltlPtr> ctx;
    ctx.base_alphabet = a;
    ctx.c = 'c';
    ctx.derived = {first_synthetic_letter};
    ctx.key = "test-one";
    ctx.g_inverse = [&](Letter) { return cltl_full(b); };
    CltlPtr one_block = cltl_prefix(ctx.derived[0], bld.epsilon(ctx.derived));
    CltlPtr s = bld.sigma_preimage(one_block, ctx);
    for (const Word& w : all_words(a, 6)) {
        bool expect = !w.empty() && w.front() == 'c' &&
                      std::count(w.begin(), w.end(), Letter('c')) == 1;
        CHECK(denote_cltl(s, w) == expect);
    }
}

TEST_CASE("synthesized formulas match their automata", "[ltl]") {
    {
        LtlSynthesis out = synth_ltl(tst::dfa_contains('a', "ab"));
        CHECK_FALSE(out.accepts_epsilon);
        Dfa d = tst::dfa_contains('a', "ab");
        for (const Word& w : all_words(alpha("ab"), 8))
            if (!w.empty()) CHECK(eval_ltl(out.formula, w, 1) == d.accepts(w));
    }
    {
        Dfa d = tst::dfa_ab_star();
        LtlSynthesis out = synth_ltl(d);
        CHECK(out.accepts_epsilon);
        for (const Word& w : all_words(alpha("ab"), 10))
            if (!w.empty()) CHECK(eval_ltl(out.formula, w, 1) == d.accepts(w));
    }
    {
        // A⁺ over a one-letter alphabet: everything nonempty matches.
        Dfa d = complement(dfa_epsilon(alpha("a")));
        LtlSynthesis out = synth_ltl(d);
        CHECK_FALSE(out.accepts_epsilon);
        for (const Word& w : all_words(alpha("a"), 8))
            if (!w.empty()) CHECK(eval_ltl(out.formula, w, 1));
    }
}

TEST_CASE("synthesis rejects group languages", "[ltl]") {
    CHECK_THROWS_AS(synth_ltl(tst::dfa_count_mod('a', 3, 0, "ab")), NonAperiodicError);
}
