#include <random>

#include "common.hpp"
#include "locdiv/sd.hpp"

using namespace locdiv;
using tst::alpha;

namespace {

SdPtr sd_word(const std::string& s) {
    SdPtr e = sd_star(sd_empty(), 0);
    for (char c : s) e = sd_concat(e, sd_letter(static_cast<Letter>(c)));
    return e;
}

SfPtr random_sf(std::mt19937_64& rng, const Alphabet& a, int depth) {
    if (depth <= 0) {
        switch (rng() % 3) {
            case 0: return sf_empty(a);
            case 1: return sf_full(a);
            default: return sf_letter(a, a[rng() % a.size()]);
        }
    }
    switch (rng() % 5) {
        case 0: return sf_compl(random_sf(rng, a, depth - 1));
        case 1: return sf_union(random_sf(rng, a, depth - 1), random_sf(rng, a, depth - 1));
        case 2: return sf_concat(random_sf(rng, a, depth - 1), random_sf(rng, a, depth - 1));
        default: return sf_letter(a, a[rng() % a.size()]);
    }
}

}  // namespace

TEST_CASE("expression folding and epsilon analysis", "[sd]") {
    SdPtr a = sd_letter('a');
    CHECK(sd_union(sd_empty(), a) == a);
    CHECK(sd_union(a, a) == a);
    CHECK(is_sd_empty(sd_concat(a, sd_empty())));
    SdPtr eps = sd_star(sd_empty(), 0);
    CHECK(sd_concat(eps, a) == a);
    CHECK(sd_concat(a, eps) == a);
    CHECK(is_sd_epsilon(eps));
    CHECK_FALSE(is_sd_epsilon(sd_star(a, 0)));
    CHECK_THROWS_AS(sd_star(a, -1), Error);

    CHECK(sd_has_epsilon(eps));
    CHECK(sd_has_epsilon(sd_star(a, 0)));
    CHECK_FALSE(sd_has_epsilon(a));
    CHECK_FALSE(sd_has_epsilon(sd_concat(sd_star(a, 0), sd_letter('b'))));

    SdPtr e = sd_union(sd_concat(a, sd_letter('b')), sd_letter('b'));
    CHECK(sd_letters(e) == alpha("ab"));
    CHECK(sd_collect_stars(e).empty());
    CHECK(sd_collect_stars(sd_star(e, 2)).size() == 1);
}

TEST_CASE("text syntax round trip", "[sd]") {
    for (const char* text :
         {"0", "'a'", "('a' + 'b')", "('a' . 'b')*{1}", "('a' . 'b')*{1}*{2}",
          "(('a' + 'b') . 'c'*{0})", "0*{0}", "'#300'"}) {
        SdPtr e = parse_sd(text);
        CHECK(print_sd(e) == text);
    }
    // bare letters and n-ary chains are accepted, then print canonically
    CHECK(print_sd(parse_sd("(a . b)")) == "('a' . 'b')");
    CHECK(print_sd(parse_sd("(a + b + c)")) == "(('a' + 'b') + 'c')");
    CHECK(print_sd(parse_sd(" ( 'a' . 'b' ) *{3} ")) == "('a' . 'b')*{3}");

    CHECK_THROWS_AS(parse_sd(""), ParseError);
    CHECK_THROWS_AS(parse_sd("('a'"), ParseError);
    CHECK_THROWS_AS(parse_sd("('a' % 'b')"), ParseError);
    CHECK_THROWS_AS(parse_sd("('a' + 'b' . 'c')"), ParseError);
    CHECK_THROWS_AS(parse_sd("'a'*{}"), ParseError);
    CHECK_THROWS_AS(parse_sd("'a'*"), ParseError);
    CHECK_THROWS_AS(parse_sd("'a' 'b'"), ParseError);
    CHECK_THROWS_AS(parse_sd("'ab'"), ParseError);
    try {
        parse_sd("('a' @");
    } catch (const ParseError& pe) {
        CHECK(pe.position == 5);
    }
}

TEST_CASE("membership through the compiled automaton", "[sd]") {
    SdPtr none = sd_empty();
    for (const Word& w : all_words(alpha("ab"), 4)) CHECK_FALSE(sd_membership(none, w));

    SdPtr abstar = sd_star(sd_concat(sd_letter('a'), sd_letter('b')), 1);
    CHECK(sd_membership(abstar, to_word("abab")));
    CHECK(sd_membership(abstar, Word{}));
    CHECK_FALSE(sd_membership(abstar, to_word("aba")));

    SdPtr full = sd_star(sd_union(sd_letter('a'), sd_letter('b')), 0);
    for (const Word& w : all_words(alpha("ab"), 8)) CHECK(sd_membership(full, w));

    SdPtr eps = sd_star(sd_empty(), 0);
    CHECK(sd_membership(eps, Word{}));
    CHECK_FALSE(sd_membership(eps, to_word("a")));

    // whole-language check against the regex pipeline
    CHECK(equivalent(sd_to_dfa(abstar, alpha("ab")), compile_regex("(ab)*", alpha("ab"))));
    CHECK_THROWS_AS(sd_to_dfa(abstar, alpha("a")), Error);
}

TEST_CASE("prefix code detection", "[sd]") {
    CHECK(is_prefix_code(sd_union(sd_letter('a'), sd_letter('b'))));
    CHECK(is_prefix_code(sd_concat(sd_letter('a'), sd_letter('b'))));
    CHECK_FALSE(is_prefix_code(sd_union(sd_letter('a'), sd_word("ab"))));
    CHECK(is_prefix_code(sd_empty()));
    CHECK_FALSE(is_prefix_code(sd_star(sd_empty(), 0)));  // contains ε
    // all b-runs closed by c: no member extends another
    SdPtr bstarc = sd_concat(sd_star(sd_letter('b'), 0), sd_letter('c'));
    CHECK(is_prefix_code(bstarc));
    CHECK_FALSE(is_prefix_code(sd_star(sd_letter('a'), 0)));
}

TEST_CASE("bounded synchronization delay checking", "[sd]") {
    SdPtr letters = sd_union(sd_letter('a'), sd_letter('b'));
    CHECK(check_sync_delay(letters, 0, 8));

    SdPtr ab = sd_concat(sd_letter('a'), sd_letter('b'));
    auto bad = sync_delay_witness(ab, 0, 10);
    REQUIRE(bad.has_value());
    CHECK(bad->u == to_word("a"));
    CHECK(bad->v.empty());
    CHECK(bad->w == to_word("b"));
    CHECK(check_sync_delay(ab, 1, 10));

    // the bound is part of the answer: the shortest violation has length 2
    CHECK(check_sync_delay(ab, 0, 1));
    CHECK_FALSE(check_sync_delay(ab, 0, 2));

    SdPtr a_ba = sd_union(sd_letter('a'), sd_word("ba"));
    auto stuck = sync_delay_witness(a_ba, 0, 8);
    REQUIRE(stuck.has_value());
    CHECK(stuck->u == to_word("b"));
    CHECK(stuck->v.empty());
    CHECK(stuck->w == to_word("a"));
    CHECK(check_sync_delay(a_ba, 1, 8));

    SdPtr bstarc = sd_concat(sd_star(sd_letter('b'), 0), sd_letter('c'));
    CHECK_FALSE(check_sync_delay(bstarc, 0, 8));
    CHECK(check_sync_delay(bstarc, 1, 8));

    CHECK_THROWS_AS(check_sync_delay(ab, -1, 5), Error);
}

TEST_CASE("star elimination preserves the language", "[sd]") {
    Alphabet ab = alpha("ab");
    struct Case {
        SdPtr e;
        Alphabet alphabet;
    };
    std::vector<Case> cases = {
        {sd_star(sd_letter('a'), 0), alpha("a")},
        {sd_star(sd_letter('a'), 0), ab},
        {sd_star(sd_concat(sd_letter('a'), sd_letter('b')), 1), ab},
        {sd_star(sd_union(sd_letter('a'), sd_word("ba")), 1), ab},
        {sd_star(sd_union(sd_letter('a'), sd_letter('b')), 0), ab},
        {sd_empty(), ab},
        {sd_star(sd_empty(), 0), ab},
        {sd_star(sd_empty(), 2), ab},
        {sd_union(sd_star(sd_concat(sd_letter('a'), sd_letter('b')), 1), sd_letter('a')), ab},
        {sd_concat(sd_star(sd_letter('b'), 0), sd_letter('a')), ab},
        {sd_star(sd_concat(sd_star(sd_letter('b'), 0), sd_letter('c')), 1), alpha("bc")},
    };
    for (const Case& c : cases) {
        SfPtr sf = sd_to_star_free(c.e, c.alphabet);
        CHECK(equivalent(sd_to_dfa(c.e, c.alphabet), sf_to_dfa(sf)));
    }
    CHECK(is_sf_empty(sd_to_star_free(sd_empty(), ab)));
    CHECK_THROWS_AS(sd_to_star_free(sd_letter('z'), ab), Error);
}

TEST_CASE("aperiodicity index recurrences", "[sd]") {
    Alphabet ab = alpha("ab");
    CHECK(aperiodicity_index(sf_full(ab)) == 0);
    CHECK(aperiodicity_index(sf_empty(ab)) == 0);
    CHECK(aperiodicity_index(sf_letter(ab, 'a')) == 2);
    CHECK(aperiodicity_index(sf_concat(sf_letter(ab, 'a'), sf_letter(ab, 'b'))) == 5);
    CHECK(aperiodicity_index(sf_union(sf_letter(ab, 'a'),
                                      sf_concat(sf_letter(ab, 'a'), sf_letter(ab, 'b')))) == 5);
    CHECK(aperiodicity_index(sf_compl(sf_letter(ab, 'a'))) == 2);
    CHECK_THROWS_AS(sf_letter(ab, 'z'), Error);
}

TEST_CASE("pumping stabilizes at the aperiodicity index", "[sd]") {
    Alphabet ab = alpha("ab");
    std::mt19937_64 rng(default_seed() + 3);
    std::vector<Word> parts = all_words(ab, 3);
    for (int trial = 0; trial < 30; ++trial) {
        SfPtr e = random_sf(rng, ab, 4);
        Dfa d = sf_to_dfa(e);
        long long n = aperiodicity_index(e);
        REQUIRE(n < 200);  // our generator stays small; keeps the pump cheap
        for (const Word& p : parts)
            for (const Word& u : parts)
                for (const Word& q : parts) {
                    Word lo = p, hi = p;
                    for (long long i = 0; i < n; ++i) lo.insert(lo.end(), u.begin(), u.end());
                    for (long long i = 0; i < n + 1; ++i) hi.insert(hi.end(), u.begin(), u.end());
                    lo.insert(lo.end(), q.begin(), q.end());
                    hi.insert(hi.end(), q.begin(), q.end());
                    CHECK(d.accepts(lo) == d.accepts(hi));
                }
    }
}

TEST_CASE("builder constructors", "[sd]") {
    SdClassBuilder bld;
    Alphabet ab = alpha("ab");
    SdPtr full = bld.full(ab);
    REQUIRE(full->kind == SdNode::Star);
    CHECK(full->delay == 0);
    for (const Word& w : all_words(ab, 5)) CHECK(sd_membership(full, w));

    SdPtr eps = bld.epsilon(ab);
    CHECK(sd_membership(eps, Word{}));
    CHECK_FALSE(sd_membership(eps, to_word("a")));

    SdPtr bplus = sd_concat(sd_letter('b'), sd_star(sd_letter('b'), 0));
    SdPtr pre = bld.prepend_c(bplus, 'c', bld.epsilon(alpha("b")), alpha("bc"));
    CHECK(sd_membership(pre, to_word("bc")));
    CHECK(sd_membership(pre, to_word("bbc")));
    CHECK_FALSE(sd_membership(pre, to_word("c")));
    CHECK_FALSE(sd_membership(pre, to_word("bcb")));

    CHECK(bld.lift_alphabet(bplus, alpha("abc")) == bplus);
    CHECK(sd_membership(bld.concat_into_c_side(bplus, pre, 'c'), to_word("bbbc")));
}

TEST_CASE("builder: block-decomposition preimage", "[sd]") {
    SdClassBuilder bld;
    Alphabet a = alpha("bc"), b = alpha("b");
    Letter c = 'c';
    Morphism g = make_morphism(b, {1}, tst::monoid_u1());
    SigmaContext<SdPtr> ctx;
    ctx.base_alphabet = a;
    ctx.c = c;
    ctx.derived = {first_synthetic_letter, first_synthetic_letter + 1};
    ctx.key = "test-u1";
    SdPtr g0 = bld.epsilon(b);
    SdPtr g1 = sd_concat(sd_letter('b'), sd_star(sd_letter('b'), 0));
    ctx.g_inverse = [&](Letter t) { return t == ctx.derived[0] ? g0 : g1; };

    // blocks run body-then-c; a word outside (B*c)* matches nothing
    auto expected = [&](const SdPtr& k, const Word& w) {
        if (!w.empty() && w.back() != c) return false;
        Word derived_word, body;
        for (Letter x : w) {
            if (x == c) {
                derived_word.push_back(ctx.derived[g.eval(body)]);
                body.clear();
            } else {
                body.push_back(x);
            }
        }
        return sd_membership(k, derived_word);
    };

    std::vector<SdPtr> shapes = {
        sd_empty(),
        sd_letter(ctx.derived[0]),
        sd_letter(ctx.derived[1]),
        sd_concat(sd_letter(ctx.derived[1]), sd_letter(ctx.derived[0])),
        sd_union(sd_letter(ctx.derived[0]), sd_letter(ctx.derived[1])),
        sd_star(sd_letter(ctx.derived[1]), 0),
        sd_star(sd_union(sd_letter(ctx.derived[0]), sd_letter(ctx.derived[1])), 0),
        sd_concat(sd_star(sd_letter(ctx.derived[0]), 0), sd_letter(ctx.derived[1])),
    };
    for (const SdPtr& k : shapes) {
        SdPtr s = bld.sigma_preimage(k, ctx);
        for (const Word& w : all_words(a, 7)) CHECK(sd_membership(s, w) == expected(k, w));
    }

    // the pullback of a starred code claims one more unit of delay
    SdPtr pulled = bld.sigma_preimage(sd_star(sd_letter(ctx.derived[1]), 0), ctx);
    REQUIRE(pulled->kind == SdNode::Star);
    CHECK(pulled->delay == 1);
    CHECK(is_prefix_code(pulled->a));
    CHECK(check_sync_delay(pulled->a, 1, 9));

    CHECK_THROWS_AS(bld.sigma_preimage(sd_letter('b'), ctx), Error);
}

TEST_CASE("synthesized expressions match their automata", "[sd]") {
    {
        // only-b words: the synthesis bottoms out at the one-letter full case
        Dfa d = compile_regex("b*", alpha("ab"));
        SdSynthesis out = synth_sd(d);
        CHECK(out.accepts_epsilon);
        REQUIRE(out.expr->kind == SdNode::Star);
        CHECK(out.expr->delay == 0);
        REQUIRE(out.expr->a->kind == SdNode::Chr);
        CHECK(out.expr->a->letter == 'b');
    }
    {
        Dfa d = tst::dfa_contains('a', "ab");
        SdSynthesis out = synth_sd(d);
        CHECK_FALSE(out.accepts_epsilon);
        for (const Word& w : all_words(alpha("ab"), 8))
            CHECK(sd_membership(out.expr, w) == d.accepts(w));
    }
    {
        Dfa d = tst::dfa_ab_star();
        SdSynthesis out = synth_sd(d);
        CHECK(out.accepts_epsilon);
        CHECK(out.stats.memo_hits > 0);
        for (const Word& w : all_words(alpha("ab"), 10))
            CHECK(sd_membership(out.expr, w) == d.accepts(w));
        for (const SdPtr& star : sd_collect_stars(out.expr)) {
            CHECK(is_prefix_code(star->a));
            CHECK(check_sync_delay(star->a, star->delay, 3 * (star->delay + 2)));
        }
    }
    {
        // morphism input: image 1 absorbs, so the preimage of 1 is contains-a
        Morphism h = make_morphism(alpha("ab"), {1, 0}, tst::monoid_u1());
        SdSynthesis out = synth_sd(h, {1});
        Dfa d = tst::dfa_contains('a', "ab");
        for (const Word& w : all_words(alpha("ab"), 8))
            CHECK(sd_membership(out.expr, w) == d.accepts(w));
    }
}

TEST_CASE("sd synthesis rejects group languages", "[sd]") {
    CHECK_THROWS_AS(synth_sd(tst::dfa_count_mod('a', 3, 0, "ab")), NonAperiodicError);
}
