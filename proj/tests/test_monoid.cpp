#include "common.hpp"

using namespace locdiv;
using tst::monoid_counter;
using tst::monoid_u1;
using tst::monoid_z3;

TEST_CASE("table validation rejects malformed input", "[monoid]") {
    CHECK_THROWS_AS(make_monoid(0, 0, {}), Error);
    CHECK_THROWS_AS(make_monoid(2, 2, {0, 1, 1, 0}), Error);
    CHECK_THROWS_AS(make_monoid(2, 0, {0, 1, 1}), Error);
    CHECK_THROWS_AS(make_monoid(2, 0, {0, 1, 1, 7}), Error);
    // (1*1)*1 = 2*1 = 1 but 1*(1*1) = 1*2 = 2.
    CHECK_THROWS_WITH(make_monoid(3, 0, {0, 1, 2, 1, 2, 2, 2, 1, 0}),
                      Catch::Matchers::ContainsSubstring("not associative"));
}

TEST_CASE("idempotents, powers, cycle structure", "[monoid]") {
    MonoidTable u1 = monoid_u1();
    MonoidTable z3 = monoid_z3();
    MonoidTable c3 = monoid_counter(3);

    CHECK(is_idempotent(u1, 0));
    CHECK(is_idempotent(u1, 1));
    CHECK_FALSE(is_idempotent(z3, 1));

    CHECK(element_power(z3, 1, 5) == 2);
    CHECK(element_power(z3, 1, 3) == 0);
    CHECK(element_power(c3, 1, 100) == 3);
    CHECK_THROWS_AS(element_power(z3, 1, 0), Error);

    CHECK(power_index_period(z3, 1) == std::pair<int, int>{1, 3});
    CHECK(power_index_period(c3, 1) == std::pair<int, int>{3, 1});
    CHECK(power_index_period(u1, 1) == std::pair<int, int>{1, 1});

    CHECK(idempotent_power(u1) == 1);
    CHECK(idempotent_power(z3) == 3);
    CHECK(idempotent_power(c3) == 3);
}

TEST_CASE("aperiodicity and units", "[monoid]") {
    CHECK(is_aperiodic(monoid_u1()));
    CHECK(is_aperiodic(monoid_counter(5)));
    CHECK_FALSE(is_aperiodic(monoid_z3()));
    CHECK(aperiodicity_witness(monoid_z3()) == 1);

    MonoidTable z3 = monoid_z3();
    for (int x = 0; x < 3; ++x) CHECK(is_unit(z3, x));
    CHECK(is_unit(monoid_u1(), 0));
    CHECK_FALSE(is_unit(monoid_u1(), 1));
    // In an aperiodic monoid only the identity is a unit.
    MonoidTable c4 = monoid_counter(4);
    for (int x = 1; x < c4.size; ++x) CHECK_FALSE(is_unit(c4, x));
}

TEST_CASE("morphisms evaluate words through the table", "[monoid]") {
    Morphism h = make_morphism(tst::alpha("ab"), {1, 0}, monoid_z3());
    CHECK(h.eval(to_word("aab")) == 2);
    CHECK(h.eval(to_word("aaab")) == 0);
    CHECK(h.eval({}) == 0);
    CHECK(h.image('a') == 1);
    CHECK_THROWS_AS(h.image('c'), Error);
    CHECK_THROWS_AS(make_morphism(tst::alpha("aa"), {0, 0}, monoid_z3()), Error);
    CHECK_THROWS_AS(make_morphism(tst::alpha("ab"), {0, 3}, monoid_z3()), Error);

    CHECK(submonoid_image(h, tst::alpha("b")) == std::vector<int>{0});
    CHECK(submonoid_image(h, tst::alpha("ab")) == std::vector<int>{0, 1, 2});
    Morphism g = make_morphism(tst::alpha("ab"), {1, 0}, monoid_counter(2));
    CHECK(submonoid_image(g, tst::alpha("a")) == std::vector<int>{0, 1, 2});
}

TEST_CASE("memo keys separate structures", "[monoid]") {
    CHECK(monoid_key(monoid_u1()) == monoid_key(monoid_u1()));
    CHECK(monoid_key(monoid_u1()) != monoid_key(monoid_z3()));
    Morphism h1 = make_morphism(tst::alpha("ab"), {1, 0}, monoid_z3());
    Morphism h2 = make_morphism(tst::alpha("ab"), {0, 1}, monoid_z3());
    CHECK(morphism_key(h1) != morphism_key(h2));
    CHECK(morphism_key(h1) == morphism_key(make_morphism(tst::alpha("ab"), {1, 0}, monoid_z3())));
}

TEST_CASE("local divisor at a group element is the whole monoid", "[monoid]") {
    MonoidTable z3 = monoid_z3();
    LocalDivisor d = local_divisor(z3, 1);
    REQUIRE(d.carrier == std::vector<int>{0, 1, 2});
    CHECK(d.quotient.size == 3);
    CHECK(d.quotient.identity == d.to_quotient[1]);
    CHECK_FALSE(is_aperiodic(d.quotient));
    for (int x = 0; x < 3; ++x) CHECK(is_unit(d.quotient, x));
}

TEST_CASE("local divisor shrinks at a non-unit", "[monoid]") {
    MonoidTable u1 = monoid_u1();
    LocalDivisor d = local_divisor(u1, 1);
    CHECK(d.carrier == std::vector<int>{1});
    CHECK(d.quotient.size == 1);
    CHECK(d.to_quotient[0] == -1);

    MonoidTable c2 = monoid_counter(2);
    LocalDivisor e = local_divisor(c2, 1);
    CHECK(e.carrier == std::vector<int>{1, 2});
    CHECK(e.quotient.identity == e.to_quotient[1]);
    CHECK(is_aperiodic(e.quotient));
    CHECK(e.quotient.mul(e.to_quotient[2], e.to_quotient[2]) == e.to_quotient[2]);
}

TEST_CASE("local divisor product agrees with (xc)(cy) = xcy", "[monoid]") {
    for (const MonoidTable& m : {monoid_u1(), monoid_z3(), monoid_counter(3)}) {
        for (int c = 0; c < m.size; ++c) {
            LocalDivisor d = local_divisor(m, c);
            for (int x = 0; x < m.size; ++x)
                for (int y = 0; y < m.size; ++y) {
                    int xc = m.mul(x, c), cy = m.mul(c, y);
                    if (d.to_quotient[xc] < 0 || d.to_quotient[cy] < 0) continue;
                    int lhs = d.quotient.mul(d.to_quotient[xc], d.to_quotient[cy]);
                    CHECK(lhs == d.to_quotient[m.mul(xc, y)]);
                }
        }
    }
}

TEST_CASE("small carrier variant stays inside the full one", "[monoid]") {
    for (const MonoidTable& m : {monoid_u1(), monoid_z3(), monoid_counter(3)}) {
        for (int c = 0; c < m.size; ++c) {
            LocalDivisor full = local_divisor(m, c);
            LocalDivisor small = small_local_divisor(m, c);
            CHECK(small.carrier.size() <= full.carrier.size());
            for (int e : small.carrier) CHECK(full.to_quotient[e] >= 0);
            // Products agree where both are defined.
            for (int z1 : small.carrier)
                for (int z2 : small.carrier) {
                    int p_small = small.carrier[small.quotient.mul(small.to_quotient[z1],
                                                                   small.to_quotient[z2])];
                    int p_full =
                        full.carrier[full.quotient.mul(full.to_quotient[z1], full.to_quotient[z2])];
                    CHECK(p_small == p_full);
                }
        }
    }
}
