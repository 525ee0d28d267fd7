/* Shared fixtures: small monoids, small automata, testdata paths. */
#pragma once

#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "locdiv/automata.hpp"
#include "locdiv/core.hpp"
#include "locdiv/io.hpp"
#include "locdiv/monoid.hpp"

namespace tst {

using namespace locdiv;

inline std::string testdata(const std::string& name) {
    return std::string(LOCDIV_TESTDATA_DIR) + "/" + name;
}

inline Alphabet alpha(const std::string& s) { return to_word(s); }

// {1, z} with z absorbing: the smallest aperiodic monoid that is not a group.
inline MonoidTable monoid_u1() { return make_monoid(2, 0, {0, 1, 1, 1}); }

// Cyclic group of order 3: the standard non-aperiodic example.
inline MonoidTable monoid_z3() { return make_monoid(3, 0, {0, 1, 2, 1, 2, 0, 2, 0, 1}); }

// x*y = min(x+y, cap): a chain of counters, aperiodic for every cap >= 0.
inline MonoidTable monoid_counter(int cap) {
    int n = cap + 1;
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x * n + y] = std::min(x + y, cap);
    return make_monoid(n, 0, std::move(t));
}

// Words over alphabet_text that contain ch at least once.
inline Dfa dfa_contains(char ch, const std::string& alphabet_text) {
    Alphabet a = alpha(alphabet_text);
    Dfa d;
    d.alphabet = a;
    d.states = 2;
    d.initial = 0;
    d.accepting = {0, 1};
    d.delta.resize(2 * a.size());
    for (int li = 0; li < d.k(); ++li) {
        d.delta[li] = (a[li] == static_cast<Letter>(ch)) ? 1 : 0;
        d.delta[d.k() + li] = 1;
    }
    validate_dfa(d);
    return d;
}

// (ab)* over {a, b}.
inline Dfa dfa_ab_star() { return compile_regex("(ab)*", alpha("ab")); }

// Number of occurrences of ch congruent to residue mod m.
inline Dfa dfa_count_mod(char ch, int m, int residue, const std::string& alphabet_text) {
    Alphabet a = alpha(alphabet_text);
    Dfa d;
    d.alphabet = a;
    d.states = m;
    d.initial = 0;
    d.accepting.assign(m, 0);
    d.accepting[residue] = 1;
    d.delta.resize(static_cast<std::size_t>(m) * a.size());
    for (int s = 0; s < m; ++s)
        for (int li = 0; li < d.k(); ++li)
            d.delta[s * d.k() + li] = (a[li] == static_cast<Letter>(ch)) ? (s + 1) % m : s;
    validate_dfa(d);
    return d;
}

}  // namespace tst
