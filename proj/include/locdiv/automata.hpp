/* Complete DFAs with canonical numbering, subset construction, Moore
 * minimization, boolean combinations, a small regular-expression frontend,
 * and transition monoids. */
#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locdiv/core.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

struct Dfa {
    Alphabet alphabet;
    int states = 1;
    int initial = 0;
    std::vector<char> accepting{0};
    std::vector<int> delta{};  // states * |alphabet|, row-major

    int k() const { return static_cast<int>(alphabet.size()); }
    int step(int s, int li) const { return delta[s * k() + li]; }

    int letter_index(Letter a) const {
        for (int i = 0; i < k(); ++i)
            if (alphabet[i] == a) return i;
        return -1;
    }

    // Words with letters outside the alphabet are not in A* and are rejected.
    bool accepts(const Word& w) const {
        int s = initial;
        for (Letter a : w) {
            int li = letter_index(a);
            if (li < 0) return false;
            s = step(s, li);
        }
        return accepting[s];
    }
};

inline void validate_dfa(const Dfa& d) {
    if (d.states < 1) throw Error("automaton needs at least one state");
    if (d.initial < 0 || d.initial >= d.states) throw Error("initial state out of range");
    if (static_cast<int>(d.accepting.size()) != d.states)
        throw Error("accepting vector has wrong length");
    if (static_cast<int>(d.delta.size()) != d.states * d.k())
        throw Error("transition table has " + std::to_string(d.delta.size()) +
                    " entries, expected " + std::to_string(d.states * d.k()));
    for (int v : d.delta)
        if (v < 0 || v >= d.states)
            throw Error("transition target " + std::to_string(v) + " out of range");
    for (std::size_t i = 0; i < d.alphabet.size(); ++i)
        for (std::size_t j = i + 1; j < d.alphabet.size(); ++j)
            if (d.alphabet[i] == d.alphabet[j])
                throw Error("duplicate letter " + letter_text(d.alphabet[i]) + " in alphabet");
}

// Renumbers states in breadth-first order from the initial state (letters in
// alphabet order) and drops unreachable states.  Two structurally equal DFAs
// are byte-identical after this.
inline Dfa canonicalize(const Dfa& d) {
    std::vector<int> order;
    std::vector<int> newid(d.states, -1);
    order.push_back(d.initial);
    newid[d.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int li = 0; li < d.k(); ++li) {
            int t = d.step(order[i], li);
            if (newid[t] < 0) {
                newid[t] = static_cast<int>(order.size());
                order.push_back(t);
            }
        }
    Dfa out;
    out.alphabet = d.alphabet;
    out.states = static_cast<int>(order.size());
    out.initial = 0;
    out.accepting.resize(out.states);
    out.delta.resize(out.states * d.k());
    for (int s = 0; s < out.states; ++s) {
        out.accepting[s] = d.accepting[order[s]];
        for (int li = 0; li < d.k(); ++li) out.delta[s * d.k() + li] = newid[d.step(order[s], li)];
    }
    return out;
}

// Moore partition refinement on the reachable part, then canonical numbering.
inline Dfa minimize(const Dfa& d) {
    Dfa r = canonicalize(d);
    std::vector<int> cls(r.states);
    for (int s = 0; s < r.states; ++s) cls[s] = r.accepting[s] ? 1 : 0;
    for (;;) {
        std::map<std::vector<int>, int> sig_id;
        std::vector<int> next(r.states);
        for (int s = 0; s < r.states; ++s) {
            std::vector<int> sig;
            sig.reserve(r.k() + 1);
            sig.push_back(cls[s]);
            for (int li = 0; li < r.k(); ++li) sig.push_back(cls[r.step(s, li)]);
            auto [it, fresh] = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
            next[s] = it->second;
            (void)fresh;
        }
        if (next == cls) break;
        cls = std::move(next);
    }
    int n = 0;
    for (int c : cls) n = std::max(n, c + 1);
    Dfa q;
    q.alphabet = r.alphabet;
    q.states = n;
    q.initial = cls[r.initial];
    q.accepting.assign(n, 0);
    q.delta.assign(n * r.k(), 0);
    for (int s = 0; s < r.states; ++s) {
        q.accepting[cls[s]] = r.accepting[s];
        for (int li = 0; li < r.k(); ++li) q.delta[cls[s] * r.k() + li] = cls[r.step(s, li)];
    }
    return canonicalize(q);
}

inline void require_same_alphabet(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet)
        throw Error("automata have different alphabets; refusing boolean combination");
}

// Reachable product; the combiner decides acceptance from the two components.
template <typename F>
Dfa product(const Dfa& a, const Dfa& b, F&& accept_if) {
    require_same_alphabet(a, b);
    int k = a.k();
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> pairs;
    auto get = [&](int x, int y) {
        auto [it, fresh] = id.emplace(std::make_pair(x, y), static_cast<int>(pairs.size()));
        if (fresh) pairs.emplace_back(x, y);
        return it->second;
    };
    get(a.initial, b.initial);
    Dfa out;
    out.alphabet = a.alphabet;
    out.initial = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [x, y] = pairs[i];
        for (int li = 0; li < k; ++li) {
            int t = get(a.step(x, li), b.step(y, li));
            (void)t;
        }
    }
    out.states = static_cast<int>(pairs.size());
    out.accepting.resize(out.states);
    out.delta.resize(out.states * k);
    for (int s = 0; s < out.states; ++s) {
        auto [x, y] = pairs[s];
        out.accepting[s] = accept_if(static_cast<bool>(a.accepting[x]), static_cast<bool>(b.accepting[y]));
        for (int li = 0; li < k; ++li)
            out.delta[s * k + li] = id.at({a.step(x, li), b.step(y, li)});
    }
    return out;
}

inline Dfa complement(const Dfa& d) {
    Dfa out = d;
    for (auto& f : out.accepting) f = !f;
    return out;
}

inline Dfa intersect(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && y; });
}

inline Dfa unite(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x || y; });
}

inline Dfa difference(const Dfa& a, const Dfa& b) {
    return product(a, b, [](bool x, bool y) { return x && !y; });
}

inline bool is_empty(const Dfa& d) {
    std::vector<char> seen(d.states, 0);
    std::vector<int> stack{d.initial};
    seen[d.initial] = 1;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        if (d.accepting[s]) return false;
        for (int li = 0; li < d.k(); ++li) {
            int t = d.step(s, li);
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return true;
}

inline bool is_subset(const Dfa& a, const Dfa& b) { return is_empty(difference(a, b)); }

inline bool equivalent(const Dfa& a, const Dfa& b) {
    return is_subset(a, b) && is_subset(b, a);
}

// Accepted words of length <= maxlen in length-lexicographic order (letters
// ordered as in the alphabet).
inline std::vector<Word> enumerate_accepted(const Dfa& d, int maxlen) {
    std::vector<Word> out;
    Word cur;
    auto go = [&](auto&& self, int state, int remaining) -> void {
        if (remaining == 0) {
            if (d.accepting[state]) out.push_back(cur);
            return;
        }
        for (int li = 0; li < d.k(); ++li) {
            cur.push_back(d.alphabet[li]);
            self(self, d.step(state, li), remaining - 1);
            cur.pop_back();
        }
    };
    for (int len = 0; len <= maxlen; ++len) go(go, d.initial, len);
    return out;
}

/* Nondeterministic automata are internal glue for concatenation, star and
 * the regex frontend; letter index -1 marks an epsilon edge. */
struct Nfa {
    Alphabet alphabet;
    int states = 0;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<std::vector<std::pair<int, int>>> trans;  // (letter index | -1, target)

    int add_state() {
        accepting.push_back(0);
        trans.emplace_back();
        return states++;
    }
};

inline void eps_closure(const Nfa& n, std::vector<int>& set) {
    std::vector<char> in(n.states, 0);
    for (int s : set) in[s] = 1;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (auto [li, t] : n.trans[set[i]])
            if (li < 0 && !in[t]) {
                in[t] = 1;
                set.push_back(t);
            }
    std::sort(set.begin(), set.end());
}

// Subset construction; the empty subset acts as an explicit sink, so the
// result is always complete.
inline Dfa determinize(const Nfa& n) {
    int k = static_cast<int>(n.alphabet.size());
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> subsets;
    auto get = [&](std::vector<int> set) {
        auto [it, fresh] = id.emplace(std::move(set), static_cast<int>(subsets.size()));
        if (fresh) subsets.push_back(it->first);
        return it->second;
    };
    std::vector<int> start{n.initial};
    eps_closure(n, start);
    get(std::move(start));
    Dfa out;
    out.alphabet = n.alphabet;
    out.initial = 0;
    std::vector<int> delta_rows;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (int li = 0; li < k; ++li) {
            std::vector<int> next;
            for (int s : subsets[i])
                for (auto [l, t] : n.trans[s])
                    if (l == li) next.push_back(t);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            eps_closure(n, next);
            delta_rows.push_back(get(std::move(next)));
        }
    }
    out.states = static_cast<int>(subsets.size());
    out.delta = std::move(delta_rows);
    out.accepting.assign(out.states, 0);
    for (int s = 0; s < out.states; ++s)
        for (int q : subsets[s])
            if (n.accepting[q]) out.accepting[s] = 1;
    return out;
}

inline Nfa dfa_to_nfa(const Dfa& d) {
    Nfa n;
    n.alphabet = d.alphabet;
    for (int s = 0; s < d.states; ++s) n.add_state();
    n.initial = d.initial;
    for (int s = 0; s < d.states; ++s) {
        n.accepting[s] = d.accepting[s];
        for (int li = 0; li < d.k(); ++li) n.trans[s].emplace_back(li, d.step(s, li));
    }
    return n;
}

namespace detail {
// Copies src into dst with an offset; returns (initial, accepting list).
inline std::pair<int, std::vector<int>> splice(Nfa& dst, const Nfa& src) {
    int base = dst.states;
    for (int s = 0; s < src.states; ++s) {
        dst.add_state();
        for (auto [li, t] : src.trans[s]) dst.trans[base + s].emplace_back(li, base + t);
    }
    std::vector<int> acc;
    for (int s = 0; s < src.states; ++s)
        if (src.accepting[s]) acc.push_back(base + s);
    return {base + src.initial, acc};
}
}  // namespace detail

inline Dfa dfa_concat(const Dfa& a, const Dfa& b) {
    require_same_alphabet(a, b);
    Nfa n;
    n.alphabet = a.alphabet;
    auto [ia, acca] = detail::splice(n, dfa_to_nfa(a));
    auto [ib, accb] = detail::splice(n, dfa_to_nfa(b));
    n.initial = ia;
    for (int s : acca) n.trans[s].emplace_back(-1, ib);
    for (int s : accb) n.accepting[s] = 1;
    return minimize(determinize(n));
}

inline Dfa dfa_star(const Dfa& a) {
    Nfa n;
    n.alphabet = a.alphabet;
    int start = n.add_state();
    n.accepting[start] = 1;
    auto [ia, acca] = detail::splice(n, dfa_to_nfa(a));
    n.initial = start;
    n.trans[start].emplace_back(-1, ia);
    for (int s : acca) {
        n.accepting[s] = 1;
        n.trans[s].emplace_back(-1, ia);
    }
    return minimize(determinize(n));
}

inline Dfa dfa_empty(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.states = 1;
    d.initial = 0;
    d.accepting = {0};
    d.delta.assign(alpha.size(), 0);
    return d;
}

inline Dfa dfa_full(const Alphabet& alpha) {
    Dfa d = dfa_empty(alpha);
    d.accepting = {1};
    return d;
}

inline Dfa dfa_epsilon(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.states = 2;
    d.initial = 0;
    d.accepting = {1, 0};
    d.delta.assign(2 * alpha.size(), 1);
    if (alpha.empty()) d = Dfa{alpha, 1, 0, {1}, {}};
    return d;
}

inline Dfa dfa_letter(const Alphabet& alpha, Letter a) {
    int k = static_cast<int>(alpha.size());
    Dfa d;
    d.alphabet = alpha;
    d.states = 3;  // start, accept, sink
    d.initial = 0;
    d.accepting = {0, 1, 0};
    d.delta.assign(3 * k, 2);
    for (int li = 0; li < k; ++li)
        if (alpha[li] == a) d.delta[li] = 1;
    return d;
}

/* Regular expressions: expr := term ('+' term)*; term := factor+;
 * factor := atom '*'*; atom := letter | '(' expr ')' | '0' | '1'. */
struct RegexNode;
using RegexPtr = std::shared_ptr<const RegexNode>;

struct RegexNode {
    enum Kind { Empty, Epsilon, Chr, Alt, Cat, Star };
    Kind kind;
    Letter letter = 0;
    RegexPtr a, b;
};

inline RegexPtr regex_node(RegexNode::Kind k, Letter l = 0, RegexPtr a = nullptr,
                           RegexPtr b = nullptr) {
    return std::make_shared<RegexNode>(RegexNode{k, l, std::move(a), std::move(b)});
}

namespace detail {
struct RegexParser {
    const std::string& text;
    const Alphabet& alphabet;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_atom_start() {
        skip_ws();
        if (pos >= text.size()) return false;
        char c = text[pos];
        return c == '(' || c == '0' || c == '1' ||
               contains(alphabet, static_cast<Letter>(static_cast<unsigned char>(c)));
    }

    RegexPtr parse_expr() {
        RegexPtr e = parse_term();
        for (;;) {
            skip_ws();
            if (pos < text.size() && text[pos] == '+') {
                ++pos;
                e = regex_node(RegexNode::Alt, 0, e, parse_term());
            } else {
                return e;
            }
        }
    }

    RegexPtr parse_term() {
        if (!peek_atom_start()) throw ParseError("expected a regex atom", pos);
        RegexPtr e = parse_factor();
        while (peek_atom_start()) e = regex_node(RegexNode::Cat, 0, e, parse_factor());
        return e;
    }

    RegexPtr parse_factor() {
        RegexPtr e = parse_atom();
        for (;;) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                e = regex_node(RegexNode::Star, 0, e);
            } else {
                return e;
            }
        }
    }

    RegexPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of regex", pos);
        char c = text[pos];
        if (c == '0') {
            ++pos;
            return regex_node(RegexNode::Empty);
        }
        if (c == '1') {
            ++pos;
            return regex_node(RegexNode::Epsilon);
        }
        if (c == '(') {
            ++pos;
            RegexPtr e = parse_expr();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')')
                throw ParseError("missing closing parenthesis", pos);
            ++pos;
            return e;
        }
        Letter l = static_cast<Letter>(static_cast<unsigned char>(c));
        if (!contains(alphabet, l))
            throw ParseError("letter '" + std::string(1, c) + "' not in alphabet", pos);
        ++pos;
        return regex_node(RegexNode::Chr, l);
    }
};
}  // namespace detail

inline RegexPtr parse_regex(const std::string& text, const Alphabet& alphabet) {
    for (Letter a : alphabet)
        if (a == '0' || a == '1' || a == '+' || a == '*' || a == '(' || a == ')')
            throw Error("alphabet letter " + letter_text(a) + " collides with regex syntax");
    detail::RegexParser p{text, alphabet};
    RegexPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing characters after regex", p.pos);
    return e;
}

inline std::string print_regex(const RegexPtr& e) {
    switch (e->kind) {
        case RegexNode::Empty: return "0";
        case RegexNode::Epsilon: return "1";
        case RegexNode::Chr: return letter_text(e->letter);
        case RegexNode::Alt: return "(" + print_regex(e->a) + "+" + print_regex(e->b) + ")";
        case RegexNode::Cat: return "(" + print_regex(e->a) + print_regex(e->b) + ")";
        case RegexNode::Star: return print_regex(e->a) + "*";
    }
    throw Error("internal: bad regex node");
}

namespace detail {
// Thompson construction: returns (initial, single accepting state).
inline std::pair<int, int> regex_thompson(Nfa& n, const RegexPtr& e) {
    int s = n.add_state();
    int t = n.add_state();
    switch (e->kind) {
        case RegexNode::Empty: break;
        case RegexNode::Epsilon: n.trans[s].emplace_back(-1, t); break;
        case RegexNode::Chr: {
            int li = -1;
            for (std::size_t i = 0; i < n.alphabet.size(); ++i)
                if (n.alphabet[i] == e->letter) li = static_cast<int>(i);
            if (li < 0) throw Error("regex letter outside alphabet");
            n.trans[s].emplace_back(li, t);
            break;
        }
        case RegexNode::Alt: {
            auto [sa, ta] = regex_thompson(n, e->a);
            auto [sb, tb] = regex_thompson(n, e->b);
            n.trans[s].emplace_back(-1, sa);
            n.trans[s].emplace_back(-1, sb);
            n.trans[ta].emplace_back(-1, t);
            n.trans[tb].emplace_back(-1, t);
            break;
        }
        case RegexNode::Cat: {
            auto [sa, ta] = regex_thompson(n, e->a);
            auto [sb, tb] = regex_thompson(n, e->b);
            n.trans[s].emplace_back(-1, sa);
            n.trans[ta].emplace_back(-1, sb);
            n.trans[tb].emplace_back(-1, t);
            break;
        }
        case RegexNode::Star: {
            auto [sa, ta] = regex_thompson(n, e->a);
            n.trans[s].emplace_back(-1, sa);
            n.trans[s].emplace_back(-1, t);
            n.trans[ta].emplace_back(-1, sa);
            n.trans[ta].emplace_back(-1, t);
            break;
        }
    }
    return {s, t};
}
}  // namespace detail

inline Dfa compile_regex(const RegexPtr& e, const Alphabet& alphabet) {
    Nfa n;
    n.alphabet = alphabet;
    auto [s, t] = detail::regex_thompson(n, e);
    n.initial = s;
    n.accepting[t] = 1;
    return minimize(determinize(n));
}

inline Dfa compile_regex(const std::string& text, const Alphabet& alphabet) {
    return compile_regex(parse_regex(text, alphabet), alphabet);
}

/* Transition monoid of a complete DFA: transformations of the state set
 * induced by words, generated BFS-first from the identity so numbering is
 * canonical. */
struct TransitionMonoid {
    MonoidTable monoid;
    Morphism morphism;
    std::vector<std::vector<int>> transformation;  // element -> state map
};

inline TransitionMonoid transition_monoid(const Dfa& d) {
    validate_dfa(d);
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> elems;
    auto get = [&](std::vector<int> t) {
        auto [it, fresh] = id.emplace(std::move(t), static_cast<int>(elems.size()));
        if (fresh) elems.push_back(it->first);
        return it->second;
    };
    std::vector<int> ident(d.states);
    for (int s = 0; s < d.states; ++s) ident[s] = s;
    get(std::move(ident));
    std::vector<std::vector<int>> gens;
    std::vector<int> gen_ids;
    for (int li = 0; li < d.k(); ++li) {
        std::vector<int> t(d.states);
        for (int s = 0; s < d.states; ++s) t[s] = d.step(s, li);
        gens.push_back(t);
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            std::vector<int> comp(d.states);
            for (int s = 0; s < d.states; ++s) comp[s] = g[elems[i][s]];
            get(std::move(comp));
        }
    for (const auto& g : gens) gen_ids.push_back(id.at(g));
    int n = static_cast<int>(elems.size());
    std::vector<int> table(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<int> comp(d.states);
            for (int s = 0; s < d.states; ++s) comp[s] = elems[y][elems[x][s]];
            table[x * n + y] = id.at(comp);
        }
    TransitionMonoid tm;
    tm.monoid = make_monoid(n, 0, std::move(table));
    tm.morphism = make_morphism(d.alphabet, gen_ids, tm.monoid);
    tm.transformation = std::move(elems);
    return tm;
}

}  // namespace locdiv
