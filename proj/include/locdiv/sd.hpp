#pragma once
// Rational expressions whose stars are restricted to prefix codes with a
// bounded synchronization delay.  Each star node carries the delay it claims;
// checkers validate the claims, a complement-based translation eliminates the
// stars, and a right-sided builder plugs the whole class into the recursive
// synthesizer.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "core.hpp"
#include "localizer.hpp"
#include "monoid.hpp"

namespace locdiv {

/* ---------- expressions ---------- */

struct SdNode;
using SdPtr = std::shared_ptr<const SdNode>;

struct SdNode {
    enum Kind { Empty, Chr, Union, Concat, Star };
    Kind kind;
    Letter letter = 0;  // Chr
    SdPtr a, b;
    int delay = 0;  // Star: claimed synchronization delay of the code `a`
};

namespace detail {
inline SdPtr sd_node(SdNode::Kind kind, Letter x, SdPtr a, SdPtr b, int delay) {
    return std::make_shared<const SdNode>(SdNode{kind, x, std::move(a), std::move(b), delay});
}
}  // namespace detail

inline bool is_sd_empty(const SdPtr& e) { return e->kind == SdNode::Empty; }

// The canonical way to write {ε}: a starred empty code.
inline bool is_sd_epsilon(const SdPtr& e) {
    return e->kind == SdNode::Star && is_sd_empty(e->a);
}

inline SdPtr sd_empty() {
    static const SdPtr e = detail::sd_node(SdNode::Empty, 0, nullptr, nullptr, 0);
    return e;
}

inline SdPtr sd_letter(Letter x) { return detail::sd_node(SdNode::Chr, x, nullptr, nullptr, 0); }

inline SdPtr sd_union(const SdPtr& x, const SdPtr& y) {
    if (is_sd_empty(x)) return y;
    if (is_sd_empty(y) || x == y) return x;
    return detail::sd_node(SdNode::Union, 0, x, y, 0);
}

inline SdPtr sd_concat(const SdPtr& x, const SdPtr& y) {
    if (is_sd_empty(x) || is_sd_empty(y)) return sd_empty();
    if (is_sd_epsilon(x)) return y;
    if (is_sd_epsilon(y)) return x;
    return detail::sd_node(SdNode::Concat, 0, x, y, 0);
}

inline SdPtr sd_star(const SdPtr& child, int delay) {
    if (delay < 0) throw Error("negative delay");
    return detail::sd_node(SdNode::Star, 0, child, nullptr, delay);
}

inline bool sd_has_epsilon(const SdPtr& e) {
    std::map<const SdNode*, bool> done;
    auto rec = [&](auto&& self, const SdPtr& n) -> bool {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        bool r = false;
        switch (n->kind) {
            case SdNode::Empty:
            case SdNode::Chr: r = false; break;
            case SdNode::Union: r = self(self, n->a) || self(self, n->b); break;
            case SdNode::Concat: r = self(self, n->a) && self(self, n->b); break;
            case SdNode::Star: r = true; break;
        }
        done[n.get()] = r;
        return r;
    };
    return rec(rec, e);
}

// Sorted set of letters that occur in the expression.
inline Alphabet sd_letters(const SdPtr& e) {
    std::set<Letter> seen;
    std::set<const SdNode*> visited;
    auto rec = [&](auto&& self, const SdPtr& n) -> void {
        if (!visited.insert(n.get()).second) return;
        if (n->kind == SdNode::Chr) seen.insert(n->letter);
        if (n->a) self(self, n->a);
        if (n->b) self(self, n->b);
    };
    rec(rec, e);
    return Alphabet(seen.begin(), seen.end());
}

inline std::size_t sd_dag_size(const SdPtr& e) {
    std::set<const SdNode*> visited;
    auto rec = [&](auto&& self, const SdPtr& n) -> void {
        if (!visited.insert(n.get()).second) return;
        if (n->a) self(self, n->a);
        if (n->b) self(self, n->b);
    };
    rec(rec, e);
    return visited.size();
}

// Every distinct star node, in first-visit order; the unit of certificate
// checking.
inline std::vector<SdPtr> sd_collect_stars(const SdPtr& e) {
    std::vector<SdPtr> stars;
    std::set<const SdNode*> visited;
    auto rec = [&](auto&& self, const SdPtr& n) -> void {
        if (!visited.insert(n.get()).second) return;
        if (n->kind == SdNode::Star) stars.push_back(n);
        if (n->a) self(self, n->a);
        if (n->b) self(self, n->b);
    };
    rec(rec, e);
    return stars;
}

/* ---------- text syntax ---------- */

// `0`, `'a'`, `(e + e)`, `(e . e)`, `e*{d}` — the brace holds the claimed
// delay.  print_sd expands shared subtrees, so it suits small expressions.
inline std::string print_sd(const SdPtr& e) {
    switch (e->kind) {
        case SdNode::Empty: return "0";
        case SdNode::Chr: return "'" + letter_text(e->letter) + "'";
        case SdNode::Union: return "(" + print_sd(e->a) + " + " + print_sd(e->b) + ")";
        case SdNode::Concat: return "(" + print_sd(e->a) + " . " + print_sd(e->b) + ")";
        case SdNode::Star: return print_sd(e->a) + "*{" + std::to_string(e->delay) + "}";
    }
    return "0";
}

namespace detail {
struct SdParser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    int parse_delay() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || pos - start > 6) fail("expected delay");
        return std::stoi(text.substr(start, pos - start));
    }

    SdPtr parse_item() {
        SdPtr e = parse_atom();
        while (eat('*')) {
            if (!eat('{')) fail("expected {delay}");
            int d = parse_delay();
            if (!eat('}')) fail("expected }");
            e = sd_star(e, d);
        }
        return e;
    }

    SdPtr parse_atom() {
        char c = peek();
        if (c == '0') {
            ++pos;
            return sd_empty();
        }
        if (c == '\'') {
            ++pos;
            std::size_t close = text.find('\'', pos);
            if (close == std::string::npos) fail("unterminated letter");
            std::string body = text.substr(pos, close - pos);
            pos = close + 1;
            try {
                return sd_letter(letter_from_text(body));
            } catch (const Error&) {
                fail("bad letter");
            }
        }
        if (c == '(') {
            ++pos;
            SdPtr acc = parse_item();
            if (peek() == ')') {  // plain grouping
                ++pos;
                return acc;
            }
            char op = peek();
            if (op != '+' && op != '.') fail("expected + or .");
            while (eat(op)) acc = op == '+' ? sd_union(acc, parse_item()) : sd_concat(acc, parse_item());
            if (peek() == '+' || peek() == '.') fail("mixed operators need parentheses");
            if (!eat(')')) fail("expected )");
            return acc;
        }
        if (std::isalnum(static_cast<unsigned char>(c))) {  // bare letters are accepted
            ++pos;
            return sd_letter(static_cast<Letter>(static_cast<unsigned char>(c)));
        }
        fail("expected expression");
    }
};
}  // namespace detail

inline SdPtr parse_sd(const std::string& text) {
    detail::SdParser p{text};
    SdPtr e = p.parse_item();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

/* ---------- denotation ---------- */

inline Dfa sd_to_dfa(const SdPtr& e, const Alphabet& alpha) {
    for (Letter x : sd_letters(e))
        if (!contains(alpha, x))
            throw Error("expression letter " + letter_text(x) + " not in alphabet");
    std::map<const SdNode*, Dfa> done;
    auto rec = [&](auto&& self, const SdPtr& n) -> const Dfa& {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        Dfa d;
        switch (n->kind) {
            case SdNode::Empty: d = dfa_empty(alpha); break;
            case SdNode::Chr: d = dfa_letter(alpha, n->letter); break;
            case SdNode::Union: d = minimize(unite(self(self, n->a), self(self, n->b))); break;
            case SdNode::Concat: d = dfa_concat(self(self, n->a), self(self, n->b)); break;
            case SdNode::Star: d = dfa_star(self(self, n->a)); break;
        }
        return done.emplace(n.get(), std::move(d)).first->second;
    };
    return rec(rec, e);
}

inline bool sd_membership(const SdPtr& e, const Word& w) {
    return sd_to_dfa(e, sd_letters(e)).accepts(w);
}

/* ---------- certificate checking ---------- */

// No member may extend another: the language avoids ε and is disjoint from
// itself followed by anything nonempty.  Decided exactly on automata.
inline bool is_prefix_code(const SdPtr& e) {
    Alphabet alpha = sd_letters(e);
    Dfa code = sd_to_dfa(e, alpha);
    if (code.accepts({})) return false;
    Dfa nonempty = complement(dfa_epsilon(alpha));
    return is_empty(intersect(code, dfa_concat(code, nonempty)));
}

struct SyncDelayWitness {
    Word u, v, w;
};

// Bounded refutation search for the delay claim: a violation is a triple with
// uvw ∈ K*, v built from d codewords, but uv ∉ K*.  All splits with
// |uvw| ≤ maxlen are covered, via a three-phase product walk (phase 0 reads
// u, phase 1 reads v alongside the K^d automaton, phase 2 reads w); the move
// into phase 2 only opens once v is complete and uv is rejected.  BFS order
// makes the returned triple a shortest one, found deterministically.
inline std::optional<SyncDelayWitness> sync_delay_witness(const SdPtr& e, int d, int maxlen) {
    if (d < 0) throw Error("negative delay");
    if (maxlen < 0) throw Error("negative length bound");
    Alphabet alpha = sd_letters(e);
    Dfa code = sd_to_dfa(e, alpha);
    Dfa star = dfa_star(code);
    Dfa pow = dfa_epsilon(alpha);
    for (int i = 0; i < d; ++i) pow = dfa_concat(pow, code);

    const int S = star.states, T = pow.states, k = star.k();
    const int idle = 0;  // pow lane is parked outside phase 1
    auto enc = [&](int phase, int s, int t) { return (phase * S + s) * T + t; };
    std::vector<int> dist(3 * S * T, -1), par(3 * S * T, -1), via(3 * S * T, 0);
    std::deque<int> queue;
    int hit = -1;

    // Discovery applies the cost-free phase moves immediately, so every node
    // enters the queue at its true distance.
    auto discover = [&](auto&& self, int phase, int s, int t, int from, int how, int len) -> void {
        int id = enc(phase, s, t);
        if (dist[id] >= 0) return;
        dist[id] = len;
        par[id] = from;
        via[id] = how;
        if (phase == 2 && star.accepting[s]) {
            if (hit < 0) hit = id;
            return;
        }
        queue.push_back(id);
        if (phase == 0) self(self, 1, s, pow.initial, id, -1, len);
        if (phase == 1 && pow.accepting[t] && !star.accepting[s]) self(self, 2, s, idle, id, -2, len);
    };
    discover(discover, 0, star.initial, idle, -1, 0, 0);

    while (hit < 0 && !queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (dist[id] == maxlen) continue;
        int t = id % T, s = (id / T) % S, phase = id / (S * T);
        for (int li = 0; li < k && hit < 0; ++li)
            discover(discover, phase, star.step(s, li), phase == 1 ? pow.step(t, li) : idle, id,
                     li, dist[id] + 1);
    }
    if (hit < 0) return std::nullopt;

    SyncDelayWitness out;
    for (int id = hit; par[id] >= 0; id = par[id]) {
        if (via[id] < 0) continue;  // phase move
        Word& part = id / (S * T) == 0 ? out.u : (id / (S * T) == 1 ? out.v : out.w);
        part.insert(part.begin(), alpha[via[id]]);
    }
    return out;
}

inline bool check_sync_delay(const SdPtr& e, int d, int maxlen) {
    return !sync_delay_witness(e, d, maxlen).has_value();
}

/* ---------- star-free expressions ---------- */

struct SfNode;
using SfPtr = std::shared_ptr<const SfNode>;

// Complement-based expressions, always relative to a fixed ambient alphabet.
struct SfNode {
    enum Kind { Empty, Chr, Union, Concat, Compl };
    Kind kind;
    Alphabet alphabet;
    Letter letter = 0;
    SfPtr a, b;
};

namespace detail {
inline SfPtr sf_node(SfNode::Kind kind, Alphabet alpha, Letter x, SfPtr a, SfPtr b) {
    return std::make_shared<const SfNode>(
        SfNode{kind, std::move(alpha), x, std::move(a), std::move(b)});
}

inline void sf_check_alphabets(const SfPtr& x, const SfPtr& y) {
    if (x->alphabet != y->alphabet)
        throw Error("combining star-free expressions over different alphabets");
}
}  // namespace detail

inline bool is_sf_empty(const SfPtr& e) { return e->kind == SfNode::Empty; }

inline SfPtr sf_empty(const Alphabet& alpha) {
    return detail::sf_node(SfNode::Empty, alpha, 0, nullptr, nullptr);
}

inline SfPtr sf_letter(const Alphabet& alpha, Letter x) {
    if (!contains(alpha, x)) throw Error("letter " + letter_text(x) + " not in alphabet");
    return detail::sf_node(SfNode::Chr, alpha, x, nullptr, nullptr);
}

inline SfPtr sf_union(const SfPtr& x, const SfPtr& y) {
    detail::sf_check_alphabets(x, y);
    if (is_sf_empty(x)) return y;
    if (is_sf_empty(y) || x == y) return x;
    return detail::sf_node(SfNode::Union, x->alphabet, 0, x, y);
}

inline SfPtr sf_concat(const SfPtr& x, const SfPtr& y) {
    detail::sf_check_alphabets(x, y);
    if (is_sf_empty(x)) return x;
    if (is_sf_empty(y)) return y;
    return detail::sf_node(SfNode::Concat, x->alphabet, 0, x, y);
}

inline SfPtr sf_compl(const SfPtr& x) {
    if (x->kind == SfNode::Compl) return x->a;
    return detail::sf_node(SfNode::Compl, x->alphabet, 0, x, nullptr);
}

inline SfPtr sf_full(const Alphabet& alpha) { return sf_compl(sf_empty(alpha)); }

inline SfPtr sf_diff(const SfPtr& x, const SfPtr& y) {
    return sf_compl(sf_union(sf_compl(x), y));
}

inline std::string print_star_free(const SfPtr& e) {
    switch (e->kind) {
        case SfNode::Empty: return "0";
        case SfNode::Chr: return "'" + letter_text(e->letter) + "'";
        case SfNode::Union: return "(" + print_star_free(e->a) + " + " + print_star_free(e->b) + ")";
        case SfNode::Concat:
            return "(" + print_star_free(e->a) + " . " + print_star_free(e->b) + ")";
        case SfNode::Compl: return "!" + print_star_free(e->a);
    }
    return "0";
}

inline Dfa sf_to_dfa(const SfPtr& e) {
    std::map<const SfNode*, Dfa> done;
    auto rec = [&](auto&& self, const SfPtr& n) -> const Dfa& {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        Dfa d;
        switch (n->kind) {
            case SfNode::Empty: d = dfa_empty(n->alphabet); break;
            case SfNode::Chr: d = dfa_letter(n->alphabet, n->letter); break;
            case SfNode::Union: d = minimize(unite(self(self, n->a), self(self, n->b))); break;
            case SfNode::Concat: d = dfa_concat(self(self, n->a), self(self, n->b)); break;
            case SfNode::Compl: d = minimize(complement(self(self, n->a))); break;
        }
        return done.emplace(n.get(), std::move(d)).first->second;
    };
    return rec(rec, e);
}

inline bool sf_membership(const SfPtr& e, const Word& w) { return sf_to_dfa(e).accepts(w); }

// Pumping threshold: with n = aperiodicity_index(e), membership of p·u^n·q
// and p·u^{n+1}·q agree for every p, u, q.  The full language A* needs no
// pumping at all, a single letter stabilizes at exponent two, a union is as
// demanding as its worst branch, and concatenation may need one aligning
// repetition on top of both sides.  Complement leaves the threshold alone.
// Saturates rather than overflowing on very deep shared structures.
inline long long aperiodicity_index(const SfPtr& e) {
    constexpr long long cap = 1LL << 60;
    std::map<const SfNode*, long long> done;
    auto rec = [&](auto&& self, const SfPtr& n) -> long long {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        long long r = 0;
        switch (n->kind) {
            case SfNode::Empty: r = 0; break;
            case SfNode::Chr: r = 2; break;
            case SfNode::Union: r = std::max(self(self, n->a), self(self, n->b)); break;
            case SfNode::Concat: r = std::min(cap, self(self, n->a) + self(self, n->b) + 1); break;
            case SfNode::Compl: r = self(self, n->a); break;
        }
        done[n.get()] = r;
        return r;
    };
    return rec(rec, e);
}

/* ---------- star elimination ---------- */

// Rewrites every certified star through its delay: a word fails to be in K*
// exactly when greedy codeword stripping gets stuck, and the delay bounds how
// much context the stuck point needs.  With claimed delay d,
//
//   K* = A* ∖ [ A*·K^d·(AA* ∖ KA*)  ∪  ⋃_{0 ≤ i < d} (K^i·AA* ∖ K^{i+1}·A*) ]
//
// where the union catches words that stick before d codewords are out, and
// the first term everything sticking later.  K^0 factors are dropped.
inline SfPtr sd_to_star_free(const SdPtr& e, const Alphabet& alpha) {
    for (Letter x : sd_letters(e))
        if (!contains(alpha, x))
            throw Error("expression letter " + letter_text(x) + " not in alphabet");
    SfPtr full = sf_full(alpha);
    SfPtr any = sf_empty(alpha);
    for (Letter x : alpha) any = sf_union(any, sf_letter(alpha, x));
    SfPtr aplus = sf_concat(any, full);

    std::map<const SdNode*, SfPtr> done;
    auto rec = [&](auto&& self, const SdPtr& n) -> const SfPtr& {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        SfPtr r;
        switch (n->kind) {
            case SdNode::Empty: r = sf_empty(alpha); break;
            case SdNode::Chr: r = sf_letter(alpha, n->letter); break;
            case SdNode::Union: r = sf_union(self(self, n->a), self(self, n->b)); break;
            case SdNode::Concat: r = sf_concat(self(self, n->a), self(self, n->b)); break;
            case SdNode::Star: {
                SfPtr k = self(self, n->a);
                SfPtr stick = sf_diff(aplus, sf_concat(k, full));  // nonempty, no codeword prefix
                SfPtr head = full;
                for (int i = 0; i < n->delay; ++i) head = sf_concat(head, k);
                SfPtr bad = sf_concat(head, stick);
                SfPtr ki;  // K^i, absent while i = 0
                for (int i = 0; i < n->delay; ++i) {
                    SfPtr left = ki ? sf_concat(ki, aplus) : aplus;
                    SfPtr ki1 = ki ? sf_concat(ki, k) : k;
                    bad = sf_union(bad, sf_diff(left, sf_concat(ki1, full)));
                    ki = ki1;
                }
                r = sf_diff(full, bad);
                break;
            }
        }
        return done.emplace(n.get(), std::move(r)).first->second;
    };
    return rec(rec, e);
}

/* ---------- builder ---------- */

// Expression maker for the synthesizer, working on the right of the chosen
// letter: middle parts decompose into body-then-c blocks.  Everything here is
// a plain constructor call — the class is closed under union and arbitrary
// concatenation, so no guards are needed — and stars enter only through
// full(), epsilon() and the block pullback, each time with its delay claim.
class SdClassBuilder {
public:
    using Expr = SdPtr;
    static constexpr bool left = false;

    Expr empty(const Alphabet&) { return sd_empty(); }

    // A single-letter codeword set synchronizes with no lookahead at all.
    Expr full(const Alphabet& a) {
        Expr letters = sd_empty();
        for (Letter x : a) letters = sd_union(letters, sd_letter(x));
        return sd_star(letters, 0);
    }

    Expr epsilon(const Alphabet&) { return sd_star(sd_empty(), 0); }

    Expr unite(const Expr& x, const Expr& y) { return sd_union(x, y); }

    // Letters carry their own identity, so a smaller-alphabet expression is
    // already one over the larger alphabet.
    Expr lift_alphabet(const Expr& k, const Alphabet&) { return k; }

    Expr prepend_c(const Expr& k, Letter c, const Expr& x, const Alphabet&) {
        return sd_concat(k, sd_concat(sd_letter(c), x));
    }

    Expr concat_into_c_side(const Expr& k, const Expr& l, Letter) { return sd_concat(k, l); }

    // Pullback along the block map: a derived letter stands for one
    // body-then-c block, so it expands to the body's preimage followed by c.
    // Union and concatenation pull back one block boundary at a time, and a
    // starred code needs one extra block of delay to absorb a ragged join at
    // the front.
    Expr sigma_preimage(const Expr& k, const SigmaContext<Expr>& ctx) {
        auto rec = [&](auto&& self, const Expr& n) -> Expr {
            auto it = sigma_cache_.find({n, ctx.key});
            if (it != sigma_cache_.end()) return it->second;
            Expr r;
            switch (n->kind) {
                case SdNode::Empty: r = sd_empty(); break;
                case SdNode::Chr:
                    if (!contains(ctx.derived, n->letter))
                        throw Error("block pullback expects an expression over the derived alphabet");
                    r = sd_concat(ctx.g_inverse(n->letter), sd_letter(ctx.c));
                    break;
                case SdNode::Union: r = sd_union(self(self, n->a), self(self, n->b)); break;
                case SdNode::Concat: r = sd_concat(self(self, n->a), self(self, n->b)); break;
                case SdNode::Star: r = sd_star(self(self, n->a), n->delay + 1); break;
            }
            return sigma_cache_.emplace(std::make_pair(n, ctx.key), std::move(r)).first->second;
        };
        return rec(rec, k);
    }

private:
    // Owning keys, so no live key can alias a dead node.
    std::map<std::pair<Expr, std::string>, Expr> sigma_cache_;
};

/* ---------- end-to-end synthesis ---------- */

struct SdSynthesis {
    SdPtr expr;
    bool accepts_epsilon = false;
    Synthesizer<SdClassBuilder>::Stats stats;
};

inline SdSynthesis synth_sd(const Morphism& h, const std::vector<int>& accepted) {
    if (auto w = aperiodicity_witness(h.monoid)) throw NonAperiodicError(*w);
    Synthesizer<SdClassBuilder> syn;
    SdPtr e = sd_empty();
    for (int p : accepted) e = sd_union(e, syn.synthesize(h, p));
    bool eps = false;
    for (int p : accepted) eps = eps || p == h.monoid.identity;
    if (sd_has_epsilon(e) != eps) throw Error("internal: epsilon mismatch after synthesis");
    return {e, eps, syn.stats()};
}

inline SdSynthesis synth_sd(const Dfa& d) {
    Dfa m = minimize(d);
    TransitionMonoid tm = transition_monoid(m);
    std::vector<int> accepted;
    for (int x = 0; x < tm.monoid.size; ++x)
        if (m.accepting[tm.transformation[x][m.initial]]) accepted.push_back(x);
    return synth_sd(tm.morphism, accepted);
}

}  // namespace locdiv
