/* Temporal formulas over finite words, the expression class built from
 * {∅, complement, union, letter-prefix, until}, the left-handed class
 * builder driving the synthesis engine, and the expression→formula
 * translation.  End-to-end entry point: synth_ltl. */
#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locdiv/automata.hpp"
#include "locdiv/core.hpp"
#include "locdiv/localizer.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

/* ---------- class expressions ---------- */

struct CltlNode;
using CltlPtr = std::shared_ptr<const CltlNode>;

// Each node carries its alphabet: complements are alphabet-relative, and the
// synthesis recursion moves between alphabets constantly.
struct CltlNode {
    enum Kind { Empty, Compl, Union, Prefix, Until };
    Kind kind;
    Alphabet alphabet;
    Letter letter = 0;  // Prefix only
    CltlPtr a, b;
    bool eps = false;  // ε-membership, fixed at construction
};

inline bool has_epsilon(const CltlPtr& e) { return e->eps; }
inline bool is_cltl_empty(const CltlPtr& e) { return e->kind == CltlNode::Empty; }
inline bool is_cltl_full(const CltlPtr& e) {
    return e->kind == CltlNode::Compl && is_cltl_empty(e->a);
}

inline CltlPtr cltl_empty(const Alphabet& alpha) {
    return std::make_shared<CltlNode>(CltlNode{CltlNode::Empty, alpha, 0, nullptr, nullptr, false});
}

inline CltlPtr cltl_compl(const CltlPtr& x) {
    if (x->kind == CltlNode::Compl) return x->a;
    return std::make_shared<CltlNode>(
        CltlNode{CltlNode::Compl, x->alphabet, 0, x, nullptr, !x->eps});
}

inline CltlPtr cltl_full(const Alphabet& alpha) { return cltl_compl(cltl_empty(alpha)); }

namespace detail {
inline void require_same_cltl_alphabet(const CltlPtr& x, const CltlPtr& y) {
    if (x->alphabet != y->alphabet)
        throw Error("internal: combining expressions over different alphabets");
}
}  // namespace detail

inline CltlPtr cltl_union(const CltlPtr& x, const CltlPtr& y) {
    detail::require_same_cltl_alphabet(x, y);
    if (is_cltl_empty(x) || is_cltl_full(y) || x == y) return y;
    if (is_cltl_empty(y) || is_cltl_full(x)) return x;
    return std::make_shared<CltlNode>(
        CltlNode{CltlNode::Union, x->alphabet, 0, x, y, x->eps || y->eps});
}

inline CltlPtr cltl_prefix(Letter a, const CltlPtr& x) {
    if (!contains(x->alphabet, a))
        throw Error("prefix letter " + letter_text(a) + " not in expression alphabet");
    if (is_cltl_empty(x)) return x;
    return std::make_shared<CltlNode>(CltlNode{CltlNode::Prefix, x->alphabet, a, x, nullptr, false});
}

// K U̇ L: words v·w with w ∈ L such that every nonempty suffix q of v has
// q·w ∈ K.  ε belongs iff it belongs to L.
inline CltlPtr cltl_until(const CltlPtr& k, const CltlPtr& l) {
    detail::require_same_cltl_alphabet(k, l);
    if (is_cltl_empty(l) || is_cltl_full(l)) return l;
    if (is_cltl_empty(k)) return l;
    return std::make_shared<CltlNode>(CltlNode{CltlNode::Until, k->alphabet, 0, k, l, l->eps});
}

inline CltlPtr cltl_intersect(const CltlPtr& x, const CltlPtr& y) {
    return cltl_compl(cltl_union(cltl_compl(x), cltl_compl(y)));
}

inline CltlPtr cltl_diff(const CltlPtr& x, const CltlPtr& y) {
    return cltl_compl(cltl_union(cltl_compl(x), y));
}

// Membership oracle by direct recursion over suffixes: until nodes try every
// split point, giving the quadratic scan.  Position n stands for ε.
inline bool denote_cltl(const CltlPtr& e, const Word& w) {
    for (Letter x : w)
        if (!contains(e->alphabet, x))
            throw Error("word letter " + letter_text(x) + " outside expression alphabet");
    int n = static_cast<int>(w.size());
    std::map<std::pair<const CltlNode*, int>, bool> memo;
    auto den = [&](auto&& self, const CltlNode* node, int i) -> bool {
        if (i == n) return node->eps;
        auto key = std::make_pair(node, i);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool v = false;
        switch (node->kind) {
            case CltlNode::Empty: v = false; break;
            case CltlNode::Compl: v = !self(self, node->a.get(), i); break;
            case CltlNode::Union:
                v = self(self, node->a.get(), i) || self(self, node->b.get(), i);
                break;
            case CltlNode::Prefix:
                v = w[i] == node->letter && self(self, node->a.get(), i + 1);
                break;
            case CltlNode::Until:
                for (int j = i; j <= n && !v; ++j) {
                    bool ok = self(self, node->b.get(), j);
                    for (int m = i; m < j && ok; ++m) ok = self(self, node->a.get(), m);
                    v = ok;
                }
                break;
        }
        memo.emplace(key, v);
        return v;
    };
    return den(den, e.get(), 0);
}

// Distinct nodes reachable in the expression DAG.
inline std::size_t cltl_dag_size(const CltlPtr& e) {
    std::vector<const CltlNode*> stack{e.get()};
    std::map<const CltlNode*, char> seen;
    while (!stack.empty()) {
        const CltlNode* n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n, 1).second) continue;
        if (n->a) stack.push_back(n->a.get());
        if (n->b) stack.push_back(n->b.get());
    }
    return seen.size();
}

/* ---------- temporal formulas ---------- */

struct LtlNode;
using LtlPtr = std::shared_ptr<const LtlNode>;

struct LtlNode {
    enum Kind { True, Atom, Not, Or, Next, Until };
    Kind kind;
    Letter letter = 0;
    LtlPtr a, b;
};

inline LtlPtr ltl_true() {
    static const LtlPtr t =
        std::make_shared<LtlNode>(LtlNode{LtlNode::True, 0, nullptr, nullptr});
    return t;
}

inline bool is_ltl_true(const LtlPtr& f) { return f->kind == LtlNode::True; }
inline bool is_ltl_false(const LtlPtr& f) {
    return f->kind == LtlNode::Not && is_ltl_true(f->a);
}

inline LtlPtr ltl_not(const LtlPtr& f) {
    if (f->kind == LtlNode::Not) return f->a;
    return std::make_shared<LtlNode>(LtlNode{LtlNode::Not, 0, f, nullptr});
}

inline LtlPtr ltl_false() { return ltl_not(ltl_true()); }
inline LtlPtr ltl_atom(Letter a) {
    return std::make_shared<LtlNode>(LtlNode{LtlNode::Atom, a, nullptr, nullptr});
}

inline LtlPtr ltl_or(const LtlPtr& f, const LtlPtr& g) {
    if (is_ltl_false(f) || is_ltl_true(g)) return g;
    if (is_ltl_false(g) || is_ltl_true(f)) return f;
    return std::make_shared<LtlNode>(LtlNode{LtlNode::Or, 0, f, g});
}

inline LtlPtr ltl_and(const LtlPtr& f, const LtlPtr& g) {
    return ltl_not(ltl_or(ltl_not(f), ltl_not(g)));
}

inline LtlPtr ltl_next(const LtlPtr& f) {
    return std::make_shared<LtlNode>(LtlNode{LtlNode::Next, 0, f, nullptr});
}

inline LtlPtr ltl_until(const LtlPtr& f, const LtlPtr& g) {
    return std::make_shared<LtlNode>(LtlNode{LtlNode::Until, 0, f, g});
}

inline LtlPtr ltl_finally(const LtlPtr& f) { return ltl_until(ltl_true(), f); }

// ⋁ of atoms: convenient for letter sets.
inline LtlPtr ltl_any_of(const Alphabet& letters) {
    LtlPtr f = ltl_false();
    for (Letter a : letters) f = ltl_or(f, ltl_atom(a));
    return f;
}

// Satisfaction at 1-based position i of a nonempty word; the next operator
// fails at the last position, until looks for a witness position k >= i.
inline bool eval_ltl(const LtlPtr& f, const Word& w, int i) {
    int n = static_cast<int>(w.size());
    if (i < 1 || i > n)
        throw Error("position " + std::to_string(i) + " out of range for word of length " +
                    std::to_string(n));
    std::map<std::pair<const LtlNode*, int>, bool> memo;
    auto ev = [&](auto&& self, const LtlNode* node, int pos) -> bool {
        auto key = std::make_pair(node, pos);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool v = false;
        switch (node->kind) {
            case LtlNode::True: v = true; break;
            case LtlNode::Atom: v = w[pos - 1] == node->letter; break;
            case LtlNode::Not: v = !self(self, node->a.get(), pos); break;
            case LtlNode::Or:
                v = self(self, node->a.get(), pos) || self(self, node->b.get(), pos);
                break;
            case LtlNode::Next: v = pos < n && self(self, node->a.get(), pos + 1); break;
            case LtlNode::Until:
                for (int k = pos; k <= n && !v; ++k) {
                    bool ok = self(self, node->b.get(), k);
                    for (int m = pos; m < k && ok; ++m) ok = self(self, node->a.get(), m);
                    v = ok;
                }
                break;
        }
        memo.emplace(key, v);
        return v;
    };
    return ev(ev, f.get(), i);
}

inline std::size_t ltl_dag_size(const LtlPtr& f) {
    std::vector<const LtlNode*> stack{f.get()};
    std::map<const LtlNode*, char> seen;
    while (!stack.empty()) {
        const LtlNode* n = stack.back();
        stack.pop_back();
        if (!seen.emplace(n, 1).second) continue;
        if (n->a) stack.push_back(n->a.get());
        if (n->b) stack.push_back(n->b.get());
    }
    return seen.size();
}

/* ---------- formula text syntax ---------- */

inline std::string print_ltl(const LtlPtr& f) {
    std::map<const LtlNode*, std::string> cache;
    auto pr = [&](auto&& self, const LtlNode* n) -> const std::string& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::string s;
        switch (n->kind) {
            case LtlNode::True: s = "true"; break;
            case LtlNode::Atom: s = "'" + letter_text(n->letter) + "'"; break;
            case LtlNode::Not:
                s = is_ltl_true(n->a) ? "false" : "!" + self(self, n->a.get());
                break;
            case LtlNode::Or:
                s = "(" + self(self, n->a.get()) + " | " + self(self, n->b.get()) + ")";
                break;
            case LtlNode::Next: s = "X " + self(self, n->a.get()); break;
            case LtlNode::Until:
                if (is_ltl_true(n->a))
                    s = "F " + self(self, n->b.get());
                else
                    s = "(" + self(self, n->a.get()) + " U " + self(self, n->b.get()) + ")";
                break;
        }
        return cache.emplace(n, std::move(s)).first->second;
    };
    return pr(pr, f.get());
}

namespace detail {
struct LtlParser {
    const std::string& text;
    const Alphabet& alphabet;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool word_at(const char* kw) {
        std::size_t len = std::string(kw).size();
        if (text.compare(pos, len, kw) != 0) return false;
        char next = pos + len < text.size() ? text[pos + len] : ' ';
        return !std::isalnum(static_cast<unsigned char>(next));
    }

    Letter check_letter(char ch) {
        Letter l = static_cast<Letter>(static_cast<unsigned char>(ch));
        if (!contains(alphabet, l))
            throw ParseError("letter '" + std::string(1, ch) + "' not in alphabet", pos);
        return l;
    }

    LtlPtr parse() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of formula", pos);
        char c = text[pos];
        if (word_at("true")) {
            pos += 4;
            return ltl_true();
        }
        if (word_at("false")) {
            pos += 5;
            return ltl_false();
        }
        if (c == '\'') {
            if (pos + 2 >= text.size() || text[pos + 2] != '\'')
                throw ParseError("expected 'x' with a single letter", pos);
            Letter l = check_letter(text[pos + 1]);
            pos += 3;
            return ltl_atom(l);
        }
        if (c == '!') {
            ++pos;
            return ltl_not(parse());
        }
        if (c == 'X' || c == 'F') {
            bool next = c == 'X';
            ++pos;
            LtlPtr f = parse();
            return next ? ltl_next(f) : ltl_finally(f);
        }
        if (c == '(') {
            ++pos;
            LtlPtr f = parse();
            skip_ws();
            if (pos >= text.size()) throw ParseError("expected |, & or U", pos);
            char op = text[pos];
            if (op != '|' && op != '&' && op != 'U') throw ParseError("expected |, & or U", pos);
            ++pos;
            LtlPtr g = parse();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')')
                throw ParseError("missing closing parenthesis", pos);
            ++pos;
            if (op == '|') return ltl_or(f, g);
            if (op == '&') return ltl_and(f, g);
            return ltl_until(f, g);
        }
        // Unquoted single letters are accepted as a convenience.
        if (std::isalnum(static_cast<unsigned char>(c))) {
            Letter l = check_letter(c);
            ++pos;
            return ltl_atom(l);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
    }
};
}  // namespace detail

inline LtlPtr parse_ltl(const std::string& text, const Alphabet& alphabet) {
    detail::LtlParser p{text, alphabet};
    LtlPtr f = p.parse();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing characters after formula", p.pos);
    return f;
}

/* ---------- expression → formula ---------- */

// The translated formula matches the expression on nonempty words; ε is
// reported separately (formulas have no empty model).  The two ε-sensitive
// cases: a letter prefix of an ε-containing tail also matches at the last
// position, and an until with ε in its right side also matches when the left
// side holds globally.
inline LtlPtr cltl_to_ltl(const CltlPtr& e) {
    std::map<const CltlNode*, LtlPtr> done;
    auto tr = [&](auto&& self, const CltlPtr& node) -> LtlPtr {
        auto it = done.find(node.get());
        if (it != done.end()) return it->second;
        LtlPtr f;
        switch (node->kind) {
            case CltlNode::Empty: f = ltl_false(); break;
            case CltlNode::Compl: f = ltl_not(self(self, node->a)); break;
            case CltlNode::Union: f = ltl_or(self(self, node->a), self(self, node->b)); break;
            case CltlNode::Prefix: {
                LtlPtr tail = self(self, node->a);
                LtlPtr step = has_epsilon(node->a)
                                  ? ltl_or(ltl_not(ltl_next(ltl_true())), ltl_next(tail))
                                  : ltl_next(tail);
                f = ltl_and(ltl_atom(node->letter), step);
                break;
            }
            case CltlNode::Until: {
                LtlPtr fk = self(self, node->a);
                LtlPtr fl = self(self, node->b);
                f = ltl_until(fk, fl);
                if (has_epsilon(node->b)) f = ltl_or(f, ltl_not(ltl_finally(ltl_not(fk))));
                break;
            }
        }
        return done.emplace(node.get(), std::move(f)).first->second;
    };
    return tr(tr, e);
}

/* ---------- the left-handed class builder ---------- */

// Constructors for the synthesis engine.  The class has no concatenation, so
// the three concatenation-shaped operations are realized through
// intersections that exploit the unique first/last occurrence of c.
struct LtlClassBuilder {
    using Expr = CltlPtr;
    static constexpr bool left = true;

    Expr empty(const Alphabet& a) { return cltl_empty(a); }
    Expr full(const Alphabet& a) { return cltl_full(a); }

    Expr epsilon(const Alphabet& a) {
        Expr any = cltl_empty(a);
        for (Letter x : a) any = cltl_union(any, cltl_prefix(x, cltl_full(a)));
        return cltl_compl(any);
    }

    Expr unite(const Expr& x, const Expr& y) { return cltl_union(x, y); }

    // A* x A*.
    Expr contains_letter(const Alphabet& a, Letter x) {
        return cltl_until(cltl_full(a), cltl_prefix(x, cltl_full(a)));
    }

    // Words starting with a letter of B.
    Expr b_start(const Alphabet& a, Letter c) {
        Expr u = cltl_empty(a);
        for (Letter x : a)
            if (x != c) u = cltl_union(u, cltl_prefix(x, cltl_full(a)));
        return u;
    }

    // Same language over the larger alphabet.  Only complements need care:
    // relative complement plus the guard that no foreign letter occurs.
    Expr lift_alphabet(const Expr& k, const Alphabet& a) {
        if (k->alphabet == a) return k;
        Expr guard = cltl_full(a);
        for (Letter x : a)
            if (!contains(k->alphabet, x))
                guard = cltl_intersect(guard, cltl_compl(contains_letter(a, x)));
        std::string ck = alphabet_key(a);
        auto rec = [&](auto&& self, const Expr& n) -> Expr {
            auto it = lift_cache_.find({n, ck});
            if (it != lift_cache_.end()) return it->second;
            Expr r;
            switch (n->kind) {
                case CltlNode::Empty: r = cltl_empty(a); break;
                case CltlNode::Compl: r = cltl_diff(guard, self(self, n->a)); break;
                case CltlNode::Union: r = cltl_union(self(self, n->a), self(self, n->b)); break;
                case CltlNode::Prefix: r = cltl_prefix(n->letter, self(self, n->a)); break;
                case CltlNode::Until: r = cltl_until(self(self, n->a), self(self, n->b)); break;
            }
            return lift_cache_.emplace(std::make_pair(n, ck), std::move(r)).first->second;
        };
        return rec(rec, k);
    }

    // K·c·B* for K over A, by structural rewriting; sound because the c in
    // question is the last one, making the split unique.
    Expr kc_bstar(const Expr& k, Letter c) {
        const Alphabet& a = k->alphabet;
        Expr all_c = contains_letter(a, c);
        auto rec = [&](auto&& self, const Expr& n) -> Expr {
            auto it = kcb_cache_.find({n, c});
            if (it != kcb_cache_.end()) return it->second;
            Expr r;
            switch (n->kind) {
                case CltlNode::Empty: r = cltl_empty(a); break;
                case CltlNode::Compl: r = cltl_diff(all_c, self(self, n->a)); break;
                case CltlNode::Union: r = cltl_union(self(self, n->a), self(self, n->b)); break;
                case CltlNode::Prefix: r = cltl_prefix(n->letter, self(self, n->a)); break;
                case CltlNode::Until: r = cltl_until(self(self, n->a), self(self, n->b)); break;
            }
            return kcb_cache_.emplace(std::make_pair(n, c), std::move(r)).first->second;
        };
        return rec(rec, k);
    }

    // K·c·A* for K over B.  The until case needs a guard restricting the
    // scanned positions to B-starting suffixes; without it, words whose
    // until-witness sits beyond the first c would leak in.
    Expr kc_astar(const Expr& k, Letter c, const Alphabet& a) {
        Expr all_c = contains_letter(a, c);
        Expr guard = b_start(a, c);
        std::string ck = alphabet_key(a) + letter_text(c);
        auto rec = [&](auto&& self, const Expr& n) -> Expr {
            auto it = kca_cache_.find({n, ck});
            if (it != kca_cache_.end()) return it->second;
            Expr r;
            switch (n->kind) {
                case CltlNode::Empty: r = cltl_empty(a); break;
                case CltlNode::Compl: r = cltl_diff(all_c, self(self, n->a)); break;
                case CltlNode::Union: r = cltl_union(self(self, n->a), self(self, n->b)); break;
                case CltlNode::Prefix: r = cltl_prefix(n->letter, self(self, n->a)); break;
                case CltlNode::Until:
                    r = cltl_until(cltl_intersect(self(self, n->a), guard), self(self, n->b));
                    break;
            }
            return kca_cache_.emplace(std::make_pair(n, ck), std::move(r)).first->second;
        };
        return rec(rec, k);
    }

    // K·c·L for K over A and L over B: words whose last c splits them into a
    // K-part and an L-part.
    Expr append_c(const Expr& k, Letter c, const Expr& l, const Alphabet& a) {
        Expr a_c_l = cltl_until(cltl_full(a), cltl_prefix(c, lift_alphabet(l, a)));
        return cltl_intersect(a_c_l, kc_bstar(k, c));
    }

    // K·L for K over B and L ⊆ cA*: the first c separates the parts.
    Expr concat_into_c_side(const Expr& k, const Expr& l, Letter c) {
        const Alphabet& a = l->alphabet;
        Expr bs_l = cltl_until(b_start(a, c), l);
        return cltl_intersect(bs_l, kc_astar(k, c, a));
    }

    // σ⁻¹(K) for K over the derived alphabet: pulls a description of the
    // c-block decomposition back to A.  Domain is {ε} ∪ cA*.
    Expr sigma_preimage(const Expr& k, const SigmaContext<Expr>& ctx) {
        if (k->alphabet != ctx.derived)
            throw Error("sigma preimage expects an expression over the derived alphabet");
        const Alphabet& a = ctx.base_alphabet;
        Letter c = ctx.c;
        Expr domain = cltl_union(epsilon(a), cltl_prefix(c, cltl_full(a)));
        Expr c_start = cltl_prefix(c, cltl_full(a));
        Expr guard = b_start(a, c);
        auto rec = [&](auto&& self, const Expr& n) -> Expr {
            auto it = sigma_cache_.find({n, ctx.key});
            if (it != sigma_cache_.end()) return it->second;
            Expr r;
            switch (n->kind) {
                case CltlNode::Empty: r = cltl_empty(a); break;
                case CltlNode::Compl: r = cltl_diff(domain, self(self, n->a)); break;
                case CltlNode::Union: r = cltl_union(self(self, n->a), self(self, n->b)); break;
                case CltlNode::Prefix: {
                    // t·L′ pulls back to c·(g⁻¹(t)·σ⁻¹(L′)); the tail set
                    // splits into its ε part and its c-starting part.
                    Expr tail = self(self, n->a);
                    Expr ginv = ctx.g_inverse(n->letter);
                    Expr inner = concat_into_c_side(ginv, cltl_intersect(tail, c_start), c);
                    if (has_epsilon(n->a)) inner = cltl_union(inner, lift_alphabet(ginv, a));
                    r = cltl_prefix(c, inner);
                    break;
                }
                case CltlNode::Until:
                    r = cltl_intersect(
                        cltl_until(cltl_union(self(self, n->a), guard), self(self, n->b)),
                        domain);
                    break;
            }
            return sigma_cache_.emplace(std::make_pair(n, ctx.key), std::move(r))
                .first->second;
        };
        return rec(rec, k);
    }

private:
    static std::string alphabet_key(const Alphabet& a) {
        std::string s;
        for (Letter x : a) s += std::to_string(x) + ",";
        return s;
    }

    // Keys hold owning pointers on purpose: entries must pin their nodes so a
    // recycled allocation can never alias a dead key.
    std::map<std::pair<Expr, std::string>, Expr> lift_cache_;
    std::map<std::pair<Expr, Letter>, Expr> kcb_cache_;
    std::map<std::pair<Expr, std::string>, Expr> kca_cache_;
    std::map<std::pair<Expr, std::string>, Expr> sigma_cache_;
};

/* ---------- end-to-end synthesis ---------- */

struct LtlSynthesis {
    LtlPtr formula;
    bool accepts_epsilon = false;
    CltlPtr expr;  // the class expression the formula came from
    Synthesizer<LtlClassBuilder>::Stats stats;
};

// Morphism + accepted element set.  epsilon acceptance is forced by whether
// the identity is accepted.
inline LtlSynthesis synth_ltl(const Morphism& h, const std::vector<int>& accepted) {
    if (auto w = aperiodicity_witness(h.monoid)) throw NonAperiodicError(*w);
    Synthesizer<LtlClassBuilder> syn;
    CltlPtr e = cltl_empty(h.alphabet);
    for (int p : accepted) e = cltl_union(e, syn.synthesize(h, p));
    bool eps = false;
    for (int p : accepted) eps = eps || p == h.monoid.identity;
    if (has_epsilon(e) != eps) throw Error("internal: epsilon mismatch after synthesis");
    return {cltl_to_ltl(e), eps, e, syn.stats()};
}

inline LtlSynthesis synth_ltl(const Dfa& d) {
    Dfa m = minimize(d);
    TransitionMonoid tm = transition_monoid(m);
    std::vector<int> accepted;
    for (int x = 0; x < tm.monoid.size; ++x)
        if (m.accepting[tm.transformation[x][m.initial]]) accepted.push_back(x);
    return synth_ltl(tm.morphism, accepted);
}

}  // namespace locdiv
