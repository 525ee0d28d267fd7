#pragma once
// Factorization forests: every word factors through a tree of bounded height
// in which nodes are binary or group several factors sharing one idempotent
// image.  The height bound depends only on the monoid, not the word.  Groups
// are handled by induction on the set of prefix products; a general monoid
// gives up a non-unit letter c, turns the c-free blocks into derived letters
// of a morphism into the local divisor at c, and lifts the recursively built
// tree back, simulating each idempotent node with a bounded number of levels.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "locdiv/core.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

/* ---------- trees ---------- */

struct ForestNode;
using FactTree = std::shared_ptr<const ForestNode>;

struct ForestNode {
    enum class Kind { Leaf, Binary, Idempotent };
    Kind kind = Kind::Leaf;
    Letter letter = 0;              // leaves only
    std::vector<FactTree> children; // binary: exactly two; idempotent: three or more
    Word word;                      // concatenation of the leaf letters below
    int image = 0;                  // image of word
    int height = 0;
};

inline FactTree forest_leaf(const Morphism& f, Letter a) {
    auto n = std::make_shared<ForestNode>();
    n->kind = ForestNode::Kind::Leaf;
    n->letter = a;
    n->word = {a};
    n->image = f.image(a);
    return n;
}

// Kind follows the arity: two children make a binary node, more make an
// idempotent node (whose side condition is the validator's business).
inline FactTree forest_node(const MonoidTable& m, std::vector<FactTree> children) {
    if (children.size() < 2) throw Error("factorization node needs at least two children");
    auto n = std::make_shared<ForestNode>();
    n->kind = children.size() == 2 ? ForestNode::Kind::Binary : ForestNode::Kind::Idempotent;
    n->image = m.identity;
    for (const FactTree& ch : children) {
        if (!ch) throw Error("factorization node with a missing child");
        n->word.insert(n->word.end(), ch->word.begin(), ch->word.end());
        n->image = m.mul(n->image, ch->image);
        n->height = std::max(n->height, ch->height + 1);
    }
    n->children = std::move(children);
    return n;
}

// The empty word has no tree; a missing tree has height 0.
inline int height(const FactTree& t) { return t ? t->height : 0; }

/* ---------- validity ---------- */

inline std::optional<std::string> forest_violation(const Morphism& f, const Word& w,
                                                   const FactTree& t) {
    if (!t) {
        if (w.empty()) return std::nullopt;
        return "no tree for a nonempty word";
    }
    if (t->word != w) return "cached word differs from the given word";
    std::optional<std::string> why;
    auto check = [&](auto&& self, const FactTree& n) -> bool {
        auto fail = [&](std::string s) {
            why = std::move(s);
            return false;
        };
        if (n->kind == ForestNode::Kind::Leaf) {
            if (!n->children.empty()) return fail("leaf with children");
            if (n->word != Word{n->letter}) return fail("leaf word differs from its letter");
            if (n->height != 0) return fail("leaf with nonzero height");
            if (f.letter_index(n->letter) < 0)
                return fail("leaf letter " + letter_text(n->letter) + " outside the alphabet");
            if (n->image != f.image(n->letter)) return fail("leaf image differs from the letter image");
            return true;
        }
        if (n->kind == ForestNode::Kind::Binary && n->children.size() != 2)
            return fail("binary node without exactly two children");
        if (n->kind == ForestNode::Kind::Idempotent && n->children.size() < 3)
            return fail("idempotent node with fewer than three children");
        Word cat;
        int img = f.monoid.identity;
        int high = 0;
        for (const FactTree& ch : n->children) {
            if (!ch) return fail("missing child");
            if (ch->word.empty()) return fail("child with an empty word");
            if (!self(self, ch)) return false;
            cat.insert(cat.end(), ch->word.begin(), ch->word.end());
            img = f.monoid.mul(img, ch->image);
            high = std::max(high, ch->height);
        }
        if (cat != n->word) return fail("node word differs from its children's concatenation");
        if (img != n->image) return fail("node image differs from its children's product");
        if (n->height != high + 1) return fail("node height differs from the recurrence");
        if (n->kind == ForestNode::Kind::Idempotent) {
            int e = n->children.front()->image;
            for (const FactTree& ch : n->children)
                if (ch->image != e) return fail("idempotent node with unequal child images");
            if (f.monoid.mul(e, e) != e)
                return fail("idempotent node whose shared image is not idempotent");
        }
        return true;
    };
    if (!check(check, t)) return why;
    if (t->image != f.eval(w)) return "root image differs from the word image";
    return std::nullopt;
}

inline bool validate_forest(const Morphism& f, const Word& w, const FactTree& t) {
    return !forest_violation(f, w, t).has_value();
}

/* ---------- group case ---------- */

// Number of distinct images of the proper nonempty prefixes of w.
inline int prefix_set_size(const Morphism& f, const Word& w) {
    std::set<int> seen;
    int acc = f.monoid.identity;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        acc = f.monoid.mul(acc, f.image(w[i]));
        seen.insert(acc);
    }
    return static_cast<int>(seen.size());
}

namespace detail {

// Induction on the prefix set.  All cut points sharing the first prefix
// product p split the word into v_1 .. v_{t+1}; the inner factors v_2 .. v_t
// map to the identity, so they may share one idempotent node, and every
// factor has a strictly smaller prefix set.  Three levels per removed
// element give the 3|P(w)| height bound.
inline FactTree group_rec(const Morphism& f, const Word& w, int depth) {
    if (w.empty()) return nullptr;
    if (w.size() == 1) return forest_leaf(f, w[0]);
    if (depth > f.monoid.size + 1) throw Error("internal: prefix set failed to shrink");
    std::vector<std::size_t> cuts;  // prefix lengths whose product equals the first one
    int first = -1;
    int acc = f.monoid.identity;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        acc = f.monoid.mul(acc, f.image(w[i]));
        if (first < 0) first = acc;
        if (acc == first) cuts.push_back(i + 1);
    }
    std::vector<FactTree> parts;
    std::size_t prev = 0;
    for (std::size_t cut : cuts) {
        parts.push_back(group_rec(f, Word(w.begin() + prev, w.begin() + cut), depth + 1));
        prev = cut;
    }
    parts.push_back(group_rec(f, Word(w.begin() + prev, w.end()), depth + 1));
    std::size_t t = cuts.size();
    FactTree left = parts[0];
    if (t >= 2) {
        FactTree inner = t == 2 ? parts[1]
                                : forest_node(f.monoid, {parts.begin() + 1, parts.begin() + t});
        left = forest_node(f.monoid, {parts[0], inner});
    }
    return forest_node(f.monoid, {left, parts[t]});
}

}  // namespace detail

inline FactTree build_group_forest(const Morphism& f, const Word& w) {
    for (int e : f.images)
        if (!is_unit(f.monoid, e)) throw Error("group forest needs every letter image to be a unit");
    return detail::group_rec(f, w, 0);
}

/* ---------- lifting through a local divisor ---------- */

namespace detail {

inline bool int_member(const std::vector<int>& xs, int x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// piece[s] is a tree for c v_s and val[s] = f(v_s); build a tree for
// c v_lo .. c v_hi.  Induction on the set of values repeated before the last
// block: group a maximal non-adjacent family of positions sharing one such
// value; the grouped pieces c w_i c v_{j_i} all carry the same idempotent
// image, and the chosen value cannot repeat inside any remainder.  Once no
// value repeats there are at most |M|+1 blocks left, combined balanced.
inline FactTree assemble(const MonoidTable& m, const std::vector<FactTree>& piece,
                         const std::vector<int>& val, int lo, int hi, int depth) {
    if (depth > m.size + 2)
        throw Error("internal: idempotent simulation failed to shrink its repeat set");
    if (lo == hi) return piece[lo];
    auto balanced = [&](auto&& self, int a, int b) -> FactTree {
        if (a == b) return piece[a];
        int mid = (a + b) / 2;
        return forest_node(m, {self(self, a, mid), self(self, mid + 1, b)});
    };
    std::vector<int> repeated;  // second occurrence strictly before the last block
    for (int s = lo + 1; s < hi; ++s)
        for (int s2 = lo; s2 < s; ++s2)
            if (val[s2] == val[s] && !int_member(repeated, val[s])) repeated.push_back(val[s]);
    if (repeated.empty()) return balanced(balanced, lo, hi);
    int v = -1;
    for (int s = lo; s <= hi && v < 0; ++s)
        if (int_member(repeated, val[s])) v = val[s];  // earliest first occurrence
    // Scanning from the right keeps the family maximal while letting the
    // last block end at hi whenever possible, which saves the extra join
    // for the remainder.
    std::vector<int> picks;
    for (int s = hi; s > lo; --s)
        if (val[s] == v && (picks.empty() || s < picks.back() - 1)) picks.push_back(s);
    std::reverse(picks.begin(), picks.end());
    std::vector<FactTree> parts;
    int prev = lo - 1;
    for (int j : picks) {
        parts.push_back(forest_node(m, {assemble(m, piece, val, prev + 1, j - 1, depth + 1), piece[j]}));
        prev = j;
    }
    FactTree core = parts.size() == 1 ? parts[0] : forest_node(m, std::move(parts));
    if (prev < hi)
        return forest_node(m, {core, assemble(m, piece, val, prev + 1, hi, depth + 1)});
    return core;
}

inline FactTree lift_rec(const Morphism& f, Letter c, const FactTree& t) {
    if (!t) return nullptr;
    if (t->kind == ForestNode::Kind::Leaf)
        return forest_node(f.monoid, {forest_leaf(f, c), forest_leaf(f, t->letter)});
    std::vector<FactTree> kids;
    kids.reserve(t->children.size());
    for (const FactTree& ch : t->children) kids.push_back(lift_rec(f, c, ch));
    if (t->kind == ForestNode::Kind::Binary) return forest_node(f.monoid, std::move(kids));
    std::vector<int> val;
    for (const FactTree& p : kids) {
        Word v(p->word.begin() + 1, p->word.end());  // strip the leading c
        val.push_back(f.eval(v));
    }
    return assemble(f.monoid, kids, val, 0, static_cast<int>(kids.size()) - 1, 0);
}

}  // namespace detail

// Translate a tree for b_1 .. b_k under the derived morphism b ↦ class of
// f(c)f(b)f(c) in the local divisor at f(c) into a tree for c b_1 .. c b_k
// under f.  Heights grow by a factor of at most 4|M| plus one final level
// for pairing each b with its preceding c.
inline FactTree lift_forest(const Morphism& f, Letter c, const Word& wc, const FactTree& tc) {
    int fc = f.image(c);
    LocalDivisor div = local_divisor(f.monoid, fc);
    std::vector<int> g_images;
    for (Letter b : f.alphabet) {
        int q = div.to_quotient[f.monoid.mul(f.monoid.mul(fc, f.image(b)), fc)];
        if (q < 0) throw Error("internal: a two-sided product left the divisor carrier");
        g_images.push_back(q);
    }
    Morphism g = make_morphism(f.alphabet, g_images, div.quotient);
    if (auto why = forest_violation(g, wc, tc))
        throw Error("lift needs a valid tree for the derived morphism: " + *why);
    return detail::lift_rec(f, c, tc);
}

/* ---------- the general construction ---------- */

namespace detail {

// Rebuild with each leaf replaced by the next letter of w; images must not
// change, so validity and height are preserved.
inline FactTree relabel_leaves(const Morphism& f, const FactTree& t, const Word& w,
                               std::size_t& idx) {
    if (t->kind == ForestNode::Kind::Leaf) {
        if (idx >= w.size()) throw Error("internal: relabeling ran past the word");
        Letter a = w[idx++];
        if (f.image(a) != t->image) throw Error("internal: relabeling changed a leaf image");
        return forest_leaf(f, a);
    }
    std::vector<FactTree> kids;
    kids.reserve(t->children.size());
    for (const FactTree& ch : t->children) kids.push_back(relabel_leaves(f, ch, w, idx));
    return forest_node(f.monoid, std::move(kids));
}

// Replace the lifted tree's leaves: even-positioned leaves are the letter c,
// odd ones are whole block trees.  Empty blocks vanish, and nodes left with
// one child contract to it; dropped blocks had identity image, so surviving
// idempotent nodes keep their shared image.
inline FactTree graft_blocks(const Morphism& f, Letter c, Letter dc, Letter base,
                             const std::vector<FactTree>& blocks, const FactTree& n,
                             std::size_t& leaf_idx) {
    if (n->kind == ForestNode::Kind::Leaf) {
        std::size_t i = leaf_idx++;
        if (i % 2 == 0) {
            if (n->letter != dc) throw Error("internal: lifted leaf order broke");
            return forest_leaf(f, c);
        }
        const FactTree& b = blocks[(i - 1) / 2];
        Letter expect = base + static_cast<Letter>(b ? b->image : f.monoid.identity);
        if (n->letter != expect) throw Error("internal: lifted leaf order broke");
        return b;
    }
    std::vector<FactTree> kids;
    for (const FactTree& ch : n->children) {
        FactTree g = graft_blocks(f, c, dc, base, blocks, ch, leaf_idx);
        if (g) kids.push_back(std::move(g));
    }
    if (kids.empty()) return nullptr;
    if (kids.size() == 1) return kids[0];
    return forest_node(f.monoid, std::move(kids));
}

inline FactTree forest_rec(const Morphism& f, const Word& w, std::pair<int, std::size_t> parent) {
    if (w.empty()) return nullptr;
    if (w.size() == 1) return forest_leaf(f, w[0]);

    // Letters with equal images are interchangeable: work with the first
    // letter of each image class and restore the original letters at the end.
    Alphabet occ;
    std::vector<int> occ_images;
    Word wh;
    wh.reserve(w.size());
    std::map<int, Letter> rep;
    for (Letter a : w) {
        int e = f.image(a);
        auto [it, fresh] = rep.emplace(e, a);
        if (fresh) {
            occ.push_back(a);
            occ_images.push_back(e);
        }
        wh.push_back(it->second);
    }
    Morphism fh = make_morphism(occ, occ_images, f.monoid);
    std::pair<int, std::size_t> mine{f.monoid.size, occ.size()};
    if (mine >= parent) throw Error("internal: recursion measure did not decrease");

    bool all_units = true;
    for (int e : occ_images)
        if (!is_unit(fh.monoid, e)) all_units = false;

    FactTree t;
    if (all_units) {
        t = group_rec(fh, wh, 0);
    } else {
        // smallest letter with non-unit image; word-independent for a fixed
        // morphism, so all words of one sweep split the same way
        Letter c = 0;
        bool have_c = false;
        for (std::size_t i = 0; i < occ.size(); ++i)
            if (!is_unit(fh.monoid, occ_images[i]) && (!have_c || occ[i] < c)) {
                c = occ[i];
                have_c = true;
            }
        // w = w_0 c w_1 c ... c w_k with c-free blocks
        std::vector<Word> blocks_w{Word{}};
        for (Letter a : wh) {
            if (a == c)
                blocks_w.push_back(Word{});
            else
                blocks_w.back().push_back(a);
        }
        std::size_t k = blocks_w.size() - 1;
        Alphabet balpha;
        std::vector<int> bimages;
        for (std::size_t i = 0; i < occ.size(); ++i)
            if (occ[i] != c) {
                balpha.push_back(occ[i]);
                bimages.push_back(occ_images[i]);
            }
        Morphism fb = make_morphism(balpha, bimages, fh.monoid);
        FactTree head = forest_rec(fb, blocks_w[0], mine);
        std::vector<FactTree> bts;
        std::vector<int> belems;
        for (std::size_t i = 1; i <= k; ++i) {
            bts.push_back(forest_rec(fb, blocks_w[i], mine));
            belems.push_back(fh.eval(blocks_w[i]));
        }
        // block images and f(c) become the letters of a derived morphism
        int fc = fh.image(c);
        Letter base = first_synthetic_letter;
        for (Letter a : occ) base = std::max(base, a + 1);
        std::set<int> elems(belems.begin(), belems.end());
        elems.insert(fc);
        Alphabet dalpha;
        std::vector<int> delems;
        for (int e : elems) {
            dalpha.push_back(base + static_cast<Letter>(e));
            delems.push_back(e);
        }
        Morphism fp = make_morphism(dalpha, delems, fh.monoid);
        Letter dc = base + static_cast<Letter>(fc);
        Word dword;
        for (int e : belems) dword.push_back(base + static_cast<Letter>(e));
        LocalDivisor div = local_divisor(fh.monoid, fc);
        std::vector<int> gimages;
        for (int e : delems) {
            int q = div.to_quotient[fh.monoid.mul(fh.monoid.mul(fc, e), fc)];
            if (q < 0) throw Error("internal: a two-sided product left the divisor carrier");
            gimages.push_back(q);
        }
        Morphism g = make_morphism(dalpha, gimages, div.quotient);
        FactTree tc = forest_rec(g, dword, mine);
        FactTree lifted = lift_forest(fp, dc, dword, tc);
        std::size_t leaf_idx = 0;
        FactTree grafted = graft_blocks(fh, c, dc, base, bts, lifted, leaf_idx);
        if (leaf_idx != 2 * k) throw Error("internal: lifted tree had the wrong leaf count");
        if (!grafted) throw Error("internal: grafted tree vanished");
        t = head ? forest_node(fh.monoid, {head, grafted}) : grafted;
    }

    std::size_t idx = 0;
    FactTree out = relabel_leaves(f, t, w, idx);
    if (idx != w.size()) throw Error("internal: relabeling did not consume the word");
    return out;
}

}  // namespace detail

inline FactTree build_forest(const Morphism& f, const Word& w) {
    FactTree t = detail::forest_rec(f, w, {f.monoid.size, f.alphabet.size() + 1});
    if (auto why = forest_violation(f, w, t))
        throw Error("internal: built forest failed validation: " + *why);
    return t;
}

/* ---------- height bound ---------- */

// The height our construction guarantees for monoid size m and alphabet size
// a, independent of the word: groups need 3m; otherwise one letter is
// removed (blocks need H(m, a-1)), the lifted tree multiplies the divisor
// recursion by 4m plus its pairing level, and grafting adds one combining
// level.  Equal-image letters are identified first, so a is capped at m.
// Saturating arithmetic; the values are bounds, not measurements.
inline unsigned long long height_bound(int m, int a) {
    if (m < 1) throw Error("height bound needs a monoid of size at least 1");
    if (a < 0) throw Error("height bound needs a nonnegative alphabet size");
    constexpr unsigned long long cap = 1ULL << 62;
    auto sat_add = [](unsigned long long x, unsigned long long y) {
        return x >= cap - y ? cap : x + y;
    };
    auto sat_mul = [](unsigned long long x, unsigned long long y) {
        if (x == 0 || y == 0) return 0ULL;
        return x >= cap / y ? cap : x * y;
    };
    std::map<std::pair<int, int>, unsigned long long> memo;
    auto rec = [&](auto&& self, int mm, int aa) -> unsigned long long {
        if (mm <= 0) return 0;
        aa = std::min(aa, mm);
        if (aa <= 0) return 0;
        auto key = std::make_pair(mm, aa);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        unsigned long long lifted = sat_add(sat_mul(4ULL * mm, self(self, mm - 1, mm)), 2);
        unsigned long long split = sat_add(self(self, mm, aa - 1), lifted);
        unsigned long long out = std::max(3ULL * static_cast<unsigned long long>(mm), split);
        memo[key] = out;
        return out;
    };
    return rec(rec, m, a);
}

}  // namespace locdiv
