/* Generic synthesis of class expressions for morphism preimages h⁻¹(p).
 *
 * Recursion on (|monoid|, |alphabet|), lexicographically: if every letter
 * maps to the identity the preimage is A* or ∅; otherwise pick a letter c
 * with non-unit image, split every word containing c at its first and last
 * occurrence, and reduce to (1) the restriction of h to B = A∖{c} and (2) a
 * morphism f from a derived alphabet T = h(B*) into the local divisor at
 * h(c), which is strictly smaller.  Expression assembly is delegated to a
 * class builder (one per target expression language, left- or right-handed).
 */
#pragma once

#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "locdiv/core.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

// First letter (alphabet order) whose image is a non-unit; failing that,
// first with a non-identity image.  In an aperiodic monoid the two rules
// coincide, since the identity is the only unit.
inline Letter choose_letter(const Morphism& h) {
    for (std::size_t i = 0; i < h.alphabet.size(); ++i)
        if (!is_unit(h.monoid, h.images[i])) return h.alphabet[i];
    for (std::size_t i = 0; i < h.alphabet.size(); ++i)
        if (h.images[i] != h.monoid.identity) return h.alphabet[i];
    throw Error("choose_letter: every letter maps to the identity");
}

// Handed to the builder's sigma_preimage: the derived alphabet has one fresh
// letter per element of T = h(B*), and g_inverse produces the class
// expression for a derived letter's preimage inside B*.
template <typename Expr>
struct SigmaContext {
    Alphabet base_alphabet;  // A (contains c)
    Letter c = 0;
    Alphabet derived;
    std::function<Expr(Letter)> g_inverse;
    std::string key;  // discriminates contexts in builder-side caches
};

/* Builder requirements (duck-typed):
 *   using Expr = ...;  static constexpr bool left = ...;
 *   empty(A), full(A), epsilon(A), unite(K, L), lift_alphabet(K, A),
 *   sigma_preimage(K, SigmaContext),
 *   left:  append_c(K over A, c, L over B, A)        ↦ K·c·L
 *          concat_into_c_side(K over B, L ⊆ cA*, c)  ↦ K·L
 *   right: prepend_c(K over B, c, L over A, A)       ↦ K·c·L
 *          concat_into_c_side(K ⊆ A*c, L over B, c)  ↦ K·L
 */
template <typename Builder>
class Synthesizer {
public:
    using Expr = typename Builder::Expr;

    struct Stats {
        long long memo_hits = 0;
        long long memo_misses = 0;
    };

    explicit Synthesizer(Builder builder = {}) : builder_(std::move(builder)) {}

    Builder& builder() { return builder_; }
    Stats stats() const {
        std::lock_guard<std::mutex> lock(mu_);
        return stats_;
    }

    // Class expression denoting h⁻¹(p) exactly.
    Expr synthesize(const Morphism& h, int p) {
        require_aperiodic(h);
        return synth_rec(h, p, Measure{INT_MAX, INT_MAX});
    }

    // Expression for h⁻¹(r) ∩ cA* ∩ A*c: the words running from one
    // occurrence of c to another (possibly the same), with value r.
    Expr middle_block(const Morphism& h, Letter c, int r) {
        require_aperiodic(h);
        if (h.letter_index(c) < 0) throw Error("letter " + letter_text(c) + " not in alphabet");
        if (r < 0 || r >= h.monoid.size) throw Error("element out of range");
        Ctx& ctx = get_ctx(h, c);
        if (ctx.divisor.to_quotient[r] < 0)
            throw Error("element " + std::to_string(r) + " is not of the form " +
                        std::to_string(h.image(c)) + "·x = y·" + std::to_string(h.image(c)));
        Expr x = sigma_of(h, ctx, ctx.divisor.to_quotient[r], Measure{INT_MAX, INT_MAX});
        Expr eps = builder_.epsilon(ctx.b_alphabet);
        if constexpr (Builder::left)
            return builder_.append_c(x, c, eps, h.alphabet);
        else
            return builder_.prepend_c(eps, c, x, h.alphabet);
    }

private:
    struct Measure {
        int monoid, alphabet;
        bool operator<(const Measure& o) const {
            return monoid != o.monoid ? monoid < o.monoid : alphabet < o.alphabet;
        }
    };

    // Per-morphism split data, built once and cached.
    struct Ctx {
        Letter c = 0;
        Alphabet b_alphabet;
        std::vector<int> t_elems;  // sorted elements of T = h(B*)
        Alphabet derived;          // fresh letters, parallel to t_elems
        LocalDivisor divisor;
        Morphism g;  // h restricted to B
        Morphism f;  // derived letter t ↦ class of h(c)·t·h(c) in the divisor
        std::vector<int> f_reachable;
        std::string key;
    };

    void require_aperiodic(const Morphism& h) {
        if (auto w = aperiodicity_witness(h.monoid)) throw NonAperiodicError(*w);
    }

    Ctx& get_ctx(const Morphism& h, Letter c) {
        std::string key = morphism_key(h) + "@" + std::to_string(c);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = ctx_.find(key);
            if (it != ctx_.end()) return *it->second;
        }
        auto ctx = std::make_shared<Ctx>();
        ctx->c = c;
        ctx->key = key;
        ctx->b_alphabet = alphabet_without(h.alphabet, c);
        ctx->t_elems = submonoid_image(h, ctx->b_alphabet);
        Letter base = first_synthetic_letter;
        for (Letter a : h.alphabet) base = std::max(base, a + 1);
        for (std::size_t i = 0; i < ctx->t_elems.size(); ++i)
            ctx->derived.push_back(base + static_cast<Letter>(i));
        int hc = h.image(c);
        ctx->divisor = local_divisor(h.monoid, hc);
        std::vector<int> g_images;
        for (Letter b : ctx->b_alphabet) g_images.push_back(h.image(b));
        ctx->g = make_morphism(ctx->b_alphabet, g_images, h.monoid);
        std::vector<int> f_images;
        for (int t : ctx->t_elems) {
            int q = ctx->divisor.to_quotient[h.monoid.mul(h.monoid.mul(hc, t), hc)];
            if (q < 0) throw Error("internal: h(c)·t·h(c) fell outside the carrier");
            f_images.push_back(q);
        }
        ctx->f = make_morphism(ctx->derived, f_images, ctx->divisor.quotient);
        ctx->f_reachable = submonoid_image(ctx->f, ctx->derived);
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = ctx_.emplace(std::move(key), std::move(ctx));
        (void)fresh;
        return *it->second;
    }

    // σ⁻¹(f⁻¹(rq)) as an expression over A: the c-block decomposition of the
    // middle part, before the final glue to c and the B-side pieces.
    Expr sigma_of(const Morphism& h, Ctx& ctx, int rq, Measure parent) {
        Expr k_t = synth_rec(ctx.f, rq, parent);
        SigmaContext<Expr> sc;
        sc.base_alphabet = h.alphabet;
        sc.c = ctx.c;
        sc.derived = ctx.derived;
        sc.key = ctx.key;
        Morphism g = ctx.g;
        std::vector<int> t_elems = ctx.t_elems;
        Letter first = ctx.derived.empty() ? 0 : ctx.derived.front();
        sc.g_inverse = [this, g, t_elems, first, parent](Letter t) {
            std::size_t i = t - first;
            if (i >= t_elems.size()) throw Error("internal: unknown derived letter");
            return synth_rec(g, t_elems[i], parent);
        };
        return builder_.sigma_preimage(k_t, sc);
    }

    Expr synth_rec(const Morphism& h, int p, Measure parent) {
        Measure mine{h.monoid.size, static_cast<int>(h.alphabet.size())};
        if (!(mine < parent)) throw Error("internal: recursion measure did not decrease");
        if (p < 0 || p >= h.monoid.size) throw Error("element out of range");

        std::string key = morphism_key(h) + "#" + std::to_string(p);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                ++stats_.memo_hits;
                return it->second;
            }
            ++stats_.memo_misses;
        }

        Expr result = compute(h, p, mine);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(std::move(key), std::move(result)).first->second;
    }

    Expr compute(const Morphism& h, int p, Measure mine) {
        bool trivial = true;
        for (int img : h.images) trivial = trivial && img == h.monoid.identity;
        if (trivial)
            return p == h.monoid.identity ? builder_.full(h.alphabet) : builder_.empty(h.alphabet);

        std::vector<int> reach = submonoid_image(h, h.alphabet);
        if (!std::binary_search(reach.begin(), reach.end(), p)) return builder_.empty(h.alphabet);

        Letter c = choose_letter(h);
        Ctx& ctx = get_ctx(h, c);
        if (ctx.divisor.quotient.size >= h.monoid.size)
            throw Error("internal: local divisor did not shrink");

        // Words without c.
        Expr result = builder_.lift_alphabet(synth_rec(ctx.g, p, mine), h.alphabet);

        // Words with c: q · (middle block with value r) · s for q·r·s = p.
        const MonoidTable& m = h.monoid;
        for (int r : ctx.divisor.carrier) {
            int rq = ctx.divisor.to_quotient[r];
            if (!std::binary_search(ctx.f_reachable.begin(), ctx.f_reachable.end(), rq)) continue;
            bool used = false;
            for (int q : ctx.t_elems)
                for (int s : ctx.t_elems) used = used || m.mul(m.mul(q, r), s) == p;
            if (!used) continue;
            Expr x = sigma_of(h, ctx, rq, mine);
            if constexpr (Builder::left) {
                for (int s : ctx.t_elems) {
                    int rs = m.mul(r, s);
                    bool needed = false;
                    for (int q : ctx.t_elems) needed = needed || m.mul(q, rs) == p;
                    if (!needed) continue;
                    Expr mid = builder_.append_c(x, c, synth_rec(ctx.g, s, mine), h.alphabet);
                    for (int q : ctx.t_elems)
                        if (m.mul(q, rs) == p)
                            result = builder_.unite(
                                result,
                                builder_.concat_into_c_side(synth_rec(ctx.g, q, mine), mid, c));
                }
            } else {
                for (int q : ctx.t_elems) {
                    int qr = m.mul(q, r);
                    bool needed = false;
                    for (int s : ctx.t_elems) needed = needed || m.mul(qr, s) == p;
                    if (!needed) continue;
                    Expr pre = builder_.prepend_c(synth_rec(ctx.g, q, mine), c, x, h.alphabet);
                    for (int s : ctx.t_elems)
                        if (m.mul(qr, s) == p)
                            result = builder_.unite(
                                result,
                                builder_.concat_into_c_side(pre, synth_rec(ctx.g, s, mine), c));
                }
            }
        }
        return result;
    }

    Builder builder_;
    mutable std::mutex mu_;
    std::map<std::string, Expr> memo_;
    std::map<std::string, std::shared_ptr<Ctx>> ctx_;
    Stats stats_;
};

}  // namespace locdiv
