/* Bulk agreement checks between synthesized artifacts and the automata they
 * came from, plus the small instrumentation (timers, fingerprints) shared by
 * the command-line tool and the acceptance suite.
 *
 * Agreement is measured on every nonempty word up to a length cap.  The
 * empty word is tracked separately: formula satisfaction needs a position,
 * so synthesis records epsilon membership out of band.
 */
#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locdiv/automata.hpp"
#include "locdiv/core.hpp"
#include "locdiv/ltl.hpp"
#include "locdiv/sd.hpp"

namespace locdiv {

/* ---------- whole-word formula evaluation ---------- */

// Satisfaction of f at every position of w in one bottom-up pass: result[i]
// holds the value at 1-based position i+1.  Equivalent to eval_ltl at each
// position but linear in |dag| * |w| (until runs right to left).
inline std::vector<char> eval_ltl_sweep(const LtlPtr& f, const Word& w) {
    int n = static_cast<int>(w.size());
    if (n == 0) throw Error("formula evaluation needs a nonempty word");
    std::map<const LtlNode*, std::vector<char>> val;
    auto ev = [&](auto&& self, const LtlNode* node) -> const std::vector<char>& {
        auto it = val.find(node);
        if (it != val.end()) return it->second;
        std::vector<char> v(static_cast<std::size_t>(n), 0);
        switch (node->kind) {
            case LtlNode::True:
                v.assign(static_cast<std::size_t>(n), 1);
                break;
            case LtlNode::Atom:
                for (int i = 0; i < n; ++i) v[i] = w[i] == node->letter;
                break;
            case LtlNode::Not: {
                const auto& a = self(self, node->a.get());
                for (int i = 0; i < n; ++i) v[i] = !a[i];
                break;
            }
            case LtlNode::Or: {
                const auto& a = self(self, node->a.get());
                const auto& b = self(self, node->b.get());
                for (int i = 0; i < n; ++i) v[i] = a[i] || b[i];
                break;
            }
            case LtlNode::Next: {
                const auto& a = self(self, node->a.get());
                for (int i = 0; i + 1 < n; ++i) v[i] = a[i + 1];
                break;
            }
            case LtlNode::Until: {
                const auto& a = self(self, node->a.get());
                const auto& b = self(self, node->b.get());
                for (int i = n - 1; i >= 0; --i)
                    v[i] = b[i] || (a[i] && i + 1 < n && v[i + 1]);
                break;
            }
        }
        return val.emplace(node, std::move(v)).first->second;
    };
    return ev(ev, f.get());
}

/* ---------- packed evaluation, all words of one length at once ---------- */

namespace detail {

// Formula dag as a flat vector with children listed before parents, so a
// single forward pass evaluates bottom-up.  Nodes are deduplicated by
// structure, not pointer: synthesis freely rebuilds equal subformulas, and
// folding them here keeps the evaluation buffers proportional to distinct
// structure.  Iterative walk, since synthesized formulas nest deeply.
struct LtlDag {
    std::vector<LtlNode::Kind> kind;
    std::vector<Letter> letter;
    std::vector<int> a, b;  // child positions, -1 when absent
    std::size_t size() const { return kind.size(); }
};

inline LtlDag flatten_ltl(const LtlPtr& f) {
    LtlDag dag;
    std::unordered_map<const LtlNode*, int> by_node;
    std::map<std::tuple<int, Letter, int, int>, int> by_shape;
    std::vector<std::pair<const LtlNode*, bool>> stack{{f.get(), false}};
    while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (by_node.count(n)) continue;
        if (!expanded) {
            stack.emplace_back(n, true);
            if (n->a && !by_node.count(n->a.get())) stack.emplace_back(n->a.get(), false);
            if (n->b && !by_node.count(n->b.get())) stack.emplace_back(n->b.get(), false);
            continue;
        }
        int ca = n->a ? by_node.at(n->a.get()) : -1;
        int cb = n->b ? by_node.at(n->b.get()) : -1;
        std::tuple<int, Letter, int, int> shape{n->kind, n->letter, ca, cb};
        auto it = by_shape.find(shape);
        int at;
        if (it != by_shape.end()) {
            at = it->second;
        } else {
            at = static_cast<int>(dag.size());
            dag.kind.push_back(n->kind);
            dag.letter.push_back(n->letter);
            dag.a.push_back(ca);
            dag.b.push_back(cb);
            by_shape.emplace(shape, at);
        }
        by_node.emplace(n, at);
    }
    return dag;
}

// Over all words of one length, bit pattern of "letter index at this word
// position is 1" when words are numbered with the first letter in the
// highest bit.  k is the bit position inside the word number; for k >= 6
// the value is constant across a 64-word chunk.
inline std::uint64_t position_pattern(int k, std::size_t chunk) {
    static constexpr std::uint64_t inside[6] = {
        0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
        0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
    };
    if (k < 6) return inside[k];
    return ((chunk >> (k - 6)) & 1) ? ~0ULL : 0ULL;
}

// Truth masks for every node at every position over all 2^len words on a
// two-letter alphabet; buf becomes row-major [node][position][chunk].  Bits
// beyond the word count in the last chunk are junk for the caller to mask.
inline void eval_ltl_bits(const LtlDag& dag, const Alphabet& ab, int len,
                          std::vector<std::uint64_t>& buf) {
    std::size_t chunks = ((std::size_t{1} << len) + 63) >> 6;
    std::size_t per_node = static_cast<std::size_t>(len) * chunks;
    buf.resize(dag.size() * per_node);
    for (std::size_t n = 0; n < dag.size(); ++n) {
        std::uint64_t* row = buf.data() + n * per_node;
        const std::uint64_t* ra =
            dag.a[n] >= 0 ? buf.data() + static_cast<std::size_t>(dag.a[n]) * per_node : nullptr;
        const std::uint64_t* rb =
            dag.b[n] >= 0 ? buf.data() + static_cast<std::size_t>(dag.b[n]) * per_node : nullptr;
        switch (dag.kind[n]) {
            case LtlNode::True:
                for (std::size_t i = 0; i < per_node; ++i) row[i] = ~0ULL;
                break;
            case LtlNode::Atom: {
                Letter letter = dag.letter[n];
                for (int pos = 0; pos < len; ++pos)
                    for (std::size_t c = 0; c < chunks; ++c) {
                        std::uint64_t one = position_pattern(len - 1 - pos, c);
                        row[pos * chunks + c] =
                            letter == ab[1] ? one : (letter == ab[0] ? ~one : 0);
                    }
                break;
            }
            case LtlNode::Not:
                for (std::size_t i = 0; i < per_node; ++i) row[i] = ~ra[i];
                break;
            case LtlNode::Or:
                for (std::size_t i = 0; i < per_node; ++i) row[i] = ra[i] | rb[i];
                break;
            case LtlNode::Next:
                for (int pos = 0; pos + 1 < len; ++pos)
                    for (std::size_t c = 0; c < chunks; ++c)
                        row[pos * chunks + c] = ra[(pos + 1) * chunks + c];
                for (std::size_t c = 0; c < chunks; ++c) row[(len - 1) * chunks + c] = 0;
                break;
            case LtlNode::Until:
                for (int pos = len - 1; pos >= 0; --pos)
                    for (std::size_t c = 0; c < chunks; ++c) {
                        std::uint64_t hold =
                            pos + 1 < len ? ra[pos * chunks + c] & row[(pos + 1) * chunks + c] : 0;
                        row[pos * chunks + c] = rb[pos * chunks + c] | hold;
                    }
                break;
        }
    }
}

}  // namespace detail

// Satisfaction of f at position 1 across all 2^len words of one length over
// a two-letter alphabet: bit w of the result describes the word whose i-th
// letter is ab[bit len-1-i of w], so bit order is lexicographic.
inline std::vector<std::uint64_t> ltl_truth_mask(const LtlPtr& f, const Alphabet& ab, int len) {
    if (ab.size() != 2) throw Error("packed evaluation needs a two-letter alphabet");
    if (len < 1 || len > 24) throw Error("packed evaluation length out of range");
    detail::LtlDag dag = detail::flatten_ltl(f);
    std::vector<std::uint64_t> buf;
    detail::eval_ltl_bits(dag, ab, len, buf);
    std::size_t chunks = ((std::size_t{1} << len) + 63) >> 6;
    std::size_t root = (dag.size() - 1) * static_cast<std::size_t>(len) * chunks;
    std::vector<std::uint64_t> out(buf.begin() + root, buf.begin() + root + chunks);
    if (len < 6) out[0] &= (std::uint64_t{1} << (std::size_t{1} << len)) - 1;
    return out;
}

/* ---------- oracle agreement ---------- */

struct Agreement {
    long long matches = 0;
    long long total = 0;
    bool epsilon_ok = true;
    std::optional<Word> first_mismatch;

    bool ok() const { return epsilon_ok && matches == total; }
};

namespace detail {

// Two-letter agreement sweep: per length, evaluate the formula on all words
// at once and roll the automaton over the same numbering, then diff masks.
inline void packed_ltl_agreement(const LtlPtr& f, const Dfa& d, int maxlen, Agreement& r) {
    LtlDag dag = flatten_ltl(f);
    std::vector<std::uint64_t> buf;
    std::vector<int> prev{d.initial}, states;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t words = std::size_t{1} << len;
        std::size_t chunks = (words + 63) >> 6;
        eval_ltl_bits(dag, d.alphabet, len, buf);
        const std::uint64_t* truth =
            buf.data() + (dag.size() - 1) * static_cast<std::size_t>(len) * chunks;
        states.resize(words);
        for (std::size_t w = 0; w < words; ++w)
            states[w] = d.delta[static_cast<std::size_t>(prev[w >> 1]) * 2 + (w & 1)];
        r.total += static_cast<long long>(words);
        long long mismatched = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            std::uint64_t acc = 0;
            std::size_t base = c << 6;
            std::size_t upto = std::min<std::size_t>(64, words - base);
            for (std::size_t i = 0; i < upto; ++i)
                acc |= static_cast<std::uint64_t>(d.accepting[states[base + i]]) << i;
            std::uint64_t diff = (truth[c] ^ acc);
            if (upto < 64) diff &= (std::uint64_t{1} << upto) - 1;
            mismatched += std::popcount(diff);
            if (diff && !r.first_mismatch) {
                std::size_t w = base + static_cast<std::size_t>(std::countr_zero(diff));
                Word bad(static_cast<std::size_t>(len));
                for (int i = 0; i < len; ++i) bad[i] = d.alphabet[(w >> (len - 1 - i)) & 1];
                r.first_mismatch = std::move(bad);
            }
        }
        r.matches += static_cast<long long>(words) - mismatched;
        prev.swap(states);
    }
}

}  // namespace detail

inline Agreement check_ltl_agreement(const LtlSynthesis& out, const Dfa& d, int maxlen) {
    Agreement r;
    r.epsilon_ok = out.accepts_epsilon == d.accepts(Word{});
    if (d.alphabet.size() == 2 && maxlen <= 12) {
        detail::packed_ltl_agreement(out.formula, d, maxlen, r);
        return r;
    }
    for (const Word& w : all_words(d.alphabet, maxlen)) {
        if (w.empty()) continue;
        ++r.total;
        if (eval_ltl_sweep(out.formula, w)[0] == static_cast<char>(d.accepts(w)))
            ++r.matches;
        else if (!r.first_mismatch)
            r.first_mismatch = w;
    }
    return r;
}

inline Agreement check_sd_agreement(const SdSynthesis& out, const Dfa& d, int maxlen) {
    Agreement r;
    Dfa lhs = sd_to_dfa(out.expr, d.alphabet);
    r.epsilon_ok = out.accepts_epsilon == d.accepts(Word{}) &&
                   lhs.accepts(Word{}) == out.accepts_epsilon;
    for (const Word& w : all_words(d.alphabet, maxlen)) {
        if (w.empty()) continue;
        ++r.total;
        if (lhs.accepts(w) == d.accepts(w))
            ++r.matches;
        else if (!r.first_mismatch)
            r.first_mismatch = w;
    }
    return r;
}

/* ---------- star certificates ---------- */

struct StarReport {
    int stars = 0;
    std::optional<std::string> failure;

    bool ok() const { return !failure.has_value(); }
};

// Every starred subexpression must star a prefix code whose printed delay
// certificate survives the bounded check at maxlen 3 * (delay + 2).
inline StarReport check_star_certificates(const SdPtr& e) {
    StarReport r;
    for (const SdPtr& s : sd_collect_stars(e)) {
        ++r.stars;
        if (!is_prefix_code(s->a)) {
            r.failure = "starred expression " + print_sd(s->a) + " is not a prefix code";
            return r;
        }
        int maxlen = 3 * (s->delay + 2);
        if (!check_sync_delay(s->a, s->delay, maxlen)) {
            r.failure = "claimed delay " + std::to_string(s->delay) + " refuted for " +
                        print_sd(s->a) + " at maxlen " + std::to_string(maxlen);
            return r;
        }
    }
    return r;
}

/* ---------- instrumentation ---------- */

struct Stopwatch {
    std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();

    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
            .count();
    }
};

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
    return s;
}

// Content fingerprint of an input file, for run reports.
inline std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hex64(fnv1a64(bytes));
}

}  // namespace locdiv
