#pragma once
// Weighted string rewriting.  A system is a finite set of rules over a
// weighted alphabet; when every rule strictly drops the weight, reduction
// terminates and normal forms are computable in linear time with a stack.
// On top of that sit a critical-pair confluence test, breadth-first
// enumeration of irreducible words (the congruence classes of a confluent
// system), and a recursive construction that turns any morphism onto an
// aperiodic monoid into a confluent weight-reducing system of finite index
// through which the morphism factorizes.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "locdiv/core.hpp"
#include "locdiv/localizer.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

/* ---------- weighted alphabets ---------- */

struct WeightedAlphabet {
    Alphabet letters;                // sorted, duplicate-free
    std::vector<long long> weights;  // parallel to letters, all positive

    long long weight_of(Letter a) const {
        for (std::size_t i = 0; i < letters.size(); ++i)
            if (letters[i] == a) return weights[i];
        throw Error("no weight for letter " + letter_text(a));
    }

    long long word_weight(const Word& w) const {
        long long total = 0;
        for (Letter a : w) total += weight_of(a);
        return total;
    }
};

inline WeightedAlphabet make_weighted_alphabet(Alphabet letters, std::vector<long long> weights) {
    if (letters.size() != weights.size())
        throw Error("weighted alphabet has " + std::to_string(letters.size()) + " letters but " +
                    std::to_string(weights.size()) + " weights");
    std::vector<std::pair<Letter, long long>> entries;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (weights[i] <= 0)
            throw Error("weight of letter " + letter_text(letters[i]) + " must be positive");
        entries.emplace_back(letters[i], weights[i]);
    }
    std::sort(entries.begin(), entries.end());
    WeightedAlphabet out;
    for (const auto& [a, w] : entries) {
        if (!out.letters.empty() && out.letters.back() == a)
            throw Error("duplicate letter " + letter_text(a) + " in weighted alphabet");
        out.letters.push_back(a);
        out.weights.push_back(w);
    }
    return out;
}

inline WeightedAlphabet unit_weights(const Alphabet& letters) {
    return make_weighted_alphabet(letters, std::vector<long long>(letters.size(), 1));
}

/* ---------- semi-Thue systems ---------- */

struct RewriteRule {
    Word lhs;
    Word rhs;
    bool operator==(const RewriteRule&) const = default;
};

struct SemiThueSystem {
    WeightedAlphabet alphabet;
    std::vector<RewriteRule> rules;  // sorted by (lhs, rhs), duplicate-free
};

inline SemiThueSystem make_system(WeightedAlphabet alphabet, std::vector<RewriteRule> rules) {
    for (const RewriteRule& r : rules) {
        if (r.lhs.empty()) throw Error("rewrite rule with empty left side");
        for (Letter a : r.lhs) alphabet.weight_of(a);
        for (Letter a : r.rhs) alphabet.weight_of(a);
    }
    std::sort(rules.begin(), rules.end(), [](const RewriteRule& x, const RewriteRule& y) {
        return x.lhs != y.lhs ? x.lhs < y.lhs : x.rhs < y.rhs;
    });
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    return SemiThueSystem{std::move(alphabet), std::move(rules)};
}

inline bool is_weight_reducing(const SemiThueSystem& s) {
    for (const RewriteRule& r : s.rules)
        if (s.alphabet.word_weight(r.lhs) <= s.alphabet.word_weight(r.rhs)) return false;
    return true;
}

/* ---------- normal forms ---------- */

namespace detail {

// Left-to-right reduction with a stack.  Invariant: the output buffer is
// irreducible after every step, because a new redex must end at the letter
// just pushed and removing a suffix of an irreducible word leaves a prefix,
// which is again irreducible.  Each rewrite strictly drops the total weight,
// so for a fixed system the whole pass is linear in the input length.
inline Word reduce(const SemiThueSystem& s, const Word& w) {
    Word out;
    out.reserve(w.size());
    Word pending(w.rbegin(), w.rend());
    while (!pending.empty()) {
        out.push_back(pending.back());
        pending.pop_back();
        for (const RewriteRule& r : s.rules) {
            std::size_t n = r.lhs.size();
            if (out.size() < n) continue;
            if (!std::equal(r.lhs.begin(), r.lhs.end(), out.end() - n)) continue;
            out.resize(out.size() - n);
            pending.insert(pending.end(), r.rhs.rbegin(), r.rhs.rend());
            break;
        }
    }
    return out;
}

}  // namespace detail

// Deterministic: scans left to right and applies the first rule (in sorted
// order) whose left side ends at the current position.  For a confluent
// system the result is the unique normal form; otherwise it is a fixed
// representative among the irreducible descendants.
inline Word normal_form(const SemiThueSystem& s, const Word& w) {
    if (!is_weight_reducing(s)) throw Error("normal form needs a weight-reducing system");
    return detail::reduce(s, w);
}

/* ---------- confluence ---------- */

// A peak with two one-step reducts whose normal forms differ.  Two distinct
// irreducible descendants of one word refute confluence no matter which
// reduction strategy produced them.
struct ConfluencePeak {
    Word peak;
    Word left;
    Word right;
};

inline std::optional<ConfluencePeak> confluence_peak(const SemiThueSystem& s) {
    if (!is_weight_reducing(s)) throw Error("confluence check needs a weight-reducing system");
    auto joins = [&](const Word& x, const Word& y) { return detail::reduce(s, x) == detail::reduce(s, y); };
    for (std::size_t i = 0; i < s.rules.size(); ++i) {
        const Word& li = s.rules[i].lhs;
        const Word& ri = s.rules[i].rhs;
        for (std::size_t j = 0; j < s.rules.size(); ++j) {
            const Word& lj = s.rules[j].lhs;
            const Word& rj = s.rules[j].rhs;
            // Proper overlap: a nonempty proper suffix of li is a prefix of lj.
            for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
                if (!std::equal(li.end() - k, li.end(), lj.begin())) continue;
                Word peak(li);
                peak.insert(peak.end(), lj.begin() + k, lj.end());
                Word left(ri);
                left.insert(left.end(), lj.begin() + k, lj.end());
                Word right(li.begin(), li.end() - k);
                right.insert(right.end(), rj.begin(), rj.end());
                if (!joins(left, right)) return ConfluencePeak{peak, left, right};
            }
            // Containment: lj occurs inside li.  Two rules with the same left
            // side still count; only a rule against itself at the same spot
            // is skipped.
            if (lj.size() > li.size()) continue;
            for (std::size_t p = 0; p + lj.size() <= li.size(); ++p) {
                if (i == j && lj.size() == li.size()) break;
                if (!std::equal(lj.begin(), lj.end(), li.begin() + p)) continue;
                Word right(li.begin(), li.begin() + p);
                right.insert(right.end(), rj.begin(), rj.end());
                right.insert(right.end(), li.begin() + p + lj.size(), li.end());
                if (!joins(ri, right)) return ConfluencePeak{li, ri, right};
            }
        }
    }
    return std::nullopt;
}

// Local confluence of every critical pair plus termination (weight-reducing)
// gives confluence by Newman's lemma.
inline bool is_confluent(const SemiThueSystem& s) { return !confluence_peak(s).has_value(); }

/* ---------- irreducible words and congruence classes ---------- */

struct IrreducibleSet {
    std::vector<Word> words;  // in length-lexicographic order, starts with the empty word
    bool complete;            // false when a cap stopped the search
};

// Breadth-first by length.  A word is irreducible iff no left side occurs in
// it; since prefixes of irreducible words are irreducible, it suffices to
// extend the previous level by one letter and test suffixes.  An empty level
// proves there is nothing longer, so finite sets are detected exactly; the
// caps only guard against systems of infinite index.
inline IrreducibleSet enumerate_irreducible(const SemiThueSystem& s, std::size_t max_words = 10000,
                                            std::size_t max_len = 64) {
    IrreducibleSet out{{Word{}}, true};
    std::vector<Word> level{Word{}};
    while (!level.empty()) {
        std::vector<Word> next;
        for (const Word& w : level) {
            for (Letter a : s.alphabet.letters) {
                Word c(w);
                c.push_back(a);
                bool redex = false;
                for (const RewriteRule& r : s.rules) {
                    std::size_t n = r.lhs.size();
                    if (c.size() >= n && std::equal(r.lhs.begin(), r.lhs.end(), c.end() - n)) {
                        redex = true;
                        break;
                    }
                }
                if (!redex) next.push_back(std::move(c));
            }
        }
        if (next.empty()) break;
        if (out.words.size() + next.size() > max_words || next.front().size() > max_len) {
            out.complete = false;
            break;
        }
        out.words.insert(out.words.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

struct CongruenceIndex {
    std::vector<Word> irreducibles;                 // length-lexicographic
    std::map<Word, int> class_of;                   // irreducible word -> position
    std::vector<std::vector<int>> multiplication;   // [u][v] = class of normal_form(uv)
    int classes() const { return static_cast<int>(irreducibles.size()); }
};

// For a confluent system this is the quotient monoid: classes are in
// bijection with irreducible words and the product is the normal form of the
// concatenation.  Without confluence the table still multiplies the
// deterministic representatives, but distinct irreducibles may be congruent.
inline CongruenceIndex class_index(const SemiThueSystem& s, std::size_t max_words = 10000,
                                   std::size_t max_len = 64) {
    if (!is_weight_reducing(s)) throw Error("class index needs a weight-reducing system");
    IrreducibleSet irr = enumerate_irreducible(s, max_words, max_len);
    if (!irr.complete) throw Error("possibly infinite index");
    CongruenceIndex out;
    out.irreducibles = std::move(irr.words);
    for (std::size_t i = 0; i < out.irreducibles.size(); ++i)
        out.class_of[out.irreducibles[i]] = static_cast<int>(i);
    std::size_t n = out.irreducibles.size();
    out.multiplication.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Word uv(out.irreducibles[i]);
            uv.insert(uv.end(), out.irreducibles[j].begin(), out.irreducibles[j].end());
            auto it = out.class_of.find(detail::reduce(s, uv));
            if (it == out.class_of.end())
                throw Error("internal: normal form escaped the enumerated irreducible set");
            out.multiplication[i][j] = it->second;
        }
    }
    return out;
}

/* ---------- factorization through a system ---------- */

// True when rewriting never changes the image under h: checked on every rule
// in all contexts up to length 2 and, redundantly but directly, as
// h(w) = h(normal_form(w)) for every word up to maxlen.
inline bool factorizes_through(const Morphism& h, const SemiThueSystem& s, int maxlen) {
    if (!is_weight_reducing(s)) throw Error("factorization check needs a weight-reducing system");
    std::vector<Word> contexts{Word{}};
    for (Letter a : h.alphabet) contexts.push_back({a});
    for (Letter a : h.alphabet)
        for (Letter b : h.alphabet) contexts.push_back({a, b});
    for (const RewriteRule& r : s.rules) {
        for (const Word& p : contexts) {
            for (const Word& q : contexts) {
                Word plq(p), prq(p);
                plq.insert(plq.end(), r.lhs.begin(), r.lhs.end());
                plq.insert(plq.end(), q.begin(), q.end());
                prq.insert(prq.end(), r.rhs.begin(), r.rhs.end());
                prq.insert(prq.end(), q.begin(), q.end());
                if (h.eval(plq) != h.eval(prq)) return false;
            }
        }
    }
    std::vector<Word> level{Word{}};
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<Word> next;
        for (const Word& w : level) {
            for (Letter a : h.alphabet) {
                Word c(w);
                c.push_back(a);
                if (h.eval(c) != h.eval(detail::reduce(s, c))) return false;
                next.push_back(std::move(c));
            }
        }
        level = std::move(next);
    }
    return true;
}

/* ---------- construction from an aperiodic morphism ---------- */

// Letter to localize at: any non-unit image works, but the choice drives
// the output size.  Removing c costs one token per irreducible c-free
// word, and those tokens land in the local divisor at h(c); a large
// carrier means deeper recursion on the monoid side and more rounds of
// token-squaring on the way down, which is where systems explode (a chain
// of j letters sharing an absorbing image already has on the order of
// 2^(2^j) irreducible words).  Picking the smallest carrier first keeps
// every system small in practice; ties fall back to alphabet order.
inline Letter choose_crs_letter(const Morphism& h) {
    std::size_t best = h.alphabet.size();
    std::size_t best_carrier = 0;
    for (std::size_t i = 0; i < h.alphabet.size(); ++i) {
        if (is_unit(h.monoid, h.images[i])) continue;
        std::size_t carrier = local_divisor(h.monoid, h.images[i]).carrier.size();
        if (best == h.alphabet.size() || carrier < best_carrier) {
            best = i;
            best_carrier = carrier;
        }
    }
    if (best == h.alphabet.size()) throw Error("choose_crs_letter: every letter image is a unit");
    return h.alphabet[best];
}

struct CrsBuild {
    SemiThueSystem system;
    bool base_case;   // every letter image is the identity
    Letter chosen_c;  // localized letter otherwise
    int block_count;  // number of block words (irreducible c-free words, each extended by c)
    int m;            // longest irreducible word of the c-free subsystem
    int k;            // longest irreducible block word of the quotient-level system
};

namespace detail {

inline CrsBuild build_crs_rec(const Morphism& h, const WeightedAlphabet& weights,
                              std::pair<int, std::size_t> parent) {
    std::pair<int, std::size_t> mine{h.monoid.size, h.alphabet.size()};
    if (mine >= parent) throw Error("internal: recursion measure did not decrease");
    if (aperiodicity_witness(h.monoid))
        throw Error("internal: non-aperiodic monoid inside the rewriting construction");

    bool trivial = true;
    for (int img : h.images)
        if (img != h.monoid.identity) trivial = false;
    if (trivial) {
        std::vector<RewriteRule> rules;
        for (Letter a : h.alphabet) rules.push_back({{a}, {}});
        return CrsBuild{make_system(weights, std::move(rules)), true, 0, 0, 0, 0};
    }

    Letter c = choose_crs_letter(h);

    // Remove c and rewrite the rest of the alphabet by recursion.
    Alphabet b_alpha;
    std::vector<int> b_images;
    std::vector<long long> b_weights;
    for (std::size_t i = 0; i < h.alphabet.size(); ++i) {
        if (h.alphabet[i] == c) continue;
        b_alpha.push_back(h.alphabet[i]);
        b_images.push_back(h.images[i]);
        b_weights.push_back(weights.weight_of(h.alphabet[i]));
    }
    CrsBuild sub = build_crs_rec(make_morphism(b_alpha, b_images, h.monoid),
                                 make_weighted_alphabet(b_alpha, b_weights), mine);

    // The subsystem is confluent and weight-reducing by induction, so its
    // irreducible words form a finite set; the generous caps only bound the
    // memory a degenerate input can claim before we give up.
    IrreducibleSet irr = enumerate_irreducible(sub.system, 1'000'000, 4096);
    if (!irr.complete)
        throw Error("internal: c-free subsystem has too many irreducible words to enumerate");
    int m = 0;
    for (const Word& u : irr.words) m = std::max(m, static_cast<int>(u.size()));

    // One fresh token per block word uc, weighted like uc, mapped to the
    // class of h(c)h(u)h(c) in the local divisor at h(c).
    Letter base = first_synthetic_letter;
    for (Letter a : h.alphabet) base = std::max(base, a + 1);
    int hc = h.image(c);
    LocalDivisor div = local_divisor(h.monoid, hc);
    Alphabet tokens;
    std::vector<int> g_images;
    std::vector<long long> token_weights;
    for (std::size_t i = 0; i < irr.words.size(); ++i) {
        tokens.push_back(base + static_cast<Letter>(i));
        int e = hc;
        for (Letter a : irr.words[i]) e = h.monoid.mul(e, h.image(a));
        e = h.monoid.mul(e, hc);
        int q = div.to_quotient[e];
        if (q < 0) throw Error("internal: block image left the local divisor carrier");
        g_images.push_back(q);
        token_weights.push_back(weights.word_weight(irr.words[i]) + weights.weight_of(c));
    }
    CrsBuild quot = build_crs_rec(make_morphism(tokens, g_images, div.quotient),
                                  make_weighted_alphabet(tokens, token_weights), mine);

    IrreducibleSet irr_q = enumerate_irreducible(quot.system, 1'000'000, 4096);
    if (!irr_q.complete)
        throw Error("internal: quotient-level system has too many irreducible words to enumerate");
    int k = 0;
    for (const Word& u : irr_q.words) k = std::max(k, static_cast<int>(u.size()));

    // Translate the block-level rules back: each token expands to its block
    // word uc, and the whole rule is prefixed with one more c.  Left sides
    // then start with c and every c-free factor of one sits inside some
    // irreducible u, so the two rule families cannot overlap.
    auto expand = [&](const Word& block_word) {
        Word out{c};
        for (Letter t : block_word) {
            const Word& u = irr.words[t - base];
            out.insert(out.end(), u.begin(), u.end());
            out.push_back(c);
        }
        return out;
    };
    std::vector<RewriteRule> rules = sub.system.rules;
    for (const RewriteRule& r : rules)
        for (Letter a : r.lhs)
            if (a == c) throw Error("internal: c-free subsystem rule mentions the localized letter");
    for (const RewriteRule& r : quot.system.rules) rules.push_back({expand(r.lhs), expand(r.rhs)});

    return CrsBuild{make_system(weights, std::move(rules)),
                    false,
                    c,
                    static_cast<int>(tokens.size()),
                    m,
                    k};
}

}  // namespace detail

// Recursive construction of a confluent weight-reducing system of finite
// index through which h factorizes.  Base case: all letters map to the
// identity, and every letter rewrites to the empty word.  Otherwise a letter
// c with non-identity image is removed (recursion on fewer letters), the
// irreducible c-free words extended by c become the block alphabet of a
// morphism into the local divisor at h(c) (recursion on a smaller monoid),
// and the block-level rules are translated back with a leading c.  Every
// irreducible word of the result has length at most (k+2)m + k + 1.
inline CrsBuild build_crs(const Morphism& h, const WeightedAlphabet& weights) {
    if (auto w = aperiodicity_witness(h.monoid)) throw NonAperiodicError(*w);
    Alphabet sorted_alpha(h.alphabet);
    std::sort(sorted_alpha.begin(), sorted_alpha.end());
    if (sorted_alpha != weights.letters) throw Error("weights do not match the morphism alphabet");
    return detail::build_crs_rec(h, weights, {h.monoid.size, h.alphabet.size() + 1});
}

inline CrsBuild build_crs(const Morphism& h) { return build_crs(h, unit_weights(h.alphabet)); }

/* ---------- text format ---------- */

// One rule per line, `lhs -> rhs`, the empty word written `_`, with an
// optional first line `weights a=1 b=2`.  Letters are single alphanumeric
// characters; unlisted letters default to weight 1.

namespace detail {

inline std::string print_crs_word(const Word& w) {
    if (w.empty()) return "_";
    std::string out;
    for (Letter a : w) {
        if (a >= first_synthetic_letter) throw Error("text format needs single-character letters");
        out += static_cast<char>(a);
    }
    return out;
}

inline Word parse_crs_word(const std::string& s, const std::string& line) {
    if (s == "_") return {};
    Word out;
    for (char ch : s) {
        if (!std::isalnum(static_cast<unsigned char>(ch)))
            throw Error("bad letter '" + std::string(1, ch) + "' in rule \"" + line + "\"");
        out.push_back(static_cast<Letter>(static_cast<unsigned char>(ch)));
    }
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::string print_system(const SemiThueSystem& s) {
    std::string out;
    bool weighted = false;
    for (long long w : s.alphabet.weights)
        if (w != 1) weighted = true;
    if (weighted) {
        out += "weights";
        for (std::size_t i = 0; i < s.alphabet.letters.size(); ++i) {
            Word single{s.alphabet.letters[i]};
            out += " " + detail::print_crs_word(single) + "=" + std::to_string(s.alphabet.weights[i]);
        }
        out += "\n";
    }
    for (const RewriteRule& r : s.rules)
        out += detail::print_crs_word(r.lhs) + " -> " + detail::print_crs_word(r.rhs) + "\n";
    return out;
}

inline SemiThueSystem parse_system_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<Letter, long long> weight;
    std::vector<RewriteRule> rules;
    bool first = true;
    while (std::getline(in, line)) {
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (first && t.rfind("weights", 0) == 0) {
            first = false;
            std::istringstream ws(t.substr(7));
            std::string entry;
            while (ws >> entry) {
                std::size_t eq = entry.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw Error("bad weight entry \"" + entry + "\"");
                Word letter = detail::parse_crs_word(entry.substr(0, eq), t);
                long long value = 0;
                try {
                    value = std::stoll(entry.substr(eq + 1));
                } catch (const std::exception&) {
                    throw Error("bad weight entry \"" + entry + "\"");
                }
                if (letter.size() != 1) throw Error("bad weight entry \"" + entry + "\"");
                weight[letter[0]] = value;
            }
            continue;
        }
        first = false;
        std::size_t arrow = t.find("->");
        if (arrow == std::string::npos) throw Error("rule line needs \"->\": \"" + t + "\"");
        Word lhs = detail::parse_crs_word(detail::trim(t.substr(0, arrow)), t);
        Word rhs = detail::parse_crs_word(detail::trim(t.substr(arrow + 2)), t);
        rules.push_back({std::move(lhs), std::move(rhs)});
    }
    for (const RewriteRule& r : rules) {
        for (Letter a : r.lhs)
            if (!weight.count(a)) weight[a] = 1;
        for (Letter a : r.rhs)
            if (!weight.count(a)) weight[a] = 1;
    }
    Alphabet letters;
    std::vector<long long> weights;
    for (const auto& [a, w] : weight) {
        letters.push_back(a);
        weights.push_back(w);
    }
    return make_system(make_weighted_alphabet(std::move(letters), std::move(weights)),
                       std::move(rules));
}

inline SemiThueSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_text(buf.str());
}

}  // namespace locdiv
