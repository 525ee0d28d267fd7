/* Shared scalar types and helpers: letters, words, alphabets, errors. */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace locdiv {

// Letters are integer codes.  Codes below 256 are literal characters; larger
// codes name synthetic letters minted for derived alphabets during recursive
// constructions.  Synthetic letters never appear in user-facing words.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using Alphabet = std::vector<Letter>;

inline constexpr Letter first_synthetic_letter = 256;

// Input errors: malformed files, out-of-range indices, bad syntax.  The CLI
// maps these to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Raised by constructions that require an aperiodic codomain; carries one
// element x with x^omega != x^{omega+1}.
struct NonAperiodicError : Error {
    explicit NonAperiodicError(int witness_element)
        : Error("monoid is not aperiodic: element " + std::to_string(witness_element) +
                " has x^omega != x^{omega+1}"),
          witness(witness_element) {}
    int witness;
};

inline std::string letter_text(Letter a) {
    if (a < first_synthetic_letter) return std::string(1, static_cast<char>(a));
    return "#" + std::to_string(a);
}

// Inverse of letter_text: one-character strings are literal letters, "#<code>"
// round-trips a synthetic letter.
inline Letter letter_from_text(const std::string& s) {
    if (s.size() == 1) return static_cast<Letter>(static_cast<unsigned char>(s[0]));
    if (s.size() > 1 && s[0] == '#') {
        try {
            unsigned long v = std::stoul(s.substr(1));
            if (v >= first_synthetic_letter) return static_cast<Letter>(v);
        } catch (const std::exception&) {
        }
    }
    throw Error("bad letter \"" + s + "\"");
}

// Empty words print as "_" (the same placeholder the rewriting-system text
// format uses), everything else as the concatenation of its letters.
inline std::string word_text(const Word& w) {
    if (w.empty()) return "_";
    std::string out;
    for (Letter a : w) out += letter_text(a);
    return out;
}

inline Word to_word(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char ch : s) w.push_back(static_cast<Letter>(static_cast<unsigned char>(ch)));
    return w;
}

inline bool contains(const Alphabet& alpha, Letter a) {
    return std::find(alpha.begin(), alpha.end(), a) != alpha.end();
}

inline Alphabet alphabet_without(const Alphabet& alpha, Letter c) {
    Alphabet out;
    out.reserve(alpha.size());
    for (Letter a : alpha)
        if (a != c) out.push_back(a);
    return out;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

// Every word over the alphabet of length <= maxlen, shortest first and
// letter order as given.  The workhorse behind brute-force cross-checks.
inline std::vector<Word> all_words(const Alphabet& alpha, int maxlen) {
    std::vector<Word> out{Word{}};
    std::size_t level_begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Letter a : alpha) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        level_begin = level_end;
    }
    return out;
}

// Seed for randomized corpora; LOCDIV_SEED overrides the fixed default so
// failures stay reproducible.
inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("LOCDIV_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw Error("LOCDIV_SEED is not a number: " + std::string(env));
    }
    return 0x5eed5eedULL;
}

}  // namespace locdiv
