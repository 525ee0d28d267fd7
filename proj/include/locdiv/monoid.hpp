/* Finite monoids as multiplication tables, morphisms from free monoids,
 * and the local divisor construction. */
#pragma once

#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "locdiv/core.hpp"

namespace locdiv {

struct MonoidTable {
    int size = 1;
    int identity = 0;
    std::vector<int> table{0};  // row-major: table[x * size + y] = x*y

    int mul(int x, int y) const { return table[x * size + y]; }
};

// Builds a monoid after checking the axioms.  The diagnostics name the first
// violating entry or triple, which is what the CLI surfaces on bad input.
inline MonoidTable make_monoid(int size, int identity, std::vector<int> table) {
    if (size < 1) throw Error("monoid size must be at least 1");
    if (identity < 0 || identity >= size)
        throw Error("identity index " + std::to_string(identity) + " out of range");
    if (static_cast<int>(table.size()) != size * size)
        throw Error("multiplication table has " + std::to_string(table.size()) +
                    " entries, expected " + std::to_string(size * size));
    for (int i = 0; i < size * size; ++i)
        if (table[i] < 0 || table[i] >= size)
            throw Error("table entry " + std::to_string(table[i]) + " at position " +
                        std::to_string(i) + " out of range");
    MonoidTable m{size, identity, std::move(table)};
    for (int x = 0; x < size; ++x) {
        if (m.mul(m.identity, x) != x || m.mul(x, m.identity) != x)
            throw Error("element " + std::to_string(identity) +
                        " is not a two-sided identity (fails on " + std::to_string(x) + ")");
    }
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y)
            for (int z = 0; z < size; ++z)
                if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)))
                    throw Error("multiplication is not associative at (" + std::to_string(x) +
                                "," + std::to_string(y) + "," + std::to_string(z) + "): (xy)z=" +
                                std::to_string(m.mul(m.mul(x, y), z)) + " but x(yz)=" +
                                std::to_string(m.mul(x, m.mul(y, z))));
    return m;
}

inline bool is_idempotent(const MonoidTable& m, int x) { return m.mul(x, x) == x; }

// x^k for k >= 1 by repeated squaring; exponents can exceed the monoid size
// when callers probe x^omega against x^{omega+1}.
inline int element_power(const MonoidTable& m, int x, long long k) {
    if (k < 1) throw Error("element_power requires a positive exponent");
    int acc = m.identity;
    int base = x;
    while (k > 0) {
        if (k & 1) acc = m.mul(acc, base);
        base = m.mul(base, base);
        k >>= 1;
    }
    return acc;
}

// Index (steps before the power sequence enters its cycle) and period of the
// cyclic part of x, x^2, x^3, ...
inline std::pair<int, int> power_index_period(const MonoidTable& m, int x) {
    std::unordered_map<int, int> seen;  // element -> exponent
    int cur = x;
    for (int e = 1;; ++e) {
        auto it = seen.find(cur);
        if (it != seen.end()) return {it->second, e - it->second};
        seen.emplace(cur, e);
        cur = m.mul(cur, x);
    }
}

// Smallest omega >= 1 with (x^omega)^2 = x^omega for every x: the least
// common multiple of all cycle periods, rounded up to clear every index.
inline long long idempotent_power(const MonoidTable& m) {
    long long lcm = 1;
    long long max_index = 1;
    for (int x = 0; x < m.size; ++x) {
        auto [idx, per] = power_index_period(m, x);
        max_index = std::max<long long>(max_index, idx);
        lcm = std::lcm(lcm, static_cast<long long>(per));
        if (lcm > (1LL << 40)) throw Error("idempotent power overflow");
    }
    long long omega = ((max_index + lcm - 1) / lcm) * lcm;
    for (int x = 0; x < m.size; ++x) {
        int p = element_power(m, x, omega);
        if (m.mul(p, p) != p) throw Error("internal: idempotent power candidate rejected");
    }
    return omega;
}

inline bool is_unit(const MonoidTable& m, int x) {
    bool left = false, right = false;
    for (int y = 0; y < m.size && !(left && right); ++y) {
        if (m.mul(y, x) == m.identity) left = true;
        if (m.mul(x, y) == m.identity) right = true;
    }
    return left && right;
}

// First element with x^omega != x^{omega+1}, if any.
inline std::optional<int> aperiodicity_witness(const MonoidTable& m) {
    long long omega = idempotent_power(m);
    for (int x = 0; x < m.size; ++x) {
        int p = element_power(m, x, omega);
        if (m.mul(p, x) != p) return x;
    }
    return std::nullopt;
}

inline bool is_aperiodic(const MonoidTable& m) { return !aperiodicity_witness(m).has_value(); }

struct Morphism {
    Alphabet alphabet;
    std::vector<int> images;  // parallel to alphabet
    MonoidTable monoid;

    int letter_index(Letter a) const {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == a) return static_cast<int>(i);
        return -1;
    }

    int image(Letter a) const {
        int i = letter_index(a);
        if (i < 0) throw Error("letter " + letter_text(a) + " not in morphism alphabet");
        return images[i];
    }

    int eval(const Word& w) const {
        int acc = monoid.identity;
        for (Letter a : w) acc = monoid.mul(acc, image(a));
        return acc;
    }
};

inline Morphism make_morphism(Alphabet alphabet, std::vector<int> images, MonoidTable monoid) {
    if (alphabet.size() != images.size())
        throw Error("morphism has " + std::to_string(alphabet.size()) + " letters but " +
                    std::to_string(images.size()) + " images");
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        for (std::size_t j = i + 1; j < alphabet.size(); ++j)
            if (alphabet[i] == alphabet[j])
                throw Error("duplicate letter " + letter_text(alphabet[i]) + " in alphabet");
        if (images[i] < 0 || images[i] >= monoid.size)
            throw Error("image " + std::to_string(images[i]) + " of letter " +
                        letter_text(alphabet[i]) + " out of range");
    }
    return Morphism{std::move(alphabet), std::move(images), std::move(monoid)};
}

// Image submonoid generated by the given letters' images, as a sorted element
// list.  Used both for derived alphabets and for reachability pruning.
inline std::vector<int> submonoid_image(const Morphism& h, const Alphabet& letters) {
    std::vector<char> in(h.monoid.size, 0);
    std::vector<int> queue;
    auto push = [&](int e) {
        if (!in[e]) {
            in[e] = 1;
            queue.push_back(e);
        }
    };
    push(h.monoid.identity);
    std::vector<int> gens;
    for (Letter a : letters) gens.push_back(h.image(a));
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (int g : gens) push(h.monoid.mul(queue[i], g));
    std::vector<int> out;
    for (int e = 0; e < h.monoid.size; ++e)
        if (in[e]) out.push_back(e);
    return out;
}

// Canonical byte strings for memo keys.
inline std::string monoid_key(const MonoidTable& m) {
    std::string s = std::to_string(m.size) + ";" + std::to_string(m.identity) + ";";
    for (int v : m.table) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

inline std::string morphism_key(const Morphism& h) {
    std::string s = monoid_key(h.monoid) + "|";
    for (std::size_t i = 0; i < h.alphabet.size(); ++i)
        s += std::to_string(h.alphabet[i]) + ":" + std::to_string(h.images[i]) + ",";
    return s;
}

/* Local divisor of M at c: carrier cM ∩ Mc with product (xc) ∘ (cy) = xcy and
 * identity c.  Divides M, and is strictly smaller whenever c is not a unit. */
struct LocalDivisor {
    MonoidTable base;
    int c = 0;
    std::vector<int> carrier;      // sorted base elements of cM ∩ Mc
    MonoidTable quotient;          // indexed by carrier position; identity at c
    std::vector<int> to_quotient;  // base element -> carrier position, or -1
};

inline LocalDivisor local_divisor(const MonoidTable& m, int c) {
    if (c < 0 || c >= m.size) throw Error("local divisor element out of range");
    std::vector<char> in_cm(m.size, 0), in_mc(m.size, 0);
    for (int x = 0; x < m.size; ++x) {
        in_cm[m.mul(c, x)] = 1;
        in_mc[m.mul(x, c)] = 1;
    }
    LocalDivisor d;
    d.base = m;
    d.c = c;
    d.to_quotient.assign(m.size, -1);
    for (int e = 0; e < m.size; ++e)
        if (in_cm[e] && in_mc[e]) {
            d.to_quotient[e] = static_cast<int>(d.carrier.size());
            d.carrier.push_back(e);
        }
    int n = static_cast<int>(d.carrier.size());
    // For z2 = c*y the product z1 ∘ z2 = z1*y does not depend on the choice
    // of y; pick the first preimage.
    std::vector<int> some_y(n, -1);
    for (int y = 0; y < m.size; ++y) {
        int q = d.to_quotient[m.mul(c, y)];
        if (q >= 0 && some_y[q] < 0) some_y[q] = y;
    }
    std::vector<int> table(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int prod = m.mul(d.carrier[i], some_y[j]);
            int q = d.to_quotient[prod];
            if (q < 0) throw Error("internal: local divisor product left the carrier");
            table[i * n + j] = q;
        }
    d.quotient = make_monoid(n, d.to_quotient[c], std::move(table));
    return d;
}

// Variant with the smaller carrier {c} ∪ cMc; same product.  Provided for
// experiments; the synthesis recursions use the full carrier.
inline LocalDivisor small_local_divisor(const MonoidTable& m, int c) {
    LocalDivisor full = local_divisor(m, c);
    std::vector<char> keep(m.size, 0);
    keep[c] = 1;
    for (int x = 0; x < m.size; ++x) keep[m.mul(m.mul(c, x), c)] = 1;
    LocalDivisor d;
    d.base = m;
    d.c = c;
    d.to_quotient.assign(m.size, -1);
    for (int e = 0; e < m.size; ++e)
        if (keep[e]) {
            if (full.to_quotient[e] < 0)
                throw Error("internal: small carrier not inside cM ∩ Mc");
            d.to_quotient[e] = static_cast<int>(d.carrier.size());
            d.carrier.push_back(e);
        }
    int n = static_cast<int>(d.carrier.size());
    std::vector<int> table(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int fi = full.to_quotient[d.carrier[i]];
            int fj = full.to_quotient[d.carrier[j]];
            int prod = full.carrier[full.quotient.mul(fi, fj)];
            if (d.to_quotient[prod] < 0)
                throw Error("internal: small local divisor product left the carrier");
            table[i * n + j] = d.to_quotient[prod];
        }
    d.quotient = make_monoid(n, d.to_quotient[c], std::move(table));
    return d;
}

}  // namespace locdiv
