/* JSON readers and writers for the on-disk formats.
 *
 * Monoid:   {"size":n, "identity":i, "table":[[row 0], [row 1], ...]}
 * Morphism: {"alphabet":["a","b"], "images":[i_a, i_b], "monoid":M}
 *           where M is an inline monoid object or a path string resolved
 *           relative to the morphism file.
 * DFA:      {"states":n, "alphabet":["a","b"], "initial":i,
 *            "accepting":[state indices], "delta":[[per-letter row], ...]}
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "locdiv/automata.hpp"
#include "locdiv/core.hpp"
#include "locdiv/monoid.hpp"

namespace locdiv {

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

namespace detail {
inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(std::string("missing field \"") + name + "\"");
    return *it;
}
}  // namespace detail

inline MonoidTable monoid_from_json(const nlohmann::json& j) {
    try {
        int size = detail::field(j, "size").get<int>();
        int identity = detail::field(j, "identity").get<int>();
        const auto& rows = detail::field(j, "table");
        if (!rows.is_array() || static_cast<int>(rows.size()) != size)
            throw Error("table must have one row per element");
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(size) * size);
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != size)
                throw Error("table rows must have one entry per element");
            for (const auto& v : row) flat.push_back(v.get<int>());
        }
        return make_monoid(size, identity, std::move(flat));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad monoid: ") + e.what());
    }
}

inline nlohmann::json monoid_to_json(const MonoidTable& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int x = 0; x < m.size; ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (int y = 0; y < m.size; ++y) row.push_back(m.mul(x, y));
        rows.push_back(std::move(row));
    }
    return {{"size", m.size}, {"identity", m.identity}, {"table", std::move(rows)}};
}

inline MonoidTable load_monoid(const std::string& path) {
    return monoid_from_json(read_json_file(path));
}

// base_dir resolves a file-reference "monoid" entry; pass the directory of
// the morphism file (or "." when the JSON did not come from a file).
inline Morphism morphism_from_json(const nlohmann::json& j, const std::string& base_dir) {
    try {
        const auto& alpha_j = detail::field(j, "alphabet");
        const auto& images_j = detail::field(j, "images");
        const auto& monoid_j = detail::field(j, "monoid");
        Alphabet alphabet;
        for (const auto& s : alpha_j) alphabet.push_back(letter_from_text(s.get<std::string>()));
        std::vector<int> images;
        for (const auto& v : images_j) images.push_back(v.get<int>());
        MonoidTable m;
        if (monoid_j.is_string()) {
            std::filesystem::path ref = monoid_j.get<std::string>();
            if (ref.is_relative()) ref = std::filesystem::path(base_dir) / ref;
            m = load_monoid(ref.string());
        } else {
            m = monoid_from_json(monoid_j);
        }
        return make_morphism(alphabet, images, m);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad morphism: ") + e.what());
    }
}

inline nlohmann::json morphism_to_json(const Morphism& h) {
    nlohmann::json alpha = nlohmann::json::array();
    for (Letter a : h.alphabet) alpha.push_back(letter_text(a));
    return {{"alphabet", std::move(alpha)},
            {"images", h.images},
            {"monoid", monoid_to_json(h.monoid)}};
}

inline Morphism load_morphism(const std::string& path) {
    std::string dir = std::filesystem::path(path).parent_path().string();
    if (dir.empty()) dir = ".";
    return morphism_from_json(read_json_file(path), dir);
}

inline Dfa dfa_from_json(const nlohmann::json& j) {
    try {
        Dfa d;
        d.states = detail::field(j, "states").get<int>();
        for (const auto& s : detail::field(j, "alphabet"))
            d.alphabet.push_back(letter_from_text(s.get<std::string>()));
        d.initial = detail::field(j, "initial").get<int>();
        d.accepting.assign(d.states < 0 ? 0 : d.states, 0);
        for (const auto& v : detail::field(j, "accepting")) {
            int s = v.get<int>();
            if (s < 0 || s >= d.states)
                throw Error("accepting state " + std::to_string(s) + " out of range");
            d.accepting[s] = 1;
        }
        const auto& rows = detail::field(j, "delta");
        if (!rows.is_array() || static_cast<int>(rows.size()) != d.states)
            throw Error("delta must have one row per state");
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != d.alphabet.size())
                throw Error("delta rows must have one entry per letter");
            for (const auto& v : row) d.delta.push_back(v.get<int>());
        }
        validate_dfa(d);
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad automaton: ") + e.what());
    }
}

inline nlohmann::json dfa_to_json(const Dfa& d) {
    nlohmann::json alpha = nlohmann::json::array();
    for (Letter a : d.alphabet) alpha.push_back(letter_text(a));
    nlohmann::json acc = nlohmann::json::array();
    for (int s = 0; s < d.states; ++s)
        if (d.accepting[s]) acc.push_back(s);
    nlohmann::json rows = nlohmann::json::array();
    for (int s = 0; s < d.states; ++s) {
        nlohmann::json row = nlohmann::json::array();
        for (int li = 0; li < d.k(); ++li) row.push_back(d.step(s, li));
        rows.push_back(std::move(row));
    }
    return {{"states", d.states},
            {"alphabet", std::move(alpha)},
            {"initial", d.initial},
            {"accepting", std::move(acc)},
            {"delta", std::move(rows)}};
}

inline Dfa load_dfa(const std::string& path) { return dfa_from_json(read_json_file(path)); }

}  // namespace locdiv
