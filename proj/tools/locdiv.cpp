/* Command-line front end.  One binary wires the pipelines together: load
 * inputs, run a synthesis or construction, run the bounded verification
 * suite over the result, print the artifact.
 *
 * Exit codes: 0 = success (and every check that ran passed), 1 = a check or
 * verification failed (the artifact is still printed alongside the failure),
 * 2 = unusable input.  Timing goes to stderr so stdout stays byte-identical
 * across runs of the same command.
 */
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locdiv/automata.hpp"
#include "locdiv/core.hpp"
#include "locdiv/crs.hpp"
#include "locdiv/forest.hpp"
#include "locdiv/io.hpp"
#include "locdiv/ltl.hpp"
#include "locdiv/monoid.hpp"
#include "locdiv/sd.hpp"
#include "locdiv/verify.hpp"

using namespace locdiv;

namespace {

/* ---------- run reports ---------- */

// The --json envelope: what ran, on which inputs, what came out, and what
// the checks said.  Wall time is not part of the report body; determinism
// of stdout matters more than an embedded timestamp.
struct RunReport {
    std::vector<std::string> command;
    std::map<std::string, std::string> inputs;  // path -> content fingerprint
    nlohmann::json artifact = nlohmann::json::object();
    nlohmann::json verification;  // stays null when no check ran

    nlohmann::json to_json() const {
        nlohmann::json j{{"command", command}, {"inputs", inputs}, {"artifact", artifact}};
        if (!verification.is_null()) j["verification"] = verification;
        return j;
    }
};

struct Options {
    bool json = false;
    RunReport report;
    std::ostringstream text;

    void input(const std::string& path) { report.inputs[path] = file_fingerprint(path); }

    // Prints the accumulated artifact and returns the process exit code.
    int finish(bool ok) {
        if (json)
            std::cout << report.to_json().dump(2) << "\n";
        else
            std::cout << text.str();
        return ok ? 0 : 1;
    }
};

// "_" stands for the empty word on the command line, matching the rewriting
// system text format.
Word cli_word(const std::string& s) { return s == "_" ? Word{} : to_word(s); }

std::string yesno(bool b) { return b ? "true" : "false"; }

/* ---------- monoid ---------- */

int run_check_aperiodic(Options& opt, const std::string& path) {
    opt.input(path);
    MonoidTable m = load_monoid(path);
    std::optional<int> witness = aperiodicity_witness(m);
    opt.text << "aperiodic: " << yesno(!witness) << "\n";
    opt.report.artifact = {{"aperiodic", !witness}, {"size", m.size}};
    if (witness) {
        opt.text << "witness: element " << *witness << " has x^omega != x^{omega+1}\n";
        opt.report.artifact["witness"] = *witness;
    }
    return opt.finish(!witness);
}

/* ---------- synth ---------- */

int run_synth_ltl(Options& opt, const std::string& dfa_path, int check_maxlen) {
    opt.input(dfa_path);
    Dfa d = load_dfa(dfa_path);
    Stopwatch clock;
    LtlSynthesis out = synth_ltl(d);
    std::cerr << "synthesis: " << clock.ms() << " ms\n";

    opt.text << "formula: " << print_ltl(out.formula) << "\n";
    opt.text << "accepts-epsilon: " << yesno(out.accepts_epsilon) << "\n";
    opt.text << "dag-size: " << ltl_dag_size(out.formula) << "\n";
    opt.report.artifact = {{"formula", print_ltl(out.formula)},
                           {"accepts_epsilon", out.accepts_epsilon},
                           {"dag_size", ltl_dag_size(out.formula)}};

    bool ok = true;
    if (check_maxlen > 0) {
        Agreement a = check_ltl_agreement(out, d, check_maxlen);
        ok = a.ok();
        opt.text << "oracle agreement " << a.matches << "/" << a.total << "\n";
        if (!a.epsilon_ok) opt.text << "epsilon disagreement\n";
        if (a.first_mismatch)
            opt.text << "first mismatch: " << word_text(*a.first_mismatch) << "\n";
        opt.report.verification = {{"maxlen", check_maxlen},
                                   {"matches", a.matches},
                                   {"total", a.total},
                                   {"epsilon_ok", a.epsilon_ok},
                                   {"ok", ok}};
        if (a.first_mismatch)
            opt.report.verification["first_mismatch"] = word_text(*a.first_mismatch);
    }
    return opt.finish(ok);
}

int run_synth_sd(Options& opt, const std::string& dfa_path, int check_maxlen) {
    opt.input(dfa_path);
    Dfa d = load_dfa(dfa_path);
    Stopwatch clock;
    SdSynthesis out = synth_sd(d);
    std::cerr << "synthesis: " << clock.ms() << " ms\n";

    opt.text << "expression: " << print_sd(out.expr) << "\n";
    opt.text << "accepts-epsilon: " << yesno(out.accepts_epsilon) << "\n";
    opt.text << "dag-size: " << sd_dag_size(out.expr) << "\n";
    opt.report.artifact = {{"expression", print_sd(out.expr)},
                           {"accepts_epsilon", out.accepts_epsilon},
                           {"dag_size", sd_dag_size(out.expr)}};

    bool ok = true;
    if (check_maxlen > 0) {
        StarReport stars = check_star_certificates(out.expr);
        Agreement a = check_sd_agreement(out, d, check_maxlen);
        ok = stars.ok() && a.ok();
        opt.text << "stars: " << stars.stars;
        if (stars.ok())
            opt.text << " (prefix codes, delays verified at 3*(d+2))\n";
        else
            opt.text << "\nstar check failed: " << *stars.failure << "\n";
        opt.text << "oracle agreement " << a.matches << "/" << a.total << "\n";
        if (a.first_mismatch)
            opt.text << "first mismatch: " << word_text(*a.first_mismatch) << "\n";
        opt.report.verification = {{"maxlen", check_maxlen},
                                   {"matches", a.matches},
                                   {"total", a.total},
                                   {"epsilon_ok", a.epsilon_ok},
                                   {"stars", stars.stars},
                                   {"stars_ok", stars.ok()},
                                   {"ok", ok}};
        if (stars.failure) opt.report.verification["star_failure"] = *stars.failure;
        if (a.first_mismatch)
            opt.report.verification["first_mismatch"] = word_text(*a.first_mismatch);
    }
    return opt.finish(ok);
}

/* ---------- crs ---------- */

// "--weights a=2 b=3" (space or comma separated); unmentioned letters keep
// weight 1.
WeightedAlphabet parse_weights(const Alphabet& letters, const std::string& text) {
    std::vector<long long> w(letters.size(), 1);
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ' ')) {
        std::istringstream commas(tok);
        std::string item;
        while (std::getline(commas, item, ',')) {
            if (item.empty()) continue;
            std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw Error("bad weight entry \"" + item + "\" (expected letter=value)");
            Letter a = letter_from_text(item.substr(0, eq));
            std::size_t i = 0;
            while (i < letters.size() && letters[i] != a) ++i;
            if (i == letters.size())
                throw Error("weight for letter \"" + letter_text(a) + "\" not in the alphabet");
            try {
                w[i] = std::stoll(item.substr(eq + 1));
            } catch (const std::exception&) {
                throw Error("bad weight value in \"" + item + "\"");
            }
        }
    }
    return make_weighted_alphabet(letters, std::move(w));
}

int run_crs_build(Options& opt, const std::string& hom_path, const std::string& weights_text,
                  int check_maxlen) {
    opt.input(hom_path);
    Morphism h = load_morphism(hom_path);
    WeightedAlphabet wa =
        weights_text.empty() ? unit_weights(h.alphabet) : parse_weights(h.alphabet, weights_text);
    Stopwatch clock;
    CrsBuild out = build_crs(h, wa);
    std::cerr << "construction: " << clock.ms() << " ms\n";

    opt.text << print_system(out.system);
    opt.report.artifact = {{"system", print_system(out.system)},
                           {"rules", out.system.rules.size()},
                           {"base_case", out.base_case}};
    if (out.base_case) {
        opt.text << "base case: every letter maps to the identity\n";
    } else {
        long long bound =
            (static_cast<long long>(out.k) + 2) * out.m + out.k + 1;
        opt.text << "localized letter: " << letter_text(out.chosen_c) << ", blocks: "
                 << out.block_count << ", irreducible-length bound: " << bound << "\n";
        opt.report.artifact["chosen_c"] = letter_text(out.chosen_c);
        opt.report.artifact["block_count"] = out.block_count;
        opt.report.artifact["irreducible_length_bound"] = bound;
    }

    bool ok = true;
    if (check_maxlen > 0) {
        bool reducing = is_weight_reducing(out.system);
        bool confluent = is_confluent(out.system);
        bool factors = factorizes_through(h, out.system, check_maxlen);
        ok = reducing && confluent && factors;
        opt.text << "weight-reducing: " << yesno(reducing) << "\n";
        opt.text << "confluent: " << yesno(confluent) << "\n";
        opt.text << "factorizes(" << check_maxlen << "): " << yesno(factors) << "\n";
        opt.report.verification = {{"maxlen", check_maxlen},
                                   {"weight_reducing", reducing},
                                   {"confluent", confluent},
                                   {"factorizes", factors},
                                   {"ok", ok}};
    }
    return opt.finish(ok);
}

int run_crs_classes(Options& opt, const std::string& system_path, std::size_t max_words,
                    std::size_t max_len) {
    opt.input(system_path);
    SemiThueSystem s = load_system(system_path);
    CongruenceIndex idx = class_index(s, max_words, max_len);
    // The empty word is always irreducible; "classes" counts the nonempty
    // ones, with the full total on the next line.
    int total = idx.classes();
    int nonempty = total - 1;
    std::size_t longest = idx.irreducibles.back().size();
    opt.text << "classes: " << nonempty << ", max-irreducible-length: " << longest << "\n";
    opt.text << "total classes including the empty word: " << total << "\n";
    bool confluent = is_confluent(s);
    if (!confluent)
        opt.text << "warning: system is not confluent; counts refer to irreducible words\n";
    opt.report.artifact = {{"nonempty_classes", nonempty},
                           {"total_classes", total},
                           {"max_irreducible_length", longest},
                           {"confluent", confluent}};
    return opt.finish(true);
}

/* ---------- rewrite ---------- */

int run_rewrite_nf(Options& opt, const std::string& system_path, const std::string& word_text_in) {
    opt.input(system_path);
    SemiThueSystem s = load_system(system_path);
    Word nf = normal_form(s, cli_word(word_text_in));
    opt.text << "normal form: " << word_text(nf) << "\n";
    opt.report.artifact = {{"normal_form", word_text(nf)}};
    return opt.finish(true);
}

/* ---------- check ---------- */

int run_check_confluence(Options& opt, const std::string& system_path) {
    opt.input(system_path);
    SemiThueSystem s = load_system(system_path);
    std::optional<ConfluencePeak> peak = confluence_peak(s);
    opt.text << "confluent: " << yesno(!peak) << "\n";
    opt.report.artifact = {{"confluent", !peak}};
    if (peak) {
        opt.text << "peak: " << word_text(peak->peak) << " reduces to both "
                 << word_text(peak->left) << " and " << word_text(peak->right) << "\n";
        opt.report.artifact["peak"] = {{"word", word_text(peak->peak)},
                                       {"left", word_text(peak->left)},
                                       {"right", word_text(peak->right)}};
    }
    return opt.finish(!peak);
}

int run_check_sync_delay(Options& opt, const std::string& expr_text, int delay, int maxlen) {
    SdPtr e = parse_sd(expr_text);
    std::optional<SyncDelayWitness> w = sync_delay_witness(e, delay, maxlen);
    opt.text << "sync-delay " << delay << ": " << (w ? "refuted" : "holds") << " (maxlen "
             << maxlen << ")\n";
    opt.report.artifact = {{"delay", delay}, {"maxlen", maxlen}, {"holds", !w}};
    if (w) {
        opt.text << "witness: u=" << word_text(w->u) << " v=" << word_text(w->v)
                 << " w=" << word_text(w->w) << "\n";
        opt.report.artifact["witness"] = {
            {"u", word_text(w->u)}, {"v", word_text(w->v)}, {"w", word_text(w->w)}};
    }
    return opt.finish(!w);
}

/* ---------- convert ---------- */

int run_convert_sd_to_starfree(Options& opt, const std::string& expr_text,
                               const std::string& alphabet_text, bool verify) {
    SdPtr e = parse_sd(expr_text);
    Alphabet alpha = alphabet_text.empty() ? sd_letters(e) : to_word(alphabet_text);
    SfPtr sf = sd_to_star_free(e, alpha);
    opt.text << "star-free: " << print_star_free(sf) << "\n";
    opt.report.artifact = {{"star_free", print_star_free(sf)},
                           {"alphabet", word_text(alpha)}};

    bool ok = true;
    if (verify) {
        // Both sides compile to automata, so the comparison is exact.
        Dfa lhs = canonicalize(minimize(sd_to_dfa(e, alpha)));
        Dfa rhs = canonicalize(minimize(sf_to_dfa(sf)));
        ok = lhs.states == rhs.states && lhs.delta == rhs.delta &&
             lhs.accepting == rhs.accepting && lhs.initial == rhs.initial;
        opt.text << "denotation check: " << (ok ? "exact match" : "MISMATCH") << "\n";
        opt.report.verification = {{"exact", true}, {"ok", ok}};
    }
    return opt.finish(ok);
}

/* ---------- eval ---------- */

int run_eval_ltl(Options& opt, const std::string& formula_text, const std::string& word_text_in,
                 const std::string& alphabet_text) {
    Word w = cli_word(word_text_in);
    Alphabet alpha;
    if (!alphabet_text.empty()) {
        alpha = to_word(alphabet_text);
    } else {
        // Default alphabet: the word's letters plus anything that could be an
        // atom in the formula (quoted characters, and bare alphanumerics that
        // are not the X/F/U operators).  Over-collecting is harmless; the
        // alphabet only gates atom parsing.
        for (Letter a : w)
            if (!contains(alpha, a)) alpha.push_back(a);
        for (std::size_t i = 0; i < formula_text.size(); ++i) {
            char ch = formula_text[i];
            Letter l = static_cast<Letter>(static_cast<unsigned char>(ch));
            if (ch == '\'' && i + 2 < formula_text.size() && formula_text[i + 2] == '\'') {
                l = static_cast<Letter>(static_cast<unsigned char>(formula_text[i + 1]));
                if (!contains(alpha, l)) alpha.push_back(l);
                i += 2;
            } else if (std::isalnum(static_cast<unsigned char>(ch)) && ch != 'X' && ch != 'F' &&
                       ch != 'U' && !contains(alpha, l)) {
                alpha.push_back(l);
            }
        }
        std::sort(alpha.begin(), alpha.end());
    }
    LtlPtr f = parse_ltl(formula_text, alpha);
    if (w.empty()) throw Error("formula evaluation needs a nonempty word (\"_\" is empty)");
    bool sat = eval_ltl(f, w, 1);
    opt.text << "satisfied: " << yesno(sat) << "\n";
    opt.report.artifact = {{"satisfied", sat}, {"formula", print_ltl(f)}};
    return opt.finish(sat);
}

/* ---------- forest ---------- */

void print_tree(std::ostream& os, const FactTree& t, int indent) {
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    if (!t) {
        os << "(empty)\n";
        return;
    }
    switch (t->kind) {
        case ForestNode::Kind::Leaf:
            os << "leaf " << letter_text(t->letter) << " image " << t->image << "\n";
            return;
        case ForestNode::Kind::Binary: os << "binary"; break;
        case ForestNode::Kind::Idempotent: os << "idempotent"; break;
    }
    os << " image " << t->image << " height " << t->height << "\n";
    for (const FactTree& c : t->children) print_tree(os, c, indent + 1);
}

nlohmann::json tree_json(const FactTree& t) {
    if (!t) return nullptr;
    if (t->kind == ForestNode::Kind::Leaf)
        return {{"kind", "leaf"}, {"letter", letter_text(t->letter)}, {"image", t->image}};
    nlohmann::json children = nlohmann::json::array();
    for (const FactTree& c : t->children) children.push_back(tree_json(c));
    return {{"kind", t->kind == ForestNode::Kind::Binary ? "binary" : "idempotent"},
            {"image", t->image},
            {"height", t->height},
            {"children", std::move(children)}};
}

int run_forest_build(Options& opt, const std::string& hom_path, const std::string& word_text_in,
                     bool validate, bool stats) {
    opt.input(hom_path);
    Morphism h = load_morphism(hom_path);
    Word w = cli_word(word_text_in);
    Stopwatch clock;
    FactTree t = build_forest(h, w);
    std::cerr << "construction: " << clock.ms() << " ms\n";

    opt.text << "height: " << height(t) << "\n";
    opt.report.artifact = {{"word", word_text(w)}, {"height", height(t)}};

    bool ok = true;
    if (validate) {
        std::optional<std::string> why = forest_violation(h, w, t);
        ok = !why;
        opt.text << "valid: " << yesno(ok) << "\n";
        if (why) opt.text << "violation: " << *why << "\n";
        opt.report.verification = {{"valid", ok}};
        if (why) opt.report.verification["violation"] = *why;
    }
    if (stats) {
        long long nodes = 0, leaves = 0;
        auto count = [&](auto&& self, const FactTree& n) -> void {
            if (!n) return;
            ++nodes;
            if (n->kind == ForestNode::Kind::Leaf) ++leaves;
            for (const FactTree& c : n->children) self(self, c);
        };
        count(count, t);
        unsigned long long bound =
            height_bound(h.monoid.size, static_cast<int>(h.alphabet.size()));
        opt.text << "nodes: " << nodes << ", leaves: " << leaves << "\n";
        opt.text << "height-bound: " << bound << "\n";
        opt.report.artifact["nodes"] = nodes;
        opt.report.artifact["leaves"] = leaves;
        opt.report.artifact["height_bound"] = bound;
    }
    opt.text << "tree:\n";
    print_tree(opt.text, t, 1);
    opt.report.artifact["tree"] = tree_json(t);
    return opt.finish(ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-monoid algebra toolkit"};
    app.require_subcommand(1);
    Options opt;
    // argv[0] is echoed by basename only, so the report does not depend on
    // where the binary was invoked from.
    for (int i = 0; i < argc; ++i)
        opt.report.command.push_back(
            i == 0 ? std::filesystem::path(argv[0]).filename().string() : argv[i]);

    // monoid check-aperiodic <monoid.json>
    auto* monoid_cmd = app.add_subcommand("monoid", "monoid table queries");
    monoid_cmd->require_subcommand(1);
    auto* aperiodic_cmd =
        monoid_cmd->add_subcommand("check-aperiodic", "decide x^omega = x^{omega+1} for all x");
    std::string monoid_path;
    aperiodic_cmd->add_option("file", monoid_path, "monoid table (JSON)")->required();

    // synth {ltl, sd} --dfa <dfa.json>
    auto* synth_cmd = app.add_subcommand("synth", "synthesize from an automaton");
    synth_cmd->require_subcommand(1);
    std::string synth_dfa;
    int check_maxlen = 8;
    bool no_verify = false;
    auto* synth_ltl_cmd = synth_cmd->add_subcommand("ltl", "temporal formula for the language");
    auto* synth_sd_cmd =
        synth_cmd->add_subcommand("sd", "star expression with bounded-delay certificates");
    for (CLI::App* c : {synth_ltl_cmd, synth_sd_cmd}) {
        c->add_option("--dfa", synth_dfa, "deterministic automaton (JSON)")->required();
        c->add_option("--check-maxlen", check_maxlen,
                      "agreement check word length cap (0 disables)");
        c->add_flag("--no-verify", no_verify, "skip the agreement check");
    }

    // crs build --hom <h.json> [--weights ...] | crs classes --system <s.txt>
    auto* crs_cmd = app.add_subcommand("crs", "weight-reducing rewriting systems");
    crs_cmd->require_subcommand(1);
    auto* crs_build_cmd =
        crs_cmd->add_subcommand("build", "confluent system for a morphism's congruence");
    std::string crs_hom, crs_weights;
    crs_build_cmd->add_option("--hom", crs_hom, "morphism (JSON)")->required();
    crs_build_cmd->add_option("--weights", crs_weights, "letter weights, e.g. \"a=2 b=3\"");
    crs_build_cmd->add_option("--check-maxlen", check_maxlen,
                              "factorization check word length cap (0 disables)");
    crs_build_cmd->add_flag("--no-verify", no_verify, "skip the checks");
    auto* crs_classes_cmd = crs_cmd->add_subcommand("classes", "count congruence classes");
    std::string crs_system;
    std::size_t crs_max_words = 10000, crs_max_len = 64;
    crs_classes_cmd->add_option("--system", crs_system, "rewriting system (text)")->required();
    crs_classes_cmd->add_option("--max-words", crs_max_words, "irreducible enumeration cap");
    crs_classes_cmd->add_option("--max-len", crs_max_len, "irreducible length cap");

    // rewrite nf --system <s.txt> --word <w>
    auto* rewrite_cmd = app.add_subcommand("rewrite", "apply a rewriting system");
    rewrite_cmd->require_subcommand(1);
    auto* nf_cmd = rewrite_cmd->add_subcommand("nf", "leftmost normal form");
    std::string nf_system, nf_word;
    nf_cmd->add_option("--system", nf_system, "rewriting system (text)")->required();
    nf_cmd->add_option("--word", nf_word, "input word (\"_\" for empty)")->required();

    // check {confluence, sync-delay}
    auto* check_cmd = app.add_subcommand("check", "property checks");
    check_cmd->require_subcommand(1);
    auto* confluence_cmd = check_cmd->add_subcommand("confluence", "critical pair analysis");
    std::string check_system;
    confluence_cmd->add_option("--system", check_system, "rewriting system (text)")->required();
    auto* sync_cmd = check_cmd->add_subcommand("sync-delay", "bounded delay certificate check");
    std::string sync_expr;
    int sync_delay = 0, sync_maxlen = 8;
    sync_cmd->add_option("--expr", sync_expr, "code expression (text)")->required();
    sync_cmd->add_option("--delay", sync_delay, "claimed delay")->required();
    sync_cmd->add_option("--maxlen", sync_maxlen, "total length cap for the search");

    // convert sd-to-starfree --expr <e>
    auto* convert_cmd = app.add_subcommand("convert", "translate between formalisms");
    convert_cmd->require_subcommand(1);
    auto* sf_cmd = convert_cmd->add_subcommand("sd-to-starfree",
                                               "eliminate stars via delay certificates");
    std::string sf_expr, sf_alphabet;
    sf_cmd->add_option("--expr", sf_expr, "star expression (text)")->required();
    sf_cmd->add_option("--alphabet", sf_alphabet, "ambient alphabet (default: letters used)");
    sf_cmd->add_flag("--no-verify", no_verify, "skip the exact denotation comparison");

    // eval ltl --formula <f> --word <w>
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an artifact on a word");
    eval_cmd->require_subcommand(1);
    auto* eval_ltl_cmd = eval_cmd->add_subcommand("ltl", "formula satisfaction at position 1");
    std::string eval_formula, eval_word, eval_alphabet;
    eval_ltl_cmd->add_option("--formula", eval_formula, "formula (text)")->required();
    eval_ltl_cmd->add_option("--word", eval_word, "word (\"_\" for empty)")->required();
    eval_ltl_cmd->add_option("--alphabet", eval_alphabet, "alphabet (default: word letters)");

    // forest build --hom <h.json> --word <w>
    auto* forest_cmd = app.add_subcommand("forest", "bounded-height factorization trees");
    forest_cmd->require_subcommand(1);
    auto* forest_build_cmd = forest_cmd->add_subcommand("build", "build and print a tree");
    std::string forest_hom, forest_word;
    bool forest_validate = false, forest_stats = false;
    forest_build_cmd->add_option("--hom", forest_hom, "morphism (JSON)")->required();
    forest_build_cmd->add_option("--word", forest_word, "word (\"_\" for empty)")->required();
    forest_build_cmd->add_flag("--validate", forest_validate, "run the structural checker");
    forest_build_cmd->add_flag("--stats", forest_stats, "print node counts and the height bound");

    for (CLI::App* c : {aperiodic_cmd, synth_ltl_cmd, synth_sd_cmd, crs_build_cmd,
                        crs_classes_cmd, nf_cmd, confluence_cmd, sync_cmd, sf_cmd, eval_ltl_cmd,
                        forest_build_cmd})
        c->add_flag("--json", opt.json, "emit the run report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*aperiodic_cmd) return run_check_aperiodic(opt, monoid_path);
        int maxlen = no_verify ? 0 : check_maxlen;
        if (*synth_ltl_cmd) return run_synth_ltl(opt, synth_dfa, maxlen);
        if (*synth_sd_cmd) return run_synth_sd(opt, synth_dfa, maxlen);
        if (*crs_build_cmd) return run_crs_build(opt, crs_hom, crs_weights, maxlen);
        if (*crs_classes_cmd) return run_crs_classes(opt, crs_system, crs_max_words, crs_max_len);
        if (*nf_cmd) return run_rewrite_nf(opt, nf_system, nf_word);
        if (*confluence_cmd) return run_check_confluence(opt, check_system);
        if (*sync_cmd) return run_check_sync_delay(opt, sync_expr, sync_delay, sync_maxlen);
        if (*sf_cmd) return run_convert_sd_to_starfree(opt, sf_expr, sf_alphabet, !no_verify);
        if (*eval_ltl_cmd) return run_eval_ltl(opt, eval_formula, eval_word, eval_alphabet);
        if (*forest_build_cmd)
            return run_forest_build(opt, forest_hom, forest_word, forest_validate, forest_stats);
    } catch (const NonAperiodicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
