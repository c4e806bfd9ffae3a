// Command-line front end. Every subcommand is a thin wrapper around the
// library: load documents, call one operation, print names or write JSON.
//
// Exit codes: 0 success, 1 semantic failure (axiom violation, inequivalence),
// 2 malformed input, 3 resource cap hit.

#include "qla/json_io.hpp"
#include "qla/qregex.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

namespace fs = std::filesystem;
using qla::json_io::json;

namespace {

struct Limits {
    int state_cap = qla::kAnnotatedStateCap;
    int max_word_len = qla::kWordLengthBound;
};

void add_limit_flags(CLI::App* cmd, Limits& lim) {
    cmd->add_option("--cap", lim.state_cap, "state cap for subset constructions")
        ->envname("QLA_STATE_CAP")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-word-len", lim.max_word_len,
                    "longest word accepted on the command line")
        ->check(CLI::PositiveNumber);
}

struct LatticeArg {
    qla::oml::LatticePtr lattice;
    json ref;  // portable reference for output documents
};

qla::oml::RawLattice raw_lattice_arg(const std::string& arg) {
    if (qla::oml::is_standard_selector(arg)) return qla::oml::standard_raw(arg);
    return qla::json_io::raw_lattice_from_json(qla::json_io::read_json_file(arg));
}

LatticeArg load_lattice_arg(const std::string& arg) {
    if (qla::oml::is_standard_selector(arg))
        return {qla::oml::build(qla::oml::standard_raw(arg)), json(arg)};
    auto l = qla::oml::build(raw_lattice_arg(arg));
    return {l, qla::json_io::lattice_to_json(*l)};
}

// Selector strings stay as they are; file references are inlined so the
// output document does not depend on the input's directory layout.
json portable_ref(const json& ref, const fs::path& base_dir) {
    if (ref.is_string() && !qla::oml::is_standard_selector(ref.get<std::string>()))
        return qla::json_io::lattice_to_json(*qla::json_io::lattice_from_ref(ref, base_dir));
    return ref;
}

qla::json_io::AutomatonDoc load_automaton(const std::string& path) {
    json j = qla::json_io::read_json_file(path);
    if (!j.is_object() || !j.contains("kind"))
        throw qla::InputError(path + ": not an automaton document (missing \"kind\")");
    auto doc = qla::json_io::automaton_from_json(j, fs::path(path).parent_path());
    doc.lattice_ref = portable_ref(doc.lattice_ref, fs::path(path).parent_path());
    return doc;
}

const qla::Alphabet& machine_alphabet(const qla::json_io::Machine& m) {
    return std::visit([](const auto& a) -> const qla::Alphabet& { return a.alphabet; }, m);
}

qla::qfa::Lvdfa to_lvdfa(const qla::json_io::Machine& m, int cap) {
    if (const auto* d = std::get_if<qla::qfa::Lvdfa>(&m)) return *d;
    if (const auto* a = std::get_if<qla::qfa::Lvfa>(&m)) return qla::qfa::determinize(*a, cap);
    return qla::qfa::eps_to_dfa(std::get<qla::qfa::LvfaEps>(m), cap);
}

// A step-language operand file may also hold an automaton, in which case it
// is decomposed on the fly.
qla::qlang::StepLanguage load_step_operand(const std::string& path, int cap, json* ref_out) {
    json j = qla::json_io::read_json_file(path);
    fs::path base = fs::path(path).parent_path();
    if (j.is_object() && j.contains("components")) {
        auto doc = qla::json_io::step_from_json(j, base);
        if (ref_out) *ref_out = portable_ref(doc.lattice_ref, base);
        return std::move(doc.step);
    }
    if (j.is_object() && j.contains("kind")) {
        auto doc = qla::json_io::automaton_from_json(j, base);
        if (ref_out) *ref_out = portable_ref(doc.lattice_ref, base);
        return qla::qlang::lvdfa_to_step(to_lvdfa(doc.machine, cap));
    }
    throw qla::InputError(path + ": expected a step-language or automaton document");
}

qla::qlang::StepLanguage load_step_strict(const std::string& path, json* ref_out) {
    json j = qla::json_io::read_json_file(path);
    fs::path base = fs::path(path).parent_path();
    if (!j.is_object() || !j.contains("components"))
        throw qla::InputError(path +
                              ": expected a step-language document (run `lang decompose` first)");
    auto doc = qla::json_io::step_from_json(j, base);
    if (ref_out) *ref_out = portable_ref(doc.lattice_ref, base);
    return std::move(doc.step);
}

// "_eps" names the empty word unless the alphabet actually contains that
// symbol. The length guard keeps the exponential oracles in check.
qla::Word parse_word_arg(const qla::Alphabet& alpha, const std::string& arg, int max_len) {
    qla::Word w;
    if (arg == "_eps" && std::find(alpha.begin(), alpha.end(), "_eps") == alpha.end())
        w.clear();
    else
        w = qla::parse_word(alpha, arg);
    if (static_cast<int>(w.size()) > max_len)
        throw qla::ResourceError("word has " + std::to_string(w.size()) +
                                 " symbols, above the bound " + std::to_string(max_len) +
                                 " (raise with --max-word-len)");
    return w;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        qla::json_io::write_json_file(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite automata valued in orthomodular lattices"};
    app.require_subcommand(1);
    int exit_code = 0;
    Limits lim;

    auto* lattice_cmd = app.add_subcommand("lattice", "lattice documents and builders");
    lattice_cmd->require_subcommand(1);
    auto* fa_cmd = app.add_subcommand("fa", "lattice-valued automata");
    fa_cmd->require_subcommand(1);
    auto* lang_cmd = app.add_subcommand("lang", "step languages and closure operations");
    lang_cmd->require_subcommand(1);
    auto* regex_cmd = app.add_subcommand("regex", "lattice-valued regular expressions");
    regex_cmd->require_subcommand(1);

    // lattice validate <lattice>
    {
        static std::string arg;
        auto* c = lattice_cmd->add_subcommand("validate", "check the lattice axioms");
        c->add_option("lattice", arg, "lattice file or selector (boolean:n, mo:n, hexagon, example21)")
            ->required();
        c->callback([&] {
            auto rep = qla::oml::validate(raw_lattice_arg(arg));
            if (rep.passed) {
                std::cout << "ok: " << rep.lattice->size() << " elements\n";
                return;
            }
            for (const auto& v : rep.violations) {
                std::cout << "violation: " << v.axiom << ": " << v.detail;
                if (!v.witness.empty()) {
                    std::cout << " (witness: ";
                    for (size_t i = 0; i < v.witness.size(); ++i)
                        std::cout << (i ? ", " : "") << v.witness[i];
                    std::cout << ")";
                }
                std::cout << "\n";
            }
            exit_code = 1;
        });
    }

    // lattice commutator <lattice> <elem>...
    {
        static std::string arg;
        static std::vector<std::string> elems;
        auto* c = lattice_cmd->add_subcommand("commutator",
                                              "commutator of a set of elements");
        c->add_option("lattice", arg, "lattice file or selector")->required();
        c->add_option("elements", elems, "element names")->required()->expected(-1);
        add_limit_flags(c, lim);
        c->callback([&] {
            auto la = load_lattice_arg(arg);
            std::vector<qla::oml::LValue> xs;
            for (const auto& e : elems) xs.emplace_back(la.lattice, la.lattice->require(e));
            std::cout << qla::oml::commutator(xs).name() << "\n";
        });
    }

    // fa eval <automaton> <word>
    {
        static std::string path, word;
        auto* c = fa_cmd->add_subcommand("eval", "evaluate a word");
        c->add_option("automaton", path, "automaton file")->required();
        c->add_option("word", word, "word (_eps for the empty word)")->required();
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            qla::Word w = parse_word_arg(machine_alphabet(doc.machine), word, lim.max_word_len);
            auto value = std::visit(
                [&](const auto& m) {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, qla::qfa::Lvfa>)
                        return qla::qfa::eval_nfa(m, w);
                    else if constexpr (std::is_same_v<T, qla::qfa::LvfaEps>)
                        return qla::qfa::eval_nfa(
                            qla::qfa::remove_epsilon(qla::qfa::crispify_eps(m, lim.state_cap)), w);
                    else
                        return qla::qfa::eval_dfa(m, w);
                },
                doc.machine);
            std::cout << value.name() << "\n";
        });
    }

    // fa eval-oracle <automaton> <word>
    {
        static std::string path, word;
        auto* c = fa_cmd->add_subcommand("eval-oracle",
                                         "evaluate a word by path enumeration");
        c->add_option("automaton", path, "automaton file")->required();
        c->add_option("word", word, "word (_eps for the empty word)")->required();
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            qla::Word w = parse_word_arg(machine_alphabet(doc.machine), word, lim.max_word_len);
            auto value = std::visit(
                [&](const auto& m) {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, qla::qfa::Lvfa>)
                        return qla::qfa::eval_nfa_paths(m, w);
                    else if constexpr (std::is_same_v<T, qla::qfa::LvfaEps>)
                        return qla::qfa::eval_eps_paths(m, w);
                    else
                        return qla::qfa::eval_dfa(m, w);
                },
                doc.machine);
            std::cout << value.name() << "\n";
        });
    }

    // fa determinize <automaton> -o <file>
    {
        static std::string path, out;
        auto* c = fa_cmd->add_subcommand("determinize",
                                         "subset construction with accumulated values");
        c->add_option("automaton", path, "automaton file")->required();
        c->add_option("-o,--output", out, "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            qla::qfa::Lvdfa d = to_lvdfa(doc.machine, lim.state_cap);
            emit(qla::json_io::automaton_to_json(qla::json_io::Machine(std::move(d)),
                                                 doc.lattice_ref),
                 out);
        });
    }

    // fa rm-eps <automaton> -o <file>
    {
        static std::string path, out;
        auto* c = fa_cmd->add_subcommand("rm-eps", "eliminate ε-transitions");
        c->add_option("automaton", path, "automaton file (kind lvfa_eps)")->required();
        c->add_option("-o,--output", out, "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            const auto* e = std::get_if<qla::qfa::LvfaEps>(&doc.machine);
            if (!e)
                throw qla::InputError(path + ": rm-eps expects an automaton of kind \"lvfa_eps\"");
            qla::qfa::Lvfa a =
                qla::qfa::remove_epsilon(qla::qfa::crispify_eps(*e, lim.state_cap));
            emit(qla::json_io::automaton_to_json(qla::json_io::Machine(std::move(a)),
                                                 doc.lattice_ref),
                 out);
        });
    }

    // fa pump <automaton> <word>
    {
        static std::string path, word;
        auto* c = fa_cmd->add_subcommand("pump",
                                         "split a long word around a repeated state");
        c->add_option("automaton", path, "automaton file (kind lvdfa)")->required();
        c->add_option("word", word, "word at least as long as the state count")->required();
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            const auto* d = std::get_if<qla::qfa::Lvdfa>(&doc.machine);
            if (!d)
                throw qla::InputError(
                    path + ": pump expects a deterministic automaton; run `fa determinize` first");
            qla::Word z = parse_word_arg(d->alphabet, word, lim.max_word_len);
            auto p = qla::qfa::pump_decompose(*d, z);
            std::cout << "u: " << qla::format_word(d->alphabet, p.u) << "\n"
                      << "v: " << qla::format_word(d->alphabet, p.v) << "\n"
                      << "w: " << qla::format_word(d->alphabet, p.w) << "\n"
                      << "states: " << p.state_count << "\n";
        });
    }

    // lang decompose <automaton> -o <step-file>
    {
        static std::string path, out;
        auto* c = lang_cmd->add_subcommand("decompose",
                                           "decompose an automaton into a step language");
        c->add_option("automaton", path, "automaton file")->required();
        c->add_option("-o,--output", out, "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            auto step = qla::qlang::lvdfa_to_step(to_lvdfa(doc.machine, lim.state_cap));
            emit(qla::json_io::step_to_json(step, doc.lattice_ref), out);
        });
    }

    // lang op <union|intersect|complement|scalar|concat|star> ... [-o <file>]
    {
        static std::string op_name, out;
        static std::vector<std::string> rest;
        auto* c = lang_cmd->add_subcommand("op", "closure operations on step languages");
        c->add_option("operation", op_name, "one of union, intersect, complement, scalar, concat, star")
            ->required()
            ->check(CLI::IsMember({"union", "intersect", "complement", "scalar", "concat", "star"}));
        c->add_option("args", rest,
                      "operand files; scalar takes an element name before its operand")
            ->required()
            ->expected(-1);
        c->add_option("-o,--output", out, "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&] {
            auto need = [&](size_t n, const char* shape) {
                if (rest.size() != n)
                    throw qla::InputError("op " + op_name + " expects " + shape);
            };
            json ref;
            qla::qlang::StepLanguage result;
            if (op_name == "union" || op_name == "intersect" || op_name == "concat") {
                need(2, "two operand files");
                auto a = load_step_operand(rest[0], lim.state_cap, &ref);
                auto b = load_step_operand(rest[1], lim.state_cap, nullptr);
                if (op_name == "union")
                    result = qla::qlang::op_union(a, b);
                else if (op_name == "intersect")
                    result = qla::qlang::op_intersect(a, b);
                else
                    result = qla::qlang::op_concat(a, b);
            } else if (op_name == "scalar") {
                need(2, "an element name and one operand file");
                auto a = load_step_operand(rest[1], lim.state_cap, &ref);
                qla::oml::LValue r(a.lattice, a.lattice->require(rest[0]));
                result = qla::qlang::op_scalar(r, a);
            } else {
                need(1, "one operand file");
                auto a = load_step_operand(rest[0], lim.state_cap, &ref);
                result = op_name == "complement" ? qla::qlang::op_complement(a)
                                                 : qla::qlang::op_star(a);
            }
            emit(qla::json_io::step_to_json(result, ref), out);
        });
    }

    // lang equiv <step-or-automaton> <step-or-automaton>
    {
        static std::string lhs, rhs;
        auto* c = lang_cmd->add_subcommand("equiv", "decide language equivalence");
        c->add_option("left", lhs, "step-language or automaton file")->required();
        c->add_option("right", rhs, "step-language or automaton file")->required();
        add_limit_flags(c, lim);
        c->callback([&] {
            auto a = load_step_operand(lhs, lim.state_cap, nullptr);
            auto b = load_step_operand(rhs, lim.state_cap, nullptr);
            auto r = qla::qlang::equivalent(a, b);
            if (r.equivalent) {
                std::cout << "equivalent\n";
                return;
            }
            std::cout << "not equivalent\n"
                      << "counterexample: " << qla::format_word(a.alphabet, r.counterexample)
                      << "\n"
                      << "left: " << qla::qlang::step_value(a, r.counterexample).name() << "\n"
                      << "right: " << qla::qlang::step_value(b, r.counterexample).name() << "\n";
            exit_code = 1;
        });
    }

    // lang cut <step> <elem> / lang level <step> <elem>
    for (const char* which : {"cut", "level"}) {
        static std::string path[2], elem[2], out[2];
        int slot = which[0] == 'c' ? 0 : 1;
        auto* c = lang_cmd->add_subcommand(
            which, slot == 0 ? "words whose value dominates an element"
                             : "words whose value equals an element");
        c->add_option("step", path[slot], "step-language file")->required();
        c->add_option("element", elem[slot], "threshold element")->required();
        c->add_option("-o,--output", out[slot], "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&, slot] {
            json ref;
            auto s = load_step_strict(path[slot], &ref);
            qla::oml::LValue r(s.lattice, s.lattice->require(elem[slot]));
            qla::classical::Dfa d =
                slot == 0 ? qla::qlang::cut(s, r) : qla::qlang::level(s, r);
            auto crisp = qla::qlang::make_step(s.lattice, s.alphabet,
                                               {{s.lattice->top(), std::move(d)}});
            emit(qla::json_io::step_to_json(crisp, ref), out[slot]);
        });
    }

    // regex compile <lattice> <alphabet> <expr> -o <step-file>
    {
        static std::string lat_arg, alpha_arg, expr, out;
        auto* c = regex_cmd->add_subcommand("compile",
                                            "compile an expression to a step language");
        c->add_option("lattice", lat_arg, "lattice file or selector")->required();
        c->add_option("alphabet", alpha_arg, "comma-separated symbols")->required();
        c->add_option("expr", expr, "expression text")->required();
        c->add_option("-o,--output", out, "output file (default: stdout)");
        add_limit_flags(c, lim);
        c->callback([&] {
            auto la = load_lattice_arg(lat_arg);
            qla::Alphabet alpha = qla::make_alphabet(split_commas(alpha_arg));
            auto q = qla::qregex::parse(expr, la.lattice, alpha);
            auto step = qla::qregex::compile(q, qla::kStarComponentCap, lim.state_cap);
            emit(qla::json_io::step_to_json(step, la.ref), out);
        });
    }

    // regex extract <automaton>
    {
        static std::string path;
        auto* c = regex_cmd->add_subcommand("extract",
                                            "extract an expression from an automaton");
        c->add_option("automaton", path, "automaton file")->required();
        add_limit_flags(c, lim);
        c->callback([&] {
            auto doc = load_automaton(path);
            auto q = qla::qregex::extract(to_lvdfa(doc.machine, lim.state_cap));
            std::cout << qla::qregex::pretty(q) << "\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const qla::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qla::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
