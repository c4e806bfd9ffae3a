// json_io.hpp -- loading and saving the lattice, automaton, and step-language
// document formats, plus lattice reference resolution (builder selectors,
// file paths, inline documents).

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qla/base.hpp"
#include "qla/classical.hpp"
#include "qla/oml.hpp"
#include "qla/qfa.hpp"
#include "qla/qlang.hpp"

namespace qla::json_io {

using nlohmann::json;
using oml::LatticePtr;

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("cannot parse '" + path.string() + "': " + e.what());
    }
    return j;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
}

namespace detail {

inline const json& need(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string(what) + " document is missing '" + key + "'");
    return *it;
}

inline std::string need_string(const json& j, const char* key, const char* what) {
    const json& v = need(j, key, what);
    if (!v.is_string())
        throw InputError(std::string(what) + " field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline std::vector<std::string> need_string_array(const json& j, const char* key,
                                                  const char* what) {
    const json& v = need(j, key, what);
    if (!v.is_array())
        throw InputError(std::string(what) + " field '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string())
            throw InputError(std::string(what) + " field '" + key +
                             "' must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Lattice documents.

inline oml::RawLattice raw_lattice_from_json(const json& j) {
    if (!j.is_object()) throw InputError("lattice document must be a JSON object");
    oml::RawLattice raw;
    raw.name = j.contains("name") ? detail::need_string(j, "name", "lattice") : "";
    raw.elements = detail::need_string_array(j, "elements", "lattice");
    std::string kind =
        j.contains("order_kind") ? detail::need_string(j, "order_kind", "lattice") : "hasse";
    if (kind == "hasse")
        raw.order_kind = oml::RawLattice::OrderKind::Hasse;
    else if (kind == "leq")
        raw.order_kind = oml::RawLattice::OrderKind::Leq;
    else
        throw InputError("lattice field 'order_kind' must be \"hasse\" or \"leq\"");

    const json& order = detail::need(j, "order", "lattice");
    if (!order.is_array()) throw InputError("lattice field 'order' must be an array of pairs");
    for (const auto& pair : order) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
            throw InputError("lattice field 'order' must contain [string, string] pairs");
        raw.order.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }

    const json& ortho = detail::need(j, "ortho", "lattice");
    if (!ortho.is_object()) throw InputError("lattice field 'ortho' must be an object");
    for (const auto& [from, to] : ortho.items()) {
        if (!to.is_string()) throw InputError("lattice field 'ortho' must map strings to strings");
        raw.ortho.emplace_back(from, to.get<std::string>());
    }

    raw.bottom = detail::need_string(j, "bottom", "lattice");
    raw.top = detail::need_string(j, "top", "lattice");
    return raw;
}

inline json lattice_to_json(const oml::Lattice& l) {
    json j;
    j["name"] = l.name();
    j["elements"] = l.element_names();
    j["order_kind"] = "hasse";
    json order = json::array();
    for (const auto& [x, y] : l.covers())
        order.push_back({l.element_name(x), l.element_name(y)});
    j["order"] = order;
    json ortho = json::object();
    for (int x = 0; x < l.size(); ++x) ortho[l.element_name(x)] = l.element_name(l.ortho(x));
    j["ortho"] = ortho;
    j["bottom"] = l.element_name(l.bottom());
    j["top"] = l.element_name(l.top());
    return j;
}

/// Resolves a lattice reference: a standard selector (boolean:n, mo:n,
/// hexagon, example21), a file path relative to `base_dir`, or an inline
/// document. Validation failures surface as InputError.
inline LatticePtr lattice_from_ref(const json& ref, const std::filesystem::path& base_dir) {
    if (ref.is_object()) return oml::build(raw_lattice_from_json(ref));
    if (!ref.is_string())
        throw InputError("lattice reference must be a selector string, path, or inline document");
    std::string s = ref.get<std::string>();
    if (oml::is_standard_selector(s)) return oml::build(oml::standard_raw(s));
    std::filesystem::path p(s);
    if (!p.is_absolute()) p = base_dir / p;
    if (!std::filesystem::exists(p))
        throw InputError("lattice reference '" + s +
                         "' is neither a standard selector nor an existing file");
    return oml::build(raw_lattice_from_json(read_json_file(p)));
}

// ---------------------------------------------------------------------------
// Classical DFA documents (inside step-language documents).

inline classical::Dfa dfa_from_json(const json& j, const Alphabet& alphabet) {
    classical::Dfa d(alphabet);
    std::vector<std::string> states = detail::need_string_array(j, "states", "dfa");
    if (states.empty()) throw InputError("dfa document needs at least one state");
    std::map<std::string, int> idx;
    for (const auto& s : states) {
        if (idx.count(s)) throw InputError("duplicate dfa state '" + s + "'");
        idx[s] = d.add_state(s);
    }
    auto state_of = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end()) throw InputError("dfa document references unknown state '" + s + "'");
        return it->second;
    };
    d.start = state_of(detail::need_string(j, "start", "dfa"));
    for (const auto& s : detail::need_string_array(j, "accepting", "dfa"))
        d.accepting[static_cast<size_t>(state_of(s))] = true;

    const json& delta = detail::need(j, "delta", "dfa");
    if (!delta.is_object()) throw InputError("dfa field 'delta' must be an object");
    for (const auto& [from, row] : delta.items()) {
        int q = state_of(from);
        if (!row.is_object())
            throw InputError("dfa delta row for '" + from + "' must be an object");
        for (const auto& [sym, to] : row.items()) {
            if (!to.is_string())
                throw InputError("dfa delta entries must name target states");
            d.next[static_cast<size_t>(q)][static_cast<size_t>(require_symbol(alphabet, sym))] =
                state_of(to.get<std::string>());
        }
    }
    // Totalize missing entries with a dead state.
    int dead = -1;
    for (int q = 0; q < d.num_states(); ++q)
        for (size_t s = 0; s < alphabet.size(); ++s)
            if (d.next[static_cast<size_t>(q)][s] < 0) {
                if (dead < 0) {
                    std::string name = "dead";
                    while (idx.count(name)) name += "_";
                    dead = d.add_state(name);
                    for (size_t t = 0; t < alphabet.size(); ++t)
                        d.next[static_cast<size_t>(dead)][t] = dead;
                }
                d.next[static_cast<size_t>(q)][s] = dead;
            }
    return d;
}

inline json dfa_to_json(const classical::Dfa& d) {
    json j;
    j["states"] = d.state_names;
    j["start"] = d.state_names[static_cast<size_t>(d.start)];
    json acc = json::array();
    for (int q = 0; q < d.num_states(); ++q)
        if (d.accepting[static_cast<size_t>(q)]) acc.push_back(d.state_names[static_cast<size_t>(q)]);
    j["accepting"] = acc;
    json delta = json::object();
    for (int q = 0; q < d.num_states(); ++q) {
        json row = json::object();
        for (size_t s = 0; s < d.alphabet.size(); ++s)
            row[d.alphabet[s]] = d.state_names[static_cast<size_t>(d.next[static_cast<size_t>(q)][s])];
        delta[d.state_names[static_cast<size_t>(q)]] = row;
    }
    j["delta"] = delta;
    return j;
}

// ---------------------------------------------------------------------------
// Automaton documents.

using Machine = std::variant<qfa::Lvfa, qfa::LvfaEps, qfa::Lvdfa>;

struct AutomatonDoc {
    Machine machine;
    json lattice_ref;  // the document's original "lattice" field
};

inline AutomatonDoc automaton_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw InputError("automaton document must be a JSON object");
    LatticePtr lattice = lattice_from_ref(detail::need(j, "lattice", "automaton"), base_dir);
    std::string kind = detail::need_string(j, "kind", "automaton");
    if (kind != "lvfa" && kind != "lvdfa" && kind != "lvfa_eps")
        throw InputError("automaton field 'kind' must be \"lvfa\", \"lvdfa\", or \"lvfa_eps\"");

    std::vector<std::string> states = detail::need_string_array(j, "states", "automaton");
    std::map<std::string, int> idx;
    for (const auto& s : states) {
        if (idx.count(s)) throw InputError("duplicate automaton state '" + s + "'");
        idx[s] = static_cast<int>(idx.size());
    }
    auto state_of = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end())
            throw InputError("automaton document references unknown state '" + s + "'");
        return it->second;
    };
    Alphabet alphabet = make_alphabet(detail::need_string_array(j, "alphabet", "automaton"));

    struct Edge {
        int from;
        int symbol;  // -1 = ε
        int to;
        int value;
    };
    std::vector<Edge> edges;
    if (j.contains("transitions")) {
        const json& ts = j["transitions"];
        if (!ts.is_array()) throw InputError("automaton field 'transitions' must be an array");
        for (const auto& t : ts) {
            Edge e;
            e.from = state_of(detail::need_string(t, "from", "transition"));
            e.to = state_of(detail::need_string(t, "to", "transition"));
            std::string sym = detail::need_string(t, "symbol", "transition");
            if (sym.empty()) {
                if (kind != "lvfa_eps")
                    throw InputError("ε transitions (symbol \"\") are only allowed when kind is "
                                     "\"lvfa_eps\"");
                e.symbol = -1;
            } else {
                e.symbol = require_symbol(alphabet, sym);
            }
            e.value = t.contains("value")
                          ? lattice->require(detail::need_string(t, "value", "transition"))
                          : lattice->top();
            edges.push_back(e);
        }
    }

    auto weights_of = [&](const char* key) {
        std::vector<int> w(states.size(), lattice->bottom());
        if (!j.contains(key)) return w;
        const json& obj = j[key];
        if (!obj.is_object())
            throw InputError(std::string("automaton field '") + key + "' must be an object");
        for (const auto& [state, elem] : obj.items()) {
            if (!elem.is_string())
                throw InputError(std::string("automaton field '") + key +
                                 "' must map states to element names");
            w[static_cast<size_t>(state_of(state))] = lattice->require(elem.get<std::string>());
        }
        return w;
    };

    AutomatonDoc doc;
    doc.lattice_ref = j["lattice"];
    if (kind == "lvdfa") {
        qfa::Lvdfa d(lattice, alphabet);
        for (const auto& s : states) d.add_state(s);
        d.start = state_of(detail::need_string(j, "q0", "automaton"));
        d.final = weights_of("final");
        for (const auto& e : edges) {
            if (e.symbol < 0) throw InputError("lvdfa documents cannot contain ε transitions");
            int& slot = d.next[static_cast<size_t>(e.from)][static_cast<size_t>(e.symbol)];
            if (slot >= 0 && slot != e.to)
                throw InputError("lvdfa transition function maps ('" +
                                 states[static_cast<size_t>(e.from)] + "', '" +
                                 alphabet[static_cast<size_t>(e.symbol)] + "') twice");
            slot = e.to;
        }
        for (size_t q = 0; q < states.size(); ++q)
            for (size_t s = 0; s < alphabet.size(); ++s)
                if (d.next[q][s] < 0)
                    throw InputError("lvdfa transition function is missing ('" + states[q] +
                                     "', '" + alphabet[s] + "')");
        doc.machine = std::move(d);
    } else if (kind == "lvfa") {
        qfa::Lvfa a(lattice, alphabet);
        for (const auto& s : states) a.add_state(s);
        a.initial = weights_of("initial");
        a.final = weights_of("final");
        for (const auto& e : edges) a.set_delta(e.from, e.symbol, e.to, e.value);
        doc.machine = std::move(a);
    } else {
        qfa::LvfaEps a(lattice, alphabet);
        for (const auto& s : states) a.add_state(s);
        a.initial = weights_of("initial");
        a.final = weights_of("final");
        for (const auto& e : edges) {
            if (e.symbol < 0)
                a.delta_eps[static_cast<size_t>(e.from)][static_cast<size_t>(e.to)] = e.value;
            else
                a.delta[static_cast<size_t>(e.from)][static_cast<size_t>(e.symbol)]
                       [static_cast<size_t>(e.to)] = e.value;
        }
        doc.machine = std::move(a);
    }
    return doc;
}

namespace detail {

template <typename Weights>
inline json weights_to_json(const std::vector<std::string>& states, const Weights& w,
                            const oml::Lattice& l) {
    json out = json::object();
    for (size_t q = 0; q < states.size(); ++q)
        if (w[q] != l.bottom()) out[states[q]] = l.element_name(w[q]);
    return out;
}

}  // namespace detail

inline json automaton_to_json(const Machine& machine, const json& lattice_ref) {
    json j;
    j["lattice"] = lattice_ref;
    if (const auto* a = std::get_if<qfa::Lvfa>(&machine)) {
        const auto& l = *a->lattice;
        j["kind"] = "lvfa";
        j["states"] = a->states;
        j["alphabet"] = a->alphabet;
        json ts = json::array();
        for (int q = 0; q < a->num_states(); ++q)
            for (size_t s = 0; s < a->alphabet.size(); ++s)
                for (int p = 0; p < a->num_states(); ++p) {
                    int v = a->delta[static_cast<size_t>(q)][s][static_cast<size_t>(p)];
                    if (v == l.bottom()) continue;
                    ts.push_back({{"from", a->states[static_cast<size_t>(q)]},
                                  {"symbol", a->alphabet[s]},
                                  {"to", a->states[static_cast<size_t>(p)]},
                                  {"value", l.element_name(v)}});
                }
        j["transitions"] = ts;
        j["initial"] = detail::weights_to_json(a->states, a->initial, l);
        j["final"] = detail::weights_to_json(a->states, a->final, l);
    } else if (const auto* a = std::get_if<qfa::LvfaEps>(&machine)) {
        const auto& l = *a->lattice;
        j["kind"] = "lvfa_eps";
        j["states"] = a->states;
        j["alphabet"] = a->alphabet;
        json ts = json::array();
        for (int q = 0; q < a->num_states(); ++q) {
            for (size_t s = 0; s < a->alphabet.size(); ++s)
                for (int p = 0; p < a->num_states(); ++p) {
                    int v = a->delta[static_cast<size_t>(q)][s][static_cast<size_t>(p)];
                    if (v == l.bottom()) continue;
                    ts.push_back({{"from", a->states[static_cast<size_t>(q)]},
                                  {"symbol", a->alphabet[s]},
                                  {"to", a->states[static_cast<size_t>(p)]},
                                  {"value", l.element_name(v)}});
                }
            for (int p = 0; p < a->num_states(); ++p) {
                int v = a->delta_eps[static_cast<size_t>(q)][static_cast<size_t>(p)];
                if (v == l.bottom()) continue;
                ts.push_back({{"from", a->states[static_cast<size_t>(q)]},
                              {"symbol", ""},
                              {"to", a->states[static_cast<size_t>(p)]},
                              {"value", l.element_name(v)}});
            }
        }
        j["transitions"] = ts;
        j["initial"] = detail::weights_to_json(a->states, a->initial, l);
        j["final"] = detail::weights_to_json(a->states, a->final, l);
    } else {
        const auto& d = std::get<qfa::Lvdfa>(machine);
        const auto& l = *d.lattice;
        j["kind"] = "lvdfa";
        j["states"] = d.states;
        j["alphabet"] = d.alphabet;
        json ts = json::array();
        for (int q = 0; q < d.num_states(); ++q)
            for (size_t s = 0; s < d.alphabet.size(); ++s)
                ts.push_back({{"from", d.states[static_cast<size_t>(q)]},
                              {"symbol", d.alphabet[s]},
                              {"to", d.states[static_cast<size_t>(d.next[static_cast<size_t>(q)][s])]},
                              {"value", l.element_name(l.top())}});
        j["transitions"] = ts;
        j["q0"] = d.states[static_cast<size_t>(d.start)];
        j["final"] = detail::weights_to_json(d.states, d.final, l);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Step-language documents.

struct StepDoc {
    qlang::StepLanguage step;
    json lattice_ref;
};

inline StepDoc step_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw InputError("step-language document must be a JSON object");
    LatticePtr lattice = lattice_from_ref(detail::need(j, "lattice", "step-language"), base_dir);
    Alphabet alphabet = make_alphabet(detail::need_string_array(j, "alphabet", "step-language"));
    std::vector<qlang::StepComponent> comps;
    const json& components = detail::need(j, "components", "step-language");
    if (!components.is_array())
        throw InputError("step-language field 'components' must be an array");
    for (const auto& c : components) {
        int value = lattice->require(detail::need_string(c, "value", "component"));
        comps.push_back({value, dfa_from_json(detail::need(c, "dfa", "component"), alphabet)});
    }
    StepDoc doc;
    doc.lattice_ref = j["lattice"];
    doc.step = qlang::make_step(std::move(lattice), std::move(alphabet), std::move(comps));
    return doc;
}

inline json step_to_json(const qlang::StepLanguage& s, const json& lattice_ref) {
    json j;
    j["lattice"] = lattice_ref;
    j["alphabet"] = s.alphabet;
    json comps = json::array();
    for (const auto& c : s.components)
        comps.push_back({{"value", s.lattice->element_name(c.value)}, {"dfa", dfa_to_json(c.dfa)}});
    j["components"] = comps;
    return j;
}

}  // namespace qla::json_io
