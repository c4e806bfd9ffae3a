// qlang.hpp -- lattice-valued languages as finite joins of weighted regular
// step functions, their Moore-machine canonical form, and the closure
// operations (union, intersection, complement, scalar, concatenation, star).

#pragma once

#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qla/base.hpp"
#include "qla/classical.hpp"
#include "qla/oml.hpp"
#include "qla/qfa.hpp"

namespace qla::qlang {

using oml::LatticePtr;
using oml::LValue;

/// One weighted component: the language carries `value` wherever the DFA
/// accepts. Values are element indices of the owning StepLanguage's lattice.
struct StepComponent {
    int value;
    classical::Dfa dfa;
};

/// A finite join of weighted components. `disjoint` records whether the
/// component languages are pairwise disjoint; it is always computed from the
/// DFAs, never taken on faith from input documents.
struct StepLanguage {
    LatticePtr lattice;
    Alphabet alphabet;
    std::vector<StepComponent> components;
    bool disjoint = true;
};

/// DFA skeleton with a lattice value attached to every state; the canonical
/// form step languages are compared through.
struct MooreMachine {
    LatticePtr lattice;
    Alphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<std::vector<int>> next;
    int start = 0;
    std::vector<int> output;

    int num_states() const { return static_cast<int>(next.size()); }
    int run(const Word& w) const {
        int q = start;
        for (int s : w) q = next[static_cast<size_t>(q)][static_cast<size_t>(s)];
        return q;
    }
};

inline LValue moore_value(const MooreMachine& m, const Word& w) {
    return LValue(m.lattice, m.output[static_cast<size_t>(m.run(w))]);
}

namespace detail {
inline void check_operands(const StepLanguage& a, const StepLanguage& b) {
    if (!oml::same_lattice(a.lattice, b.lattice))
        throw InputError("operands take values in different lattices");
    if (a.alphabet != b.alphabet) throw InputError("operands have different alphabets");
}
}  // namespace detail

/// Builds a step language: checks component alphabets, drops components with
/// bottom value or empty language, and computes the disjointness flag.
inline StepLanguage make_step(LatticePtr lattice, Alphabet alphabet,
                              std::vector<StepComponent> components) {
    StepLanguage s;
    s.lattice = std::move(lattice);
    s.alphabet = std::move(alphabet);
    for (auto& c : components) {
        if (c.dfa.alphabet != s.alphabet)
            throw InputError("component DFA alphabet differs from the step language alphabet");
        if (c.value < 0 || c.value >= s.lattice->size())
            throw InputError("component value index out of range");
        if (c.value == s.lattice->bottom()) continue;
        if (classical::dfa_is_empty(c.dfa)) continue;
        s.components.push_back(std::move(c));
    }
    s.disjoint = true;
    for (size_t i = 0; i < s.components.size() && s.disjoint; ++i)
        for (size_t j = i + 1; j < s.components.size() && s.disjoint; ++j)
            if (!classical::dfa_is_empty(classical::dfa_product(
                    s.components[i].dfa, s.components[j].dfa, classical::ProductMode::Intersect)))
                s.disjoint = false;
    return s;
}

/// Pointwise evaluation: the join of the values of every component whose
/// language contains w.
inline LValue step_value(const StepLanguage& s, const Word& w) {
    int acc = s.lattice->bottom();
    for (const auto& c : s.components)
        if (classical::dfa_accepts(c.dfa, w)) acc = s.lattice->join(acc, c.value);
    return LValue(s.lattice, acc);
}

/// Reachable product of all component DFAs. Each product state's output is
/// the join of the values of the components accepting there, so the Moore
/// machine computes exactly the pointwise evaluation.
inline MooreMachine normalize(const StepLanguage& s) {
    MooreMachine m;
    m.lattice = s.lattice;
    m.alphabet = s.alphabet;
    const auto& l = *s.lattice;
    const size_t k = s.components.size();

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> tuples;
    std::queue<int> work;
    auto intern = [&](std::vector<int> t) {
        auto it = ids.find(t);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(tuples.size());
        m.state_names.push_back("m" + std::to_string(id));
        m.next.emplace_back(m.alphabet.size(), -1);
        int out = l.bottom();
        for (size_t i = 0; i < k; ++i)
            if (s.components[i].dfa.accepting[static_cast<size_t>(t[i])])
                out = l.join(out, s.components[i].value);
        m.output.push_back(out);
        ids.emplace(t, id);
        tuples.push_back(std::move(t));
        work.push(id);
        return id;
    };

    std::vector<int> start(k);
    for (size_t i = 0; i < k; ++i) start[i] = s.components[i].dfa.start;
    m.start = intern(std::move(start));
    while (!work.empty()) {
        int id = work.front();
        work.pop();
        for (size_t sym = 0; sym < m.alphabet.size(); ++sym) {
            std::vector<int> t(k);
            for (size_t i = 0; i < k; ++i)
                t[i] = s.components[i]
                           .dfa.next[static_cast<size_t>(tuples[static_cast<size_t>(id)][i])][sym];
            m.next[static_cast<size_t>(id)][sym] = intern(std::move(t));
        }
    }
    return m;
}

/// Level decomposition: one component per distinct nonzero output, accepting
/// exactly the states with that output. The components partition Σ*, so the
/// result is disjoint by construction (and make_step re-verifies it).
inline StepLanguage moore_to_step(const MooreMachine& m) {
    std::set<int> outputs(m.output.begin(), m.output.end());
    std::vector<StepComponent> comps;
    for (int r : outputs) {
        if (r == m.lattice->bottom()) continue;
        classical::Dfa d(m.alphabet);
        for (int q = 0; q < m.num_states(); ++q) {
            d.add_state(m.state_names[static_cast<size_t>(q)]);
            d.next[static_cast<size_t>(q)] = m.next[static_cast<size_t>(q)];
            d.accepting[static_cast<size_t>(q)] = m.output[static_cast<size_t>(q)] == r;
        }
        d.start = m.start;
        comps.push_back({r, classical::dfa_minimize(d)});
    }
    return make_step(m.lattice, m.alphabet, std::move(comps));
}

/// The same language with pairwise-disjoint components. Meet does not
/// distribute over join in an orthomodular lattice, so the component-level
/// op constructions are only sound on disjoint families; every op except
/// union funnels its operands through here.
inline StepLanguage disjoint_form(const StepLanguage& s) {
    if (!s.disjoint) return moore_to_step(normalize(s));
    // Already disjoint, but components may still share a value. Merging each
    // value group into one component keeps the function (disjoint components
    // never both accept) and keeps the sizes the later constructions see
    // proportional to the number of distinct values, not of components.
    std::map<int, std::vector<size_t>> groups;
    for (size_t i = 0; i < s.components.size(); ++i)
        groups[s.components[i].value].push_back(i);
    if (groups.size() == s.components.size()) return s;
    std::vector<StepComponent> comps;
    for (const auto& [v, members] : groups) {
        if (members.size() == 1) {
            comps.push_back(s.components[members.front()]);
            continue;
        }
        classical::Nfa u = classical::nfa_from_dfa(s.components[members.front()].dfa);
        for (size_t j = 1; j < members.size(); ++j)
            u = classical::nfa_union(u, classical::nfa_from_dfa(s.components[members[j]].dfa));
        comps.push_back({v, classical::dfa_minimize(classical::determinize(u))});
    }
    return make_step(s.lattice, s.alphabet, std::move(comps));
}

inline MooreMachine lvdfa_to_moore(const qfa::Lvdfa& d) {
    MooreMachine m;
    m.lattice = d.lattice;
    m.alphabet = d.alphabet;
    m.state_names = d.states;
    m.next = d.next;
    m.start = d.start;
    m.output = d.final;
    return m;
}

inline qfa::Lvdfa moore_to_lvdfa(const MooreMachine& m) {
    qfa::Lvdfa d(m.lattice, m.alphabet);
    for (const auto& name : m.state_names) d.add_state(name);
    d.next = m.next;
    d.start = m.start;
    d.final = m.output;
    return d;
}

/// Decomposes a deterministic machine into its level languages: the value at
/// w is the final weight of the state w reaches, so components are the
/// preimages of the distinct nonzero weights.
inline StepLanguage lvdfa_to_step(const qfa::Lvdfa& d) {
    return moore_to_step(lvdfa_to_moore(d));
}

/// Builds a nondeterministic machine with the same evaluation: a fresh start
/// state fans out into a crisp copy of every component DFA, and acceptance
/// weight k_i is collected exactly by the runs their DFA accepts.
inline qfa::Lvfa step_to_lvfa(const StepLanguage& s) {
    const auto& l = *s.lattice;
    qfa::Lvfa a(s.lattice, s.alphabet);
    int q0 = a.add_state("q0");
    a.initial[static_cast<size_t>(q0)] = l.top();

    std::vector<int> base(s.components.size());
    for (size_t i = 0; i < s.components.size(); ++i) {
        const auto& d = s.components[i].dfa;
        base[i] = a.num_states();
        for (int q = 0; q < d.num_states(); ++q)
            a.add_state("c" + std::to_string(i) + "." + d.state_names[static_cast<size_t>(q)]);
    }
    int f0 = l.bottom();
    for (size_t i = 0; i < s.components.size(); ++i) {
        const auto& d = s.components[i].dfa;
        for (int q = 0; q < d.num_states(); ++q) {
            for (size_t sym = 0; sym < s.alphabet.size(); ++sym)
                a.set_delta(base[i] + q, static_cast<int>(sym),
                            base[i] + d.next[static_cast<size_t>(q)][sym], l.top());
            if (d.accepting[static_cast<size_t>(q)])
                a.final[static_cast<size_t>(base[i] + q)] = s.components[i].value;
        }
        for (size_t sym = 0; sym < s.alphabet.size(); ++sym)
            a.set_delta(q0, static_cast<int>(sym),
                        base[i] + d.next[static_cast<size_t>(d.start)][sym], l.top());
        if (d.accepting[static_cast<size_t>(d.start)]) f0 = l.join(f0, s.components[i].value);
    }
    a.final[static_cast<size_t>(q0)] = f0;
    return a;
}

/// Shortest-counterexample equivalence of two step languages, decided on the
/// product of their canonical Moore machines.
inline EquivalenceResult equivalent(const StepLanguage& a, const StepLanguage& b) {
    detail::check_operands(a, b);
    MooreMachine ma = normalize(a);
    MooreMachine mb = normalize(b);
    struct Entry {
        int parent;
        int symbol;
    };
    std::map<std::pair<int, int>, Entry> seen;
    std::vector<std::pair<int, int>> order;
    std::queue<int> work;
    auto visit = [&](int x, int y, int parent, int symbol) {
        if (seen.count({x, y})) return;
        seen[{x, y}] = {parent, symbol};
        order.emplace_back(x, y);
        work.push(static_cast<int>(order.size()) - 1);
    };
    visit(ma.start, mb.start, -1, -1);
    while (!work.empty()) {
        int idx = work.front();
        work.pop();
        auto [x, y] = order[static_cast<size_t>(idx)];
        if (ma.output[static_cast<size_t>(x)] != mb.output[static_cast<size_t>(y)]) {
            Word w;
            for (int cur = idx; cur >= 0;) {
                Entry e = seen.at(order[static_cast<size_t>(cur)]);
                if (e.symbol >= 0) w.push_back(e.symbol);
                cur = e.parent;
            }
            std::reverse(w.begin(), w.end());
            return {false, std::move(w)};
        }
        for (size_t s = 0; s < ma.alphabet.size(); ++s)
            visit(ma.next[static_cast<size_t>(x)][s], mb.next[static_cast<size_t>(y)][s], idx,
                  static_cast<int>(s));
    }
    return {true, {}};
}

// ---------------------------------------------------------------------------
// Closure operations. Union is sound on any component lists because join is
// associative and commutative; every other op converts to disjoint form
// first (see disjoint_form).

inline StepLanguage op_union(const StepLanguage& a, const StepLanguage& b) {
    detail::check_operands(a, b);
    std::vector<StepComponent> comps = a.components;
    comps.insert(comps.end(), b.components.begin(), b.components.end());
    return make_step(a.lattice, a.alphabet, std::move(comps));
}

/// (A ∧ B)(w) = A(w) ∧ B(w), realized on the Moore product with meet-combined
/// outputs; the level sets of the product are exactly the pairwise
/// intersections of the operand level sets.
inline StepLanguage op_intersect(const StepLanguage& a, const StepLanguage& b) {
    detail::check_operands(a, b);
    MooreMachine ma = normalize(a);
    MooreMachine mb = normalize(b);
    const auto& l = *a.lattice;

    MooreMachine m;
    m.lattice = a.lattice;
    m.alphabet = a.alphabet;
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    std::queue<int> work;
    auto intern = [&](int x, int y) {
        auto it = ids.find({x, y});
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(pairs.size());
        m.state_names.push_back("m" + std::to_string(id));
        m.next.emplace_back(m.alphabet.size(), -1);
        m.output.push_back(l.meet(ma.output[static_cast<size_t>(x)],
                                  mb.output[static_cast<size_t>(y)]));
        ids.emplace(std::make_pair(x, y), id);
        pairs.emplace_back(x, y);
        work.push(id);
        return id;
    };
    m.start = intern(ma.start, mb.start);
    while (!work.empty()) {
        int id = work.front();
        work.pop();
        auto [x, y] = pairs[static_cast<size_t>(id)];
        for (size_t s = 0; s < m.alphabet.size(); ++s)
            m.next[static_cast<size_t>(id)][s] =
                intern(ma.next[static_cast<size_t>(x)][s], mb.next[static_cast<size_t>(y)][s]);
    }
    return moore_to_step(m);
}

/// (r ∧ A)(w) = r ∧ A(w): meet each disjoint-level value with r.
inline StepLanguage op_scalar(const LValue& r, const StepLanguage& a) {
    if (!oml::same_lattice(r.lattice(), a.lattice))
        throw InputError("scalar value comes from a different lattice");
    StepLanguage d = disjoint_form(a);
    std::vector<StepComponent> comps;
    for (auto& c : d.components)
        comps.push_back({a.lattice->meet(r.index(), c.value), std::move(c.dfa)});
    return make_step(a.lattice, a.alphabet, std::move(comps));
}

/// (A⊥)(w) = (A(w))⊥ over the Moore levels, including the level where A is
/// bottom (its complement value is top).
inline StepLanguage op_complement(const StepLanguage& a) {
    MooreMachine m = normalize(a);
    const auto& l = *a.lattice;
    std::set<int> outputs(m.output.begin(), m.output.end());
    std::vector<StepComponent> comps;
    for (int r : outputs) {
        int rc = l.ortho(r);
        if (rc == l.bottom()) continue;
        classical::Dfa d(m.alphabet);
        for (int q = 0; q < m.num_states(); ++q) {
            d.add_state(m.state_names[static_cast<size_t>(q)]);
            d.next[static_cast<size_t>(q)] = m.next[static_cast<size_t>(q)];
            d.accepting[static_cast<size_t>(q)] = m.output[static_cast<size_t>(q)] == r;
        }
        d.start = m.start;
        comps.push_back({rc, classical::dfa_minimize(d)});
    }
    return make_step(a.lattice, a.alphabet, std::move(comps));
}

/// (A · B)(w) = ⋁ over splits w = u v of A(u) ∧ B(v). On disjoint operands
/// this is the pairwise construction (k_i ∧ d_j, L_i M_j).
inline StepLanguage op_concat(const StepLanguage& a, const StepLanguage& b,
                              int state_cap = kSubsetStateCap) {
    detail::check_operands(a, b);
    StepLanguage da = disjoint_form(a);
    StepLanguage db = disjoint_form(b);
    const auto& l = *a.lattice;
    std::vector<StepComponent> comps;
    for (const auto& ca : da.components)
        for (const auto& cb : db.components) {
            int v = l.meet(ca.value, cb.value);
            if (v == l.bottom()) continue;
            classical::Dfa d = classical::dfa_minimize(classical::determinize(
                classical::nfa_concat(classical::nfa_from_dfa(ca.dfa),
                                      classical::nfa_from_dfa(cb.dfa)),
                state_cap));
            comps.push_back({v, std::move(d)});
        }
    return make_step(a.lattice, a.alphabet, std::move(comps));
}

/// (A*)(w) = 1 at ε joined with ⋁ over decompositions of w into nonempty
/// pieces of the meet of the piece values. For disjoint components this
/// groups by the set K of component indices a decomposition uses: the value
/// is ⋀_{i∈K} k_i and the words form a regular language L(K) tracked by one
/// NFA with a hub state per K.
inline StepLanguage op_star(const StepLanguage& a, int component_cap = kStarComponentCap,
                            int state_cap = kSubsetStateCap) {
    const auto& l = *a.lattice;
    StepLanguage d = disjoint_form(a);
    const int m = static_cast<int>(d.components.size());
    if (m > component_cap)
        throw ResourceError("star over " + std::to_string(m) +
                            " disjoint components exceeds the cap of " +
                            std::to_string(component_cap));

    std::vector<StepComponent> comps;
    if (m > 0) {
        std::vector<classical::Dfa> parts;
        parts.reserve(static_cast<size_t>(m));
        for (const auto& c : d.components) parts.push_back(classical::dfa_minimize(c.dfa));

        const int num_k = 1 << m;
        std::vector<int> offset(static_cast<size_t>(m) + 1, 0);
        for (int i = 0; i < m; ++i)
            offset[static_cast<size_t>(i) + 1] =
                offset[static_cast<size_t>(i)] + parts[static_cast<size_t>(i)].num_states();
        const int block = offset[static_cast<size_t>(m)];
        auto hub_id = [&](int k_set) { return k_set; };
        auto pass_id = [&](int k_set, int i, int q) {
            return num_k + k_set * block + offset[static_cast<size_t>(i)] + q;
        };

        classical::Nfa nfa(a.alphabet);
        const int total = num_k + num_k * block;
        for (int s = 0; s < total; ++s) nfa.add_state();
        nfa.initial[static_cast<size_t>(hub_id(0))] = true;

        for (int k_set = 0; k_set < num_k; ++k_set) {
            for (int i = 0; i < m; ++i) {
                const auto& p = parts[static_cast<size_t>(i)];
                // enter a pass through component i (repeats allowed: K only
                // records which components have completed at least once)
                nfa.add_eps(hub_id(k_set), pass_id(k_set, i, p.start));
                for (int q = 0; q < p.num_states(); ++q) {
                    for (size_t sym = 0; sym < a.alphabet.size(); ++sym)
                        nfa.add_transition(pass_id(k_set, i, q), static_cast<int>(sym),
                                           pass_id(k_set, i, p.next[static_cast<size_t>(q)][sym]));
                    if (p.accepting[static_cast<size_t>(q)])
                        nfa.add_eps(pass_id(k_set, i, q), hub_id(k_set | (1 << i)));
                }
            }
        }

        std::vector<std::vector<int>> subsets;
        classical::Dfa skeleton = classical::determinize(nfa, state_cap, &subsets);

        for (int k_set = 1; k_set < num_k; ++k_set) {
            int value = l.top();
            for (int i = 0; i < m; ++i)
                if (k_set & (1 << i)) value = l.meet(value, d.components[static_cast<size_t>(i)].value);
            if (value == l.bottom()) continue;
            classical::Dfa dk = skeleton;
            int hub = hub_id(k_set);
            for (size_t s = 0; s < subsets.size(); ++s)
                dk.accepting[s] =
                    std::binary_search(subsets[s].begin(), subsets[s].end(), hub);
            comps.push_back({value, classical::dfa_minimize(dk)});
        }
    }
    comps.push_back({l.top(), classical::dfa_eps_only(a.alphabet)});
    return make_step(a.lattice, a.alphabet, std::move(comps));
}

/// Independent star reference: enumerates every composition of w into
/// nonempty pieces, evaluates each piece pointwise, and joins the meets
/// (adding the ε-value variant when A(ε) is nonzero). Exponential in |w|.
inline LValue star_oracle(const StepLanguage& a, const Word& w,
                          int length_bound = kWordLengthBound) {
    const auto& l = *a.lattice;
    if (static_cast<int>(w.size()) > length_bound)
        throw ResourceError("star reference evaluation is capped at words of length " +
                            std::to_string(length_bound));
    if (w.empty()) return LValue(a.lattice, l.top());
    const int n = static_cast<int>(w.size());
    int eps_value = step_value(a, {}).index();
    int acc = l.bottom();
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        int v = l.top();
        int begin = 0;
        for (int i = 0; i < n; ++i) {
            bool cut_here = i == n - 1 || (mask & (1 << i));
            if (!cut_here) continue;
            Word piece(w.begin() + begin, w.begin() + i + 1);
            v = l.meet(v, step_value(a, piece).index());
            begin = i + 1;
        }
        acc = l.join(acc, v);
        if (eps_value != l.bottom()) acc = l.join(acc, l.meet(v, eps_value));
    }
    return LValue(a.lattice, acc);
}

/// Words where the language's value is at least r.
inline classical::Dfa cut(const StepLanguage& a, const LValue& r) {
    if (!oml::same_lattice(r.lattice(), a.lattice))
        throw InputError("cut threshold comes from a different lattice");
    MooreMachine m = normalize(a);
    classical::Dfa d(a.alphabet);
    for (int q = 0; q < m.num_states(); ++q) {
        d.add_state(m.state_names[static_cast<size_t>(q)]);
        d.next[static_cast<size_t>(q)] = m.next[static_cast<size_t>(q)];
        d.accepting[static_cast<size_t>(q)] =
            a.lattice->leq(r.index(), m.output[static_cast<size_t>(q)]);
    }
    d.start = m.start;
    return d;
}

/// Words where the language's value is exactly r.
inline classical::Dfa level(const StepLanguage& a, const LValue& r) {
    if (!oml::same_lattice(r.lattice(), a.lattice))
        throw InputError("level value comes from a different lattice");
    MooreMachine m = normalize(a);
    classical::Dfa d(a.alphabet);
    for (int q = 0; q < m.num_states(); ++q) {
        d.add_state(m.state_names[static_cast<size_t>(q)]);
        d.next[static_cast<size_t>(q)] = m.next[static_cast<size_t>(q)];
        d.accepting[static_cast<size_t>(q)] = m.output[static_cast<size_t>(q)] == r.index();
    }
    d.start = m.start;
    return d;
}

}  // namespace qla::qlang
