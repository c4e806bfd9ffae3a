// qfa.hpp -- automata whose transitions, initial weights, and final weights
// take values in a finite orthomodular lattice, plus the annotated-subset
// determinization and ε-elimination pipeline.

#pragma once

#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qla/base.hpp"
#include "qla/oml.hpp"

namespace qla::qfa {

using oml::LatticePtr;
using oml::LValue;

/// Nondeterministic lattice-valued automaton. Transition, initial, and final
/// maps are total; entries default to lattice bottom. Values are stored as
/// element indices of `lattice`.
struct Lvfa {
    LatticePtr lattice;
    std::vector<std::string> states;
    Alphabet alphabet;
    std::vector<std::vector<std::vector<int>>> delta;  // [from][symbol][to]
    std::vector<int> initial;                          // [state]
    std::vector<int> final;                            // [state]

    Lvfa() = default;
    Lvfa(LatticePtr lat, Alphabet alpha) : lattice(std::move(lat)), alphabet(std::move(alpha)) {}

    int num_states() const { return static_cast<int>(states.size()); }
    int add_state(std::string name) {
        states.push_back(std::move(name));
        delta.emplace_back(alphabet.size(),
                           std::vector<int>(states.size(), lattice->bottom()));
        for (auto& row : delta)
            for (auto& per_symbol : row) per_symbol.resize(states.size(), lattice->bottom());
        initial.push_back(lattice->bottom());
        final.push_back(lattice->bottom());
        return num_states() - 1;
    }
    int state_index(std::string_view name) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        return -1;
    }
    void set_delta(int from, int symbol, int to, int value) {
        delta[static_cast<size_t>(from)][static_cast<size_t>(symbol)][static_cast<size_t>(to)] = value;
    }
};

/// Lvfa extended with an ε-transition table.
struct LvfaEps {
    LatticePtr lattice;
    std::vector<std::string> states;
    Alphabet alphabet;
    std::vector<std::vector<std::vector<int>>> delta;  // [from][symbol][to]
    std::vector<std::vector<int>> delta_eps;           // [from][to]
    std::vector<int> initial;
    std::vector<int> final;

    LvfaEps() = default;
    LvfaEps(LatticePtr lat, Alphabet alpha)
        : lattice(std::move(lat)), alphabet(std::move(alpha)) {}

    int num_states() const { return static_cast<int>(states.size()); }
    int add_state(std::string name) {
        states.push_back(std::move(name));
        delta.emplace_back(alphabet.size(),
                           std::vector<int>(states.size(), lattice->bottom()));
        delta_eps.emplace_back(states.size(), lattice->bottom());
        for (size_t q = 0; q < states.size(); ++q) {
            for (auto& per_symbol : delta[q]) per_symbol.resize(states.size(), lattice->bottom());
            delta_eps[q].resize(states.size(), lattice->bottom());
        }
        initial.push_back(lattice->bottom());
        final.push_back(lattice->bottom());
        return num_states() - 1;
    }
    int state_index(std::string_view name) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        return -1;
    }
};

/// Deterministic skeleton with lattice-valued acceptance: a total transition
/// function, one start state, and a final weight per state.
struct Lvdfa {
    LatticePtr lattice;
    std::vector<std::string> states;
    Alphabet alphabet;
    std::vector<std::vector<int>> next;  // [state][symbol] -> state
    int start = 0;
    std::vector<int> final;

    Lvdfa() = default;
    Lvdfa(LatticePtr lat, Alphabet alpha) : lattice(std::move(lat)), alphabet(std::move(alpha)) {}

    int num_states() const { return static_cast<int>(states.size()); }
    int add_state(std::string name) {
        states.push_back(std::move(name));
        next.emplace_back(alphabet.size(), -1);
        final.push_back(lattice->bottom());
        return num_states() - 1;
    }
    int run(const Word& w) const {
        int q = start;
        for (int s : w) q = next[static_cast<size_t>(q)][static_cast<size_t>(s)];
        return q;
    }
};

inline LValue eval_dfa(const Lvdfa& d, const Word& w) {
    return LValue(d.lattice, d.final[static_cast<size_t>(d.run(w))]);
}

/// A state paired with an accumulated lattice value. Sets of these are the
/// states of the determinized machine; one state may carry several values.
using AnnotatedPair = std::pair<int, int>;          // (state, element)
using AnnotatedSet = std::vector<AnnotatedPair>;    // sorted, duplicate-free

inline std::string format_annotated(const AnnotatedSet& z, const Lvfa& a) {
    std::string s = "{";
    for (size_t i = 0; i < z.size(); ++i) {
        if (i) s += ",";
        s += "(" + a.states[static_cast<size_t>(z[i].first)] + "," +
             a.lattice->element_name(z[i].second) + ")";
    }
    s += "}";
    return s;
}

namespace detail {

inline std::vector<int> value_image(const Lvfa& a) {
    std::set<int> vals(a.initial.begin(), a.initial.end());
    vals.insert(a.final.begin(), a.final.end());
    for (const auto& row : a.delta)
        for (const auto& per_symbol : row) vals.insert(per_symbol.begin(), per_symbol.end());
    return std::vector<int>(vals.begin(), vals.end());
}

inline AnnotatedSet annotated_start(const Lvfa& a) {
    AnnotatedSet s;
    for (int q = 0; q < a.num_states(); ++q)
        if (a.initial[static_cast<size_t>(q)] != a.lattice->bottom())
            s.emplace_back(q, a.initial[static_cast<size_t>(q)]);
    return s;
}

inline AnnotatedSet annotated_step(const Lvfa& a, const AnnotatedSet& z, int symbol) {
    const auto& l = *a.lattice;
    std::set<AnnotatedPair> out;
    for (const auto& [q, r] : z)
        for (int p = 0; p < a.num_states(); ++p) {
            int v = l.meet(r, a.delta[static_cast<size_t>(q)][static_cast<size_t>(symbol)]
                                  [static_cast<size_t>(p)]);
            if (v != l.bottom()) out.emplace(p, v);
        }
    return AnnotatedSet(out.begin(), out.end());
}

inline int annotated_accept(const Lvfa& a, const AnnotatedSet& z) {
    const auto& l = *a.lattice;
    int acc = l.bottom();
    for (const auto& [q, r] : z) acc = l.join(acc, l.meet(r, a.final[static_cast<size_t>(q)]));
    return acc;
}

}  // namespace detail

/// Direct evaluation: propagate the annotated state set across the word and
/// join the accumulated values against the final weights. For the empty word
/// this is ⋁_q I(q) ∧ F(q).
inline LValue eval_nfa(const Lvfa& a, const Word& w) {
    AnnotatedSet cur = detail::annotated_start(a);
    for (int s : w) cur = detail::annotated_step(a, cur, s);
    return LValue(a.lattice, detail::annotated_accept(a, cur));
}

/// Brute-force evaluation joining I(q0) ∧ δ(q0,w1,q1) ∧ ... ∧ F(qn) over
/// every state sequence. Exponential in |w|; this is the reference the
/// efficient routes are checked against.
inline LValue eval_nfa_paths(const Lvfa& a, const Word& w) {
    const auto& l = *a.lattice;
    const int n = a.num_states();
    int acc = l.bottom();
    std::vector<int> seq(w.size() + 1, 0);
    auto rec = [&](auto&& self, size_t pos, int value) -> void {
        if (pos == w.size() + 1) {
            acc = l.join(acc, l.meet(value, a.final[static_cast<size_t>(seq[w.size()])]));
            return;
        }
        for (int q = 0; q < n; ++q) {
            seq[pos] = q;
            int v = pos == 0
                        ? a.initial[static_cast<size_t>(q)]
                        : l.meet(value, a.delta[static_cast<size_t>(seq[pos - 1])]
                                               [static_cast<size_t>(w[pos - 1])]
                                               [static_cast<size_t>(q)]);
            self(self, pos + 1, v);
        }
    };
    if (n == 0) return LValue(a.lattice, l.bottom());
    rec(rec, 0, l.top());
    return LValue(a.lattice, acc);
}

/// Join-closure of the meet-closure of every value the automaton mentions.
/// Every value any evaluation can produce lies in this set.
inline std::vector<LValue> image_bound(const Lvfa& a) {
    std::vector<int> closed =
        oml::join_closure_indices(*a.lattice, oml::meet_closure_indices(*a.lattice, detail::value_image(a)));
    std::vector<LValue> out;
    out.reserve(closed.size());
    for (int x : closed) out.emplace_back(a.lattice, x);
    return out;
}

/// Annotated-subset determinization. Reachable annotated sets become states,
/// named by their contents; the start state is the annotated initial set.
/// Throws ResourceError when more than `state_cap` sets appear.
inline Lvdfa determinize(const Lvfa& a, int state_cap = kAnnotatedStateCap) {
    Lvdfa d(a.lattice, a.alphabet);
    std::map<AnnotatedSet, int> ids;
    std::vector<AnnotatedSet> sets;
    std::queue<int> work;

    auto intern = [&](AnnotatedSet z) {
        auto it = ids.find(z);
        if (it != ids.end()) return it->second;
        int id = d.add_state(format_annotated(z, a));
        if (id >= state_cap)
            throw ResourceError("determinization exceeded the state cap of " +
                                std::to_string(state_cap));
        d.final[static_cast<size_t>(id)] = detail::annotated_accept(a, z);
        ids.emplace(z, id);
        sets.push_back(std::move(z));
        work.push(id);
        return id;
    };

    d.start = intern(detail::annotated_start(a));
    while (!work.empty()) {
        int id = work.front();
        work.pop();
        for (size_t s = 0; s < a.alphabet.size(); ++s) {
            AnnotatedSet z = detail::annotated_step(a, sets[static_cast<size_t>(id)],
                                                    static_cast<int>(s));
            d.next[static_cast<size_t>(id)][s] = intern(std::move(z));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// ε machinery.

namespace detail {

inline bool is_crisp(const LvfaEps& a) {
    const auto& l = *a.lattice;
    auto ok = [&](int v) { return v == l.bottom() || v == l.top(); };
    for (const auto& row : a.delta)
        for (const auto& per_symbol : row)
            for (int v : per_symbol)
                if (!ok(v)) return false;
    for (const auto& row : a.delta_eps)
        for (int v : row)
            if (!ok(v)) return false;
    return true;
}

}  // namespace detail

/// Transitive ε-closure of a state set. Requires crisp transitions; weighted
/// ε-edges have no single closure and must go through crispify_eps first.
inline std::vector<int> epsilon_closure(const LvfaEps& a, const std::vector<int>& from) {
    if (!detail::is_crisp(a))
        throw InputError("epsilon_closure requires crisp transitions; run crispify_eps first");
    const int top = a.lattice->top();
    std::vector<bool> seen(static_cast<size_t>(a.num_states()), false);
    std::vector<int> stack;
    for (int q : from)
        if (!seen[static_cast<size_t>(q)]) {
            seen[static_cast<size_t>(q)] = true;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int p = 0; p < a.num_states(); ++p)
            if (a.delta_eps[static_cast<size_t>(q)][static_cast<size_t>(p)] == top &&
                !seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = true;
                stack.push_back(p);
            }
    }
    std::vector<int> out;
    for (int q = 0; q < a.num_states(); ++q)
        if (seen[static_cast<size_t>(q)]) out.push_back(q);
    return out;
}

/// Annotated-subset construction over Σ ∪ {ε}. The result has the same
/// evaluation, crisp transitions (every edge value is top or bottom), and a
/// single initial state of weight top, which is what remove_epsilon needs.
inline LvfaEps crispify_eps(const LvfaEps& a, int state_cap = kAnnotatedStateCap) {
    const auto& l = *a.lattice;
    const int num_symbols = static_cast<int>(a.alphabet.size());

    auto step = [&](const AnnotatedSet& z, int symbol) {
        // symbol == num_symbols selects the ε table
        std::set<AnnotatedPair> out;
        for (const auto& [q, r] : z)
            for (int p = 0; p < a.num_states(); ++p) {
                int edge = symbol == num_symbols
                               ? a.delta_eps[static_cast<size_t>(q)][static_cast<size_t>(p)]
                               : a.delta[static_cast<size_t>(q)][static_cast<size_t>(symbol)]
                                        [static_cast<size_t>(p)];
                int v = l.meet(r, edge);
                if (v != l.bottom()) out.emplace(p, v);
            }
        return AnnotatedSet(out.begin(), out.end());
    };

    std::map<AnnotatedSet, int> ids;
    std::vector<AnnotatedSet> sets;
    std::queue<int> work;
    LvfaEps b(a.lattice, a.alphabet);

    auto format = [&](const AnnotatedSet& z) {
        std::string s = "{";
        for (size_t i = 0; i < z.size(); ++i) {
            if (i) s += ",";
            s += "(" + a.states[static_cast<size_t>(z[i].first)] + "," +
                 l.element_name(z[i].second) + ")";
        }
        return s + "}";
    };
    auto intern = [&](AnnotatedSet z) {
        auto it = ids.find(z);
        if (it != ids.end()) return it->second;
        int id = b.add_state(format(z));
        if (id >= state_cap)
            throw ResourceError("ε-determinization exceeded the state cap of " +
                                std::to_string(state_cap));
        int acc = l.bottom();
        for (const auto& [q, r] : z) acc = l.join(acc, l.meet(r, a.final[static_cast<size_t>(q)]));
        b.final[static_cast<size_t>(id)] = acc;
        ids.emplace(z, id);
        sets.push_back(std::move(z));
        work.push(id);
        return id;
    };

    AnnotatedSet start;
    for (int q = 0; q < a.num_states(); ++q)
        if (a.initial[static_cast<size_t>(q)] != l.bottom())
            start.emplace_back(q, a.initial[static_cast<size_t>(q)]);
    int start_id = intern(std::move(start));
    b.initial[static_cast<size_t>(start_id)] = l.top();

    while (!work.empty()) {
        int id = work.front();
        work.pop();
        for (int s = 0; s <= num_symbols; ++s) {
            int to = intern(step(sets[static_cast<size_t>(id)], s));
            if (s == num_symbols)
                b.delta_eps[static_cast<size_t>(id)][static_cast<size_t>(to)] = l.top();
            else
                b.delta[static_cast<size_t>(id)][static_cast<size_t>(s)][static_cast<size_t>(to)] =
                    l.top();
        }
    }
    return b;
}

/// Removes ε-transitions from a crisp machine with a single weight-top
/// initial state: symbol moves are replaced by closure-extended moves and
/// the start state absorbs the final weights of its ε-closure.
inline Lvfa remove_epsilon(const LvfaEps& a) {
    const auto& l = *a.lattice;
    if (!detail::is_crisp(a))
        throw InputError("remove_epsilon requires crisp transitions; run crispify_eps first");
    int q0 = -1;
    for (int q = 0; q < a.num_states(); ++q) {
        if (a.initial[static_cast<size_t>(q)] == l.bottom()) continue;
        if (a.initial[static_cast<size_t>(q)] != l.top() || q0 >= 0)
            throw InputError(
                "remove_epsilon requires exactly one initial state of weight top; run "
                "crispify_eps first");
        q0 = q;
    }
    if (q0 < 0)
        throw InputError(
            "remove_epsilon requires exactly one initial state of weight top; run "
            "crispify_eps first");

    std::vector<std::vector<int>> closure(static_cast<size_t>(a.num_states()));
    for (int q = 0; q < a.num_states(); ++q) closure[static_cast<size_t>(q)] = epsilon_closure(a, {q});

    Lvfa out(a.lattice, a.alphabet);
    for (const auto& name : a.states) out.add_state(name);
    out.initial[static_cast<size_t>(q0)] = l.top();

    for (int q = 0; q < a.num_states(); ++q) {
        for (size_t s = 0; s < a.alphabet.size(); ++s) {
            std::set<int> targets;
            for (int p : closure[static_cast<size_t>(q)])
                for (int t = 0; t < a.num_states(); ++t)
                    if (a.delta[static_cast<size_t>(p)][s][static_cast<size_t>(t)] == l.top())
                        targets.insert(t);
            for (int t : epsilon_closure(a, std::vector<int>(targets.begin(), targets.end())))
                out.set_delta(q, static_cast<int>(s), t, l.top());
        }
        out.final[static_cast<size_t>(q)] = a.final[static_cast<size_t>(q)];
    }
    int e0 = l.bottom();
    for (int p : closure[static_cast<size_t>(q0)]) e0 = l.join(e0, a.final[static_cast<size_t>(p)]);
    out.final[static_cast<size_t>(q0)] = e0;
    return out;
}

/// Full pipeline: crispify, strip ε-moves, determinize.
inline Lvdfa eps_to_dfa(const LvfaEps& a, int state_cap = kAnnotatedStateCap) {
    return determinize(remove_epsilon(crispify_eps(a, state_cap)), state_cap);
}

/// Path-enumeration evaluation of an ε-automaton: explores (state, value,
/// position) triples, where ε-moves keep the position and symbol moves
/// advance it. Values only descend inside the finite meet-closure, so the
/// triple space is finite and memoization terminates even through ε-loops.
inline LValue eval_eps_paths(const LvfaEps& a, const Word& w) {
    const auto& l = *a.lattice;
    std::set<std::tuple<int, int, int>> seen;
    std::vector<std::tuple<int, int, int>> stack;
    auto push = [&](int q, int r, int pos) {
        if (r == l.bottom()) return;
        if (seen.emplace(q, r, pos).second) stack.emplace_back(q, r, pos);
    };
    for (int q = 0; q < a.num_states(); ++q) push(q, a.initial[static_cast<size_t>(q)], 0);

    int acc = l.bottom();
    while (!stack.empty()) {
        auto [q, r, pos] = stack.back();
        stack.pop_back();
        if (pos == static_cast<int>(w.size()))
            acc = l.join(acc, l.meet(r, a.final[static_cast<size_t>(q)]));
        for (int p = 0; p < a.num_states(); ++p) {
            push(p, l.meet(r, a.delta_eps[static_cast<size_t>(q)][static_cast<size_t>(p)]), pos);
            if (pos < static_cast<int>(w.size()))
                push(p,
                     l.meet(r, a.delta[static_cast<size_t>(q)]
                                      [static_cast<size_t>(w[static_cast<size_t>(pos)])]
                                      [static_cast<size_t>(p)]),
                     pos + 1);
        }
    }
    return LValue(a.lattice, acc);
}

// ---------------------------------------------------------------------------
// Pumping.

struct PumpDecomposition {
    Word u, v, w;     // z = u v w, v nonempty, |u v| <= state count
    int state_count;  // number of states of the machine that was pumped
};

/// Splits z = u v w around the first repeated state of the run, choosing the
/// smallest end position and then the smallest start position. Every pumped
/// word u v^i w runs to the same state, hence evaluates to the same value.
/// Requires |z| >= number of states.
inline PumpDecomposition pump_decompose(const Lvdfa& d, const Word& z) {
    const int n = d.num_states();
    if (static_cast<int>(z.size()) < n)
        throw InputError("pumping needs a word at least as long as the state count (" +
                         std::to_string(n) + ")");
    std::vector<int> run;
    run.push_back(d.start);
    for (int i = 0; i < n; ++i)
        run.push_back(d.next[static_cast<size_t>(run.back())]
                            [static_cast<size_t>(z[static_cast<size_t>(i)])]);
    int j = -1, k = -1;
    for (int end = 1; end <= n && k < 0; ++end)
        for (int startp = 0; startp < end; ++startp)
            if (run[static_cast<size_t>(startp)] == run[static_cast<size_t>(end)]) {
                j = startp;
                k = end;
                break;
            }
    // Among n+1 visited states of an n-state machine a repeat always exists.
    PumpDecomposition out;
    out.u = Word(z.begin(), z.begin() + j);
    out.v = Word(z.begin() + j, z.begin() + k);
    out.w = Word(z.begin() + k, z.end());
    out.state_count = n;
    return out;
}

}  // namespace qla::qfa
