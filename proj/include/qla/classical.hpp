// classical.hpp -- ordinary NFAs, DFAs, and regular expressions. These are
// the crisp building blocks the lattice-valued layers reduce to.

#pragma once

#include <map>
#include <memory>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qla/base.hpp"

namespace qla::classical {

struct Nfa {
    Alphabet alphabet;
    int num_states = 0;
    std::vector<std::vector<std::vector<int>>> next;  // [state][symbol] -> targets
    std::vector<std::vector<int>> eps;                // [state] -> targets
    std::vector<bool> initial;
    std::vector<bool> accepting;

    Nfa() = default;
    explicit Nfa(Alphabet a) : alphabet(std::move(a)) {}

    int add_state() {
        next.emplace_back(alphabet.size());
        eps.emplace_back();
        initial.push_back(false);
        accepting.push_back(false);
        return num_states++;
    }
    void add_transition(int from, int symbol, int to) {
        auto& v = next[static_cast<size_t>(from)][static_cast<size_t>(symbol)];
        for (int t : v)
            if (t == to) return;
        v.push_back(to);
    }
    void add_eps(int from, int to) {
        auto& v = eps[static_cast<size_t>(from)];
        for (int t : v)
            if (t == to) return;
        v.push_back(to);
    }
};

/// Deterministic automaton with a total transition table.
struct Dfa {
    Alphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<std::vector<int>> next;  // [state][symbol] -> state
    int start = 0;
    std::vector<bool> accepting;

    Dfa() = default;
    explicit Dfa(Alphabet a) : alphabet(std::move(a)) {}

    int num_states() const { return static_cast<int>(next.size()); }
    int add_state(std::string name) {
        state_names.push_back(std::move(name));
        next.emplace_back(alphabet.size(), -1);
        accepting.push_back(false);
        return num_states() - 1;
    }
    int run(const Word& w) const {
        int q = start;
        for (int s : w) q = next[static_cast<size_t>(q)][static_cast<size_t>(s)];
        return q;
    }
};

inline bool dfa_accepts(const Dfa& d, const Word& w) {
    return d.accepting[static_cast<size_t>(d.run(w))];
}

namespace detail {

inline std::vector<int> eps_closure(const Nfa& a, std::vector<int> states) {
    std::vector<bool> seen(static_cast<size_t>(a.num_states), false);
    std::vector<int> stack = states;
    for (int q : states) seen[static_cast<size_t>(q)] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int p : a.eps[static_cast<size_t>(q)])
            if (!seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = true;
                stack.push_back(p);
            }
    }
    std::vector<int> out;
    for (int q = 0; q < a.num_states; ++q)
        if (seen[static_cast<size_t>(q)]) out.push_back(q);
    return out;
}

inline std::string subset_name(int id) { return "s" + std::to_string(id); }

}  // namespace detail

inline bool nfa_accepts(const Nfa& a, const Word& w) {
    std::vector<int> cur;
    for (int q = 0; q < a.num_states; ++q)
        if (a.initial[static_cast<size_t>(q)]) cur.push_back(q);
    cur = detail::eps_closure(a, std::move(cur));
    for (int s : w) {
        std::set<int> step;
        for (int q : cur)
            for (int p : a.next[static_cast<size_t>(q)][static_cast<size_t>(s)]) step.insert(p);
        cur = detail::eps_closure(a, std::vector<int>(step.begin(), step.end()));
    }
    for (int q : cur)
        if (a.accepting[static_cast<size_t>(q)]) return true;
    return false;
}

/// Subset construction with ε-closure. States are named s0, s1, ... in
/// discovery (BFS) order; the dead subset ∅ appears whenever reachable.
/// When `subsets_out` is given it receives each DFA state's NFA-state set.
inline Dfa determinize(const Nfa& a, int state_cap = kSubsetStateCap,
                       std::vector<std::vector<int>>* subsets_out = nullptr) {
    Dfa d(a.alphabet);
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> subsets;
    std::queue<int> work;

    auto intern = [&](std::vector<int> s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = d.add_state(detail::subset_name(static_cast<int>(subsets.size())));
        if (id >= state_cap)
            throw ResourceError("subset construction exceeded the state cap of " +
                                std::to_string(state_cap));
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        work.push(id);
        return id;
    };

    std::vector<int> init;
    for (int q = 0; q < a.num_states; ++q)
        if (a.initial[static_cast<size_t>(q)]) init.push_back(q);
    d.start = intern(detail::eps_closure(a, std::move(init)));

    while (!work.empty()) {
        int id = work.front();
        work.pop();
        const std::vector<int> subset = subsets[static_cast<size_t>(id)];
        for (int q : subset)
            if (a.accepting[static_cast<size_t>(q)]) d.accepting[static_cast<size_t>(id)] = true;
        for (size_t s = 0; s < a.alphabet.size(); ++s) {
            std::set<int> move;
            for (int q : subset)
                for (int p : a.next[static_cast<size_t>(q)][s]) move.insert(p);
            int to = intern(detail::eps_closure(a, std::vector<int>(move.begin(), move.end())));
            d.next[static_cast<size_t>(id)][s] = to;
        }
    }
    if (subsets_out) *subsets_out = std::move(subsets);
    return d;
}

enum class ProductMode { Intersect, Union, Difference };

/// Reachable product of two DFAs over the same alphabet.
inline Dfa dfa_product(const Dfa& x, const Dfa& y, ProductMode mode) {
    if (x.alphabet != y.alphabet)
        throw InputError("product requires identical alphabets");
    Dfa d(x.alphabet);
    std::map<std::pair<int, int>, int> ids;
    std::queue<std::pair<int, int>> work;

    auto intern = [&](int a, int b) {
        auto it = ids.find({a, b});
        if (it != ids.end()) return it->second;
        int id = d.add_state(detail::subset_name(static_cast<int>(ids.size())));
        ids.emplace(std::make_pair(a, b), id);
        work.emplace(a, b);
        bool fa = x.accepting[static_cast<size_t>(a)];
        bool fb = y.accepting[static_cast<size_t>(b)];
        bool acc = mode == ProductMode::Intersect ? (fa && fb)
                   : mode == ProductMode::Union   ? (fa || fb)
                                                  : (fa && !fb);
        d.accepting[static_cast<size_t>(id)] = acc;
        return id;
    };

    d.start = intern(x.start, y.start);
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop();
        int id = ids.at({a, b});
        for (size_t s = 0; s < d.alphabet.size(); ++s)
            d.next[static_cast<size_t>(id)][s] =
                intern(x.next[static_cast<size_t>(a)][s], y.next[static_cast<size_t>(b)][s]);
    }
    return d;
}

inline Dfa dfa_complement(Dfa d) {
    for (size_t q = 0; q < d.accepting.size(); ++q) d.accepting[q] = !d.accepting[q];
    return d;
}

inline bool dfa_is_empty(const Dfa& d) {
    std::vector<bool> seen(static_cast<size_t>(d.num_states()), false);
    std::vector<int> stack = {d.start};
    seen[static_cast<size_t>(d.start)] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        if (d.accepting[static_cast<size_t>(q)]) return false;
        for (int p : d.next[static_cast<size_t>(q)])
            if (!seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = true;
                stack.push_back(p);
            }
    }
    return true;
}

/// Shortest-counterexample equivalence check via breadth-first search of the
/// pair graph.
inline EquivalenceResult dfa_equivalent(const Dfa& x, const Dfa& y) {
    if (x.alphabet != y.alphabet)
        throw InputError("equivalence requires identical alphabets");
    struct Entry {
        int parent;
        int symbol;
    };
    std::map<std::pair<int, int>, Entry> seen;
    std::vector<std::pair<int, int>> order;
    std::queue<int> work;

    auto visit = [&](int a, int b, int parent, int symbol) {
        if (seen.count({a, b})) return;
        seen[{a, b}] = {parent, symbol};
        order.emplace_back(a, b);
        work.push(static_cast<int>(order.size()) - 1);
    };
    visit(x.start, y.start, -1, -1);
    while (!work.empty()) {
        int idx = work.front();
        work.pop();
        auto [a, b] = order[static_cast<size_t>(idx)];
        if (x.accepting[static_cast<size_t>(a)] != y.accepting[static_cast<size_t>(b)]) {
            Word w;
            for (int cur = idx; cur >= 0;) {
                Entry e = seen.at(order[static_cast<size_t>(cur)]);
                if (e.symbol >= 0) w.push_back(e.symbol);
                cur = e.parent;
            }
            std::reverse(w.begin(), w.end());
            return {false, std::move(w)};
        }
        for (size_t s = 0; s < x.alphabet.size(); ++s)
            visit(x.next[static_cast<size_t>(a)][s], y.next[static_cast<size_t>(b)][s], idx,
                  static_cast<int>(s));
    }
    return {true, {}};
}

inline Nfa nfa_from_dfa(const Dfa& d) {
    Nfa a(d.alphabet);
    for (int q = 0; q < d.num_states(); ++q) a.add_state();
    a.initial[static_cast<size_t>(d.start)] = true;
    for (int q = 0; q < d.num_states(); ++q) {
        a.accepting[static_cast<size_t>(q)] = d.accepting[static_cast<size_t>(q)];
        for (size_t s = 0; s < d.alphabet.size(); ++s)
            a.add_transition(q, static_cast<int>(s), d.next[static_cast<size_t>(q)][s]);
    }
    return a;
}

namespace detail {
// Copies src into dst, returning the state-id offset.
inline int splice(Nfa& dst, const Nfa& src) {
    int base = dst.num_states;
    for (int q = 0; q < src.num_states; ++q) dst.add_state();
    for (int q = 0; q < src.num_states; ++q) {
        for (size_t s = 0; s < src.alphabet.size(); ++s)
            for (int p : src.next[static_cast<size_t>(q)][s])
                dst.add_transition(base + q, static_cast<int>(s), base + p);
        for (int p : src.eps[static_cast<size_t>(q)]) dst.add_eps(base + q, base + p);
    }
    return base;
}
}  // namespace detail

inline Nfa nfa_union(const Nfa& x, const Nfa& y) {
    if (x.alphabet != y.alphabet) throw InputError("union requires identical alphabets");
    Nfa a(x.alphabet);
    int bx = detail::splice(a, x);
    int by = detail::splice(a, y);
    for (int q = 0; q < x.num_states; ++q) {
        a.initial[static_cast<size_t>(bx + q)] = x.initial[static_cast<size_t>(q)];
        a.accepting[static_cast<size_t>(bx + q)] = x.accepting[static_cast<size_t>(q)];
    }
    for (int q = 0; q < y.num_states; ++q) {
        a.initial[static_cast<size_t>(by + q)] = y.initial[static_cast<size_t>(q)];
        a.accepting[static_cast<size_t>(by + q)] = y.accepting[static_cast<size_t>(q)];
    }
    return a;
}

inline Nfa nfa_concat(const Nfa& x, const Nfa& y) {
    if (x.alphabet != y.alphabet) throw InputError("concat requires identical alphabets");
    Nfa a(x.alphabet);
    int bx = detail::splice(a, x);
    int by = detail::splice(a, y);
    for (int q = 0; q < x.num_states; ++q)
        a.initial[static_cast<size_t>(bx + q)] = x.initial[static_cast<size_t>(q)];
    for (int q = 0; q < y.num_states; ++q)
        a.accepting[static_cast<size_t>(by + q)] = y.accepting[static_cast<size_t>(q)];
    for (int q = 0; q < x.num_states; ++q)
        if (x.accepting[static_cast<size_t>(q)])
            for (int p = 0; p < y.num_states; ++p)
                if (y.initial[static_cast<size_t>(p)]) a.add_eps(bx + q, by + p);
    return a;
}

inline Nfa nfa_star(const Nfa& x) {
    Nfa a(x.alphabet);
    int hub = a.add_state();
    a.initial[static_cast<size_t>(hub)] = true;
    a.accepting[static_cast<size_t>(hub)] = true;
    int bx = detail::splice(a, x);
    for (int q = 0; q < x.num_states; ++q) {
        if (x.initial[static_cast<size_t>(q)]) a.add_eps(hub, bx + q);
        if (x.accepting[static_cast<size_t>(q)]) a.add_eps(bx + q, hub);
    }
    return a;
}

/// Hopcroft-style partition refinement. Internal helper that keeps extracted
/// expressions small; reachable states only, names reassigned s0, s1, ...
inline Dfa dfa_minimize(const Dfa& d) {
    // restrict to reachable states first
    std::vector<int> reach;
    std::vector<int> remap(static_cast<size_t>(d.num_states()), -1);
    {
        std::queue<int> work;
        work.push(d.start);
        remap[static_cast<size_t>(d.start)] = 0;
        reach.push_back(d.start);
        while (!work.empty()) {
            int q = work.front();
            work.pop();
            for (int p : d.next[static_cast<size_t>(q)])
                if (remap[static_cast<size_t>(p)] < 0) {
                    remap[static_cast<size_t>(p)] = static_cast<int>(reach.size());
                    reach.push_back(p);
                    work.push(p);
                }
        }
    }
    const int n = static_cast<int>(reach.size());
    const int m = static_cast<int>(d.alphabet.size());
    std::vector<int> cls(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        cls[static_cast<size_t>(i)] = d.accepting[static_cast<size_t>(reach[static_cast<size_t>(i)])] ? 1 : 0;

    for (;;) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next_cls(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::vector<int> sig;
            sig.push_back(cls[static_cast<size_t>(i)]);
            for (int s = 0; s < m; ++s) {
                int t = d.next[static_cast<size_t>(reach[static_cast<size_t>(i)])][static_cast<size_t>(s)];
                sig.push_back(cls[static_cast<size_t>(remap[static_cast<size_t>(t)])]);
            }
            auto [it, inserted] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
            next_cls[static_cast<size_t>(i)] = it->second;
        }
        if (next_cls == cls) break;
        cls = std::move(next_cls);
    }

    int num_classes = 0;
    for (int c : cls) num_classes = std::max(num_classes, c + 1);
    Dfa out(d.alphabet);
    for (int c = 0; c < num_classes; ++c) out.add_state(detail::subset_name(c));
    for (int i = 0; i < n; ++i) {
        int c = cls[static_cast<size_t>(i)];
        out.accepting[static_cast<size_t>(c)] =
            d.accepting[static_cast<size_t>(reach[static_cast<size_t>(i)])];
        for (int s = 0; s < m; ++s) {
            int t = d.next[static_cast<size_t>(reach[static_cast<size_t>(i)])][static_cast<size_t>(s)];
            out.next[static_cast<size_t>(c)][static_cast<size_t>(s)] =
                cls[static_cast<size_t>(remap[static_cast<size_t>(t)])];
        }
    }
    out.start = cls[static_cast<size_t>(remap[static_cast<size_t>(d.start)])];
    return out;
}

// ---------------------------------------------------------------------------
// Regular expressions.

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
    enum class Kind { Empty, Eps, Symbol, Alt, Cat, Star };
    Kind kind = Kind::Empty;
    std::string symbol;
    RegexPtr left;
    RegexPtr right;
};

inline RegexPtr rx_empty() {
    static const RegexPtr e = std::make_shared<Regex>(Regex{Regex::Kind::Empty, {}, {}, {}});
    return e;
}
inline RegexPtr rx_eps() {
    static const RegexPtr e = std::make_shared<Regex>(Regex{Regex::Kind::Eps, {}, {}, {}});
    return e;
}
inline RegexPtr rx_symbol(std::string s) {
    return std::make_shared<Regex>(Regex{Regex::Kind::Symbol, std::move(s), {}, {}});
}

// The smart constructors fold the unit and absorbing cases so state
// elimination emits readable output.
inline RegexPtr rx_alt(RegexPtr a, RegexPtr b) {
    if (!a || a->kind == Regex::Kind::Empty) return b ? b : rx_empty();
    if (!b || b->kind == Regex::Kind::Empty) return a;
    if (a == b) return a;
    return std::make_shared<Regex>(Regex{Regex::Kind::Alt, {}, std::move(a), std::move(b)});
}
inline RegexPtr rx_cat(RegexPtr a, RegexPtr b) {
    if (!a || !b || a->kind == Regex::Kind::Empty || b->kind == Regex::Kind::Empty)
        return rx_empty();
    if (a->kind == Regex::Kind::Eps) return b;
    if (b->kind == Regex::Kind::Eps) return a;
    return std::make_shared<Regex>(Regex{Regex::Kind::Cat, {}, std::move(a), std::move(b)});
}
inline RegexPtr rx_star(RegexPtr a) {
    if (!a || a->kind == Regex::Kind::Empty || a->kind == Regex::Kind::Eps) return rx_eps();
    if (a->kind == Regex::Kind::Star) return a;
    return std::make_shared<Regex>(Regex{Regex::Kind::Star, {}, std::move(a), {}});
}

/// Thompson construction; every symbol must belong to the alphabet.
inline Nfa regex_to_nfa(const RegexPtr& r, const Alphabet& alphabet) {
    Nfa a(alphabet);
    // returns (in, out) of the fragment
    auto rec = [&](auto&& self, const RegexPtr& e) -> std::pair<int, int> {
        int in = a.add_state();
        int out = a.add_state();
        switch (e->kind) {
            case Regex::Kind::Empty:
                break;
            case Regex::Kind::Eps:
                a.add_eps(in, out);
                break;
            case Regex::Kind::Symbol:
                a.add_transition(in, require_symbol(alphabet, e->symbol), out);
                break;
            case Regex::Kind::Alt: {
                auto [i1, o1] = self(self, e->left);
                auto [i2, o2] = self(self, e->right);
                a.add_eps(in, i1);
                a.add_eps(in, i2);
                a.add_eps(o1, out);
                a.add_eps(o2, out);
                break;
            }
            case Regex::Kind::Cat: {
                auto [i1, o1] = self(self, e->left);
                auto [i2, o2] = self(self, e->right);
                a.add_eps(in, i1);
                a.add_eps(o1, i2);
                a.add_eps(o2, out);
                break;
            }
            case Regex::Kind::Star: {
                auto [i1, o1] = self(self, e->left);
                a.add_eps(in, out);
                a.add_eps(in, i1);
                a.add_eps(o1, i1);
                a.add_eps(o1, out);
                break;
            }
        }
        return {in, out};
    };
    auto [in, out] = rec(rec, r ? r : rx_empty());
    a.initial[static_cast<size_t>(in)] = true;
    a.accepting[static_cast<size_t>(out)] = true;
    return a;
}

/// State elimination on a generalized automaton. States are removed lowest
/// degree first (ties to the lowest index), which keeps the result small on
/// the machines this library produces.
inline RegexPtr dfa_to_regex(const Dfa& dfa) {
    const Dfa d = dfa_minimize(dfa);
    const int n = d.num_states();
    const int kInit = n;
    const int kFinal = n + 1;
    std::vector<std::vector<RegexPtr>> edge(static_cast<size_t>(n + 2),
                                            std::vector<RegexPtr>(static_cast<size_t>(n + 2)));
    auto put = [&](int a, int b, RegexPtr r) {
        edge[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            rx_alt(edge[static_cast<size_t>(a)][static_cast<size_t>(b)], std::move(r));
    };
    for (int q = 0; q < n; ++q)
        for (size_t s = 0; s < d.alphabet.size(); ++s)
            put(q, d.next[static_cast<size_t>(q)][s], rx_symbol(d.alphabet[s]));
    put(kInit, d.start, rx_eps());
    for (int q = 0; q < n; ++q)
        if (d.accepting[static_cast<size_t>(q)]) put(q, kFinal, rx_eps());

    std::vector<bool> gone(static_cast<size_t>(n + 2), false);
    auto live = [&](int v) { return !gone[static_cast<size_t>(v)]; };
    for (int round = 0; round < n; ++round) {
        int best = -1;
        int best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (!live(v)) continue;
            int deg = 0;
            for (int u = 0; u < n + 2; ++u) {
                if (u == v || !live(u)) continue;
                if (edge[static_cast<size_t>(u)][static_cast<size_t>(v)]) ++deg;
                if (edge[static_cast<size_t>(v)][static_cast<size_t>(u)]) ++deg;
            }
            if (best < 0 || deg < best_deg) {
                best = v;
                best_deg = deg;
            }
        }
        int v = best;
        gone[static_cast<size_t>(v)] = true;
        RegexPtr loop = edge[static_cast<size_t>(v)][static_cast<size_t>(v)];
        RegexPtr through = loop ? rx_star(loop) : rx_eps();
        for (int p = 0; p < n + 2; ++p) {
            if (!live(p) || !edge[static_cast<size_t>(p)][static_cast<size_t>(v)]) continue;
            for (int q = 0; q < n + 2; ++q) {
                if (!live(q) || !edge[static_cast<size_t>(v)][static_cast<size_t>(q)]) continue;
                put(p, q,
                    rx_cat(edge[static_cast<size_t>(p)][static_cast<size_t>(v)],
                           rx_cat(through, edge[static_cast<size_t>(v)][static_cast<size_t>(q)])));
            }
        }
    }
    RegexPtr r = edge[static_cast<size_t>(kInit)][static_cast<size_t>(kFinal)];
    return r ? r : rx_empty();
}

// Tiny language constants used when compiling expression atoms.
inline Dfa dfa_eps_only(const Alphabet& alphabet) {
    Dfa d(alphabet);
    int ok = d.add_state("s0");
    int dead = d.add_state("s1");
    d.accepting[static_cast<size_t>(ok)] = true;
    for (size_t s = 0; s < alphabet.size(); ++s) {
        d.next[static_cast<size_t>(ok)][s] = dead;
        d.next[static_cast<size_t>(dead)][s] = dead;
    }
    d.start = ok;
    return d;
}

inline Dfa dfa_single_symbol(const Alphabet& alphabet, int symbol) {
    Dfa d(alphabet);
    int start = d.add_state("s0");
    int acc = d.add_state("s1");
    int dead = d.add_state("s2");
    d.accepting[static_cast<size_t>(acc)] = true;
    for (size_t s = 0; s < alphabet.size(); ++s) {
        d.next[static_cast<size_t>(start)][s] = static_cast<int>(s) == symbol ? acc : dead;
        d.next[static_cast<size_t>(acc)][s] = dead;
        d.next[static_cast<size_t>(dead)][s] = dead;
    }
    d.start = start;
    return d;
}

inline Dfa dfa_universal(const Alphabet& alphabet) {
    Dfa d(alphabet);
    int q = d.add_state("s0");
    d.accepting[static_cast<size_t>(q)] = true;
    for (size_t s = 0; s < alphabet.size(); ++s) d.next[static_cast<size_t>(q)][s] = q;
    d.start = q;
    return d;
}

}  // namespace qla::classical
