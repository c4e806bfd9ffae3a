#pragma once

// Random instance generators shared by the unit suites and the acceptance
// runner. Every generator takes the engine by reference so fixed seeds give
// reproducible instances.

#include "qla/qlang.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testgen {

using namespace qla;

inline int rnd_index(std::mt19937& rng, const oml::LatticePtr& l) {
    return static_cast<int>(rng() % static_cast<unsigned>(l->size()));
}

// Bias towards bottom so value tables stay sparse, as handwritten machines are.
inline int rnd_sparse_index(std::mt19937& rng, const oml::LatticePtr& l) {
    return rng() % 2 == 0 ? l->bottom() : rnd_index(rng, l);
}

inline qfa::Lvfa rnd_lvfa(std::mt19937& rng, const oml::LatticePtr& l, const Alphabet& alpha,
                          int max_states) {
    qfa::Lvfa a(l, alpha);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
    for (int i = 0; i < n; ++i) a.add_state("q" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        a.initial[i] = rnd_sparse_index(rng, l);
        a.final[i] = rnd_sparse_index(rng, l);
        for (size_t s = 0; s < alpha.size(); ++s)
            for (int j = 0; j < n; ++j) a.delta[i][s][j] = rnd_sparse_index(rng, l);
    }
    // at least one nonzero entry point, otherwise everything is trivially 0
    if (std::all_of(a.initial.begin(), a.initial.end(),
                    [&](int v) { return v == l->bottom(); }))
        a.initial[rng() % static_cast<unsigned>(n)] = l->top();
    return a;
}

inline qfa::LvfaEps rnd_lvfa_eps(std::mt19937& rng, const oml::LatticePtr& l,
                                 const Alphabet& alpha, int max_states) {
    qfa::LvfaEps a(l, alpha);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
    for (int i = 0; i < n; ++i) a.add_state("q" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        a.initial[i] = rnd_sparse_index(rng, l);
        a.final[i] = rnd_sparse_index(rng, l);
        for (size_t s = 0; s < alpha.size(); ++s)
            for (int j = 0; j < n; ++j) a.delta[i][s][j] = rnd_sparse_index(rng, l);
        for (int j = 0; j < n; ++j)
            if (rng() % 3 == 0) a.delta_eps[i][j] = rnd_index(rng, l);
    }
    if (std::all_of(a.initial.begin(), a.initial.end(),
                    [&](int v) { return v == l->bottom(); }))
        a.initial[rng() % static_cast<unsigned>(n)] = l->top();
    return a;
}

inline qfa::Lvdfa rnd_lvdfa(std::mt19937& rng, const oml::LatticePtr& l, const Alphabet& alpha,
                            int max_states) {
    qfa::Lvdfa d(l, alpha);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
    for (int i = 0; i < n; ++i) d.add_state("d" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        d.final[i] = rnd_index(rng, l);
        for (size_t s = 0; s < alpha.size(); ++s)
            d.next[static_cast<size_t>(i)][s] = static_cast<int>(rng() % static_cast<unsigned>(n));
    }
    d.start = static_cast<int>(rng() % static_cast<unsigned>(n));
    return d;
}

inline classical::Dfa rnd_dfa(std::mt19937& rng, const Alphabet& alpha, int max_states) {
    classical::Dfa d(alpha);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
    for (int i = 0; i < n; ++i) d.add_state("t" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        d.accepting[i] = rng() % 2 == 0;
        for (size_t s = 0; s < alpha.size(); ++s)
            d.next[static_cast<size_t>(i)][s] = static_cast<int>(rng() % static_cast<unsigned>(n));
    }
    d.start = static_cast<int>(rng() % static_cast<unsigned>(n));
    return d;
}

inline classical::Nfa rnd_nfa(std::mt19937& rng, const Alphabet& alpha, int max_states,
                              bool with_eps) {
    classical::Nfa a(alpha);
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
    for (int i = 0; i < n; ++i) a.add_state();
    for (int i = 0; i < n; ++i) {
        a.initial[i] = rng() % 3 == 0;
        a.accepting[i] = rng() % 3 == 0;
        for (size_t s = 0; s < alpha.size(); ++s)
            for (int j = 0; j < n; ++j)
                if (rng() % 3 == 0) a.next[i][s].push_back(j);
        if (with_eps)
            for (int j = 0; j < n; ++j)
                if (rng() % 4 == 0) a.eps[i].push_back(j);
    }
    if (std::none_of(a.initial.begin(), a.initial.end(), [](bool b) { return b; }))
        a.initial[rng() % static_cast<unsigned>(n)] = true;
    return a;
}

inline qlang::StepLanguage rnd_step(std::mt19937& rng, const oml::LatticePtr& l,
                                    const Alphabet& alpha, int max_components,
                                    int max_dfa_states = 3) {
    std::vector<qlang::StepComponent> comps;
    int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_components));
    for (int i = 0; i < m; ++i)
        comps.push_back({rnd_index(rng, l), rnd_dfa(rng, alpha, max_dfa_states)});
    return qlang::make_step(l, alpha, std::move(comps));
}

/// All words over the alphabet with length at most max_len, shortest first.
inline std::vector<Word> words_up_to(const Alphabet& alpha, int max_len) {
    std::vector<Word> out = {{}};
    for (size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(out[i].size()) >= max_len) continue;
        for (size_t s = 0; s < alpha.size(); ++s) {
            Word w = out[i];
            w.push_back(static_cast<int>(s));
            out.push_back(std::move(w));
        }
    }
    return out;
}

inline Word rnd_word(std::mt19937& rng, const Alphabet& alpha, int len) {
    Word w(static_cast<size_t>(len));
    for (auto& s : w) s = static_cast<int>(rng() % static_cast<unsigned>(alpha.size()));
    return w;
}

}  // namespace testgen
