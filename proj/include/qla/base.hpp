// base.hpp -- shared error types, alphabets, and words.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qla {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed documents, unknown names, or operands that violate a stated
/// precondition. The CLI maps this to exit code 2.
struct InputError : Error {
    using Error::Error;
};

/// A configurable size cap was exceeded. The CLI maps this to exit code 3.
struct ResourceError : Error {
    using Error::Error;
};

inline constexpr int kMaxLatticeElements = 4096;
inline constexpr int kAnnotatedStateCap = 100000;
inline constexpr int kSubsetStateCap = 1 << 20;
inline constexpr int kStarComponentCap = 8;
inline constexpr int kWordLengthBound = 6;

/// Words are stored as indices into an alphabet.
using Word = std::vector<int>;

/// Sorted, duplicate-free list of symbol strings. Symbols may be any
/// nonempty byte string, including multi-byte UTF-8.
using Alphabet = std::vector<std::string>;

inline Alphabet make_alphabet(std::vector<std::string> symbols) {
    for (const auto& s : symbols)
        if (s.empty()) throw InputError("alphabet symbols must be nonempty");
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    return symbols;
}

inline int symbol_index(const Alphabet& a, std::string_view s) {
    auto it = std::lower_bound(a.begin(), a.end(), s);
    if (it == a.end() || *it != s) return -1;
    return static_cast<int>(it - a.begin());
}

inline int require_symbol(const Alphabet& a, std::string_view s) {
    int i = symbol_index(a, s);
    if (i < 0) throw InputError("unknown symbol '" + std::string(s) + "'");
    return i;
}

/// Parses a word. An empty string is the empty word. If the text contains a
/// comma it is split on commas and each token must be a symbol; otherwise
/// symbols are matched greedily (longest declared symbol first), which keeps
/// unseparated multi-byte input like "σσ" unambiguous.
inline Word parse_word(const Alphabet& a, std::string_view text) {
    Word w;
    if (text.empty()) return w;
    if (text.find(',') != std::string_view::npos) {
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t next = text.find(',', pos);
            if (next == std::string_view::npos) next = text.size();
            w.push_back(require_symbol(a, text.substr(pos, next - pos)));
            pos = next + 1;
        }
        return w;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            const std::string& s = a[i];
            if (s.size() > best_len && text.substr(pos, s.size()) == s) {
                best = static_cast<int>(i);
                best_len = s.size();
            }
        }
        if (best < 0)
            throw InputError("cannot read a symbol at byte offset " +
                             std::to_string(pos) + " of word '" + std::string(text) + "'");
        w.push_back(best);
        pos += best_len;
    }
    return w;
}

/// Renders a word for display. Single-byte symbols are concatenated; anything
/// wider is comma-joined so the output re-parses to the same word.
inline std::string format_word(const Alphabet& a, const Word& w) {
    if (w.empty()) return "ε";
    bool plain = std::all_of(a.begin(), a.end(),
                             [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!plain && i > 0) out += ',';
        out += a[static_cast<size_t>(w[i])];
    }
    return out;
}

/// Shared result shape for equivalence checks; counterexample is meaningful
/// only when equivalent is false and is a shortest separating word.
struct EquivalenceResult {
    bool equivalent = true;
    Word counterexample;
};

}  // namespace qla
