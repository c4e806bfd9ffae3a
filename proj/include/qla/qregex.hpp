// qregex.hpp -- lattice-valued regular expressions: parsing, printing,
// reference semantics by span recursion, compilation to step languages, and
// extraction from automata.
//
// Grammar (whitespace between tokens is ignored):
//   expr   := term ('+' term)*
//   term   := factor factor*
//   factor := base '*'*
//   base   := SYMBOL | '_eps' | '_empty' | '(' expr ')' | '[' ELEMENT ']' factor
// SYMBOL is matched greedily against the declared alphabet, longest first,
// so unseparated multi-byte symbols work. ELEMENT is everything up to the
// closing ']' (surrounding spaces trimmed). The keywords are checked before
// symbols.

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qla/base.hpp"
#include "qla/classical.hpp"
#include "qla/oml.hpp"
#include "qla/qfa.hpp"
#include "qla/qlang.hpp"

namespace qla::qregex {

using oml::LatticePtr;
using oml::LValue;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Empty, Eps, Symbol, Scalar, Sum, Concat, Star };
    Kind kind = Kind::Empty;
    std::string symbol;  // Symbol
    int value = -1;      // Scalar: lattice element index
    NodePtr left;        // Scalar/Star child; Sum/Concat left
    NodePtr right;       // Sum/Concat right
};

inline NodePtr qr_empty() {
    static const NodePtr e = std::make_shared<Node>(Node{Node::Kind::Empty, {}, -1, {}, {}});
    return e;
}
inline NodePtr qr_eps() {
    static const NodePtr e = std::make_shared<Node>(Node{Node::Kind::Eps, {}, -1, {}, {}});
    return e;
}
inline NodePtr qr_symbol(std::string s) {
    return std::make_shared<Node>(Node{Node::Kind::Symbol, std::move(s), -1, {}, {}});
}
inline NodePtr qr_scalar(int value, NodePtr child) {
    return std::make_shared<Node>(Node{Node::Kind::Scalar, {}, value, std::move(child), {}});
}
inline NodePtr qr_sum(NodePtr a, NodePtr b) {
    return std::make_shared<Node>(Node{Node::Kind::Sum, {}, -1, std::move(a), std::move(b)});
}
inline NodePtr qr_concat(NodePtr a, NodePtr b) {
    return std::make_shared<Node>(Node{Node::Kind::Concat, {}, -1, std::move(a), std::move(b)});
}
inline NodePtr qr_star(NodePtr a) {
    return std::make_shared<Node>(Node{Node::Kind::Star, {}, -1, std::move(a), {}});
}

/// An expression together with the lattice its scalars live in and the
/// alphabet its symbols come from.
struct QRegex {
    LatticePtr lattice;
    Alphabet alphabet;
    NodePtr root;
};

inline bool same_tree(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    return a->symbol == b->symbol && a->value == b->value && same_tree(a->left, b->left) &&
           same_tree(a->right, b->right);
}

namespace detail {

struct Parser {
    std::string_view text;
    size_t pos = 0;
    const LatticePtr& lattice;
    const Alphabet& alphabet;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r'))
            ++pos;
    }
    [[noreturn]] void fail(const std::string& msg, size_t at) {
        throw InputError("expression syntax error at byte offset " + std::to_string(at) + ": " +
                         msg);
    }
    bool starts_factor() {
        skip_ws();
        if (pos >= text.size()) return false;
        char c = text[pos];
        return c != '+' && c != ')';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool keyword(std::string_view kw) {
        if (text.substr(pos, kw.size()) == kw) {
            pos += kw.size();
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr acc = parse_term();
        while (eat('+')) acc = qr_sum(std::move(acc), parse_term());
        return acc;
    }
    NodePtr parse_term() {
        NodePtr acc = parse_factor();
        while (starts_factor()) acc = qr_concat(std::move(acc), parse_factor());
        return acc;
    }
    NodePtr parse_factor() {
        NodePtr base = parse_base();
        for (;;) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                base = qr_star(std::move(base));
            } else {
                break;
            }
        }
        return base;
    }
    NodePtr parse_base() {
        skip_ws();
        if (pos >= text.size()) fail("expected a symbol, '_eps', '_empty', '(' or '['", pos);
        size_t at = pos;
        if (eat('(')) {
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("expected ')' for the group opened at byte offset " +
                                    std::to_string(at),
                                pos);
            return inner;
        }
        if (eat('[')) {
            size_t close = text.find(']', pos);
            if (close == std::string_view::npos)
                fail("expected ']' for the value opened at byte offset " + std::to_string(at),
                     text.size());
            std::string_view name = text.substr(pos, close - pos);
            while (!name.empty() && (name.front() == ' ' || name.front() == '\t'))
                name.remove_prefix(1);
            while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
                name.remove_suffix(1);
            int value = lattice->find(name);
            if (value < 0)
                fail("lattice '" + lattice->name() + "' has no element '" + std::string(name) +
                         "'",
                     pos);
            pos = close + 1;
            return qr_scalar(value, parse_factor());
        }
        if (keyword("_empty")) return qr_empty();
        if (keyword("_eps")) return qr_eps();
        // greedy longest symbol match
        int best = -1;
        size_t best_len = 0;
        for (size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i].size() > best_len &&
                text.substr(pos, alphabet[i].size()) == alphabet[i]) {
                best = static_cast<int>(i);
                best_len = alphabet[i].size();
            }
        if (best < 0) fail("no declared symbol starts here", pos);
        pos += best_len;
        return qr_symbol(alphabet[static_cast<size_t>(best)]);
    }
};

}  // namespace detail

inline QRegex parse(std::string_view text, LatticePtr lattice, Alphabet alphabet) {
    detail::Parser p{text, 0, lattice, alphabet};
    NodePtr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw InputError("expression syntax error at byte offset " + std::to_string(p.pos) +
                         ": unexpected '" + std::string(1, text[p.pos]) + "'");
    return QRegex{std::move(lattice), std::move(alphabet), std::move(root)};
}

namespace detail {

// prec: 0 = sum position, 1 = left of a concatenation, 2 = factor position,
// 3 = star child. A printed subterm gets parentheses when its own shape
// would bind too loosely there; star children additionally wrap scalars so
// the '*' cannot be captured by the scalar's factor.
inline void print_node(const NodePtr& n, const LatticePtr& lattice, int prec, std::string& out) {
    auto wrap = [&](bool need, auto&& body) {
        if (need) out += '(';
        body();
        if (need) out += ')';
    };
    switch (n->kind) {
        case Node::Kind::Empty:
            out += "_empty";
            break;
        case Node::Kind::Eps:
            out += "_eps";
            break;
        case Node::Kind::Symbol:
            out += n->symbol;
            break;
        case Node::Kind::Scalar:
            wrap(prec >= 3, [&] {
                out += '[';
                out += lattice->element_name(n->value);
                out += ']';
                print_node(n->left, lattice, 2, out);
            });
            break;
        case Node::Kind::Sum:
            wrap(prec >= 1, [&] {
                print_node(n->left, lattice, 0, out);
                out += " + ";
                print_node(n->right, lattice, 1, out);
            });
            break;
        case Node::Kind::Concat:
            wrap(prec >= 2, [&] {
                print_node(n->left, lattice, 1, out);
                out += ' ';
                print_node(n->right, lattice, 2, out);
            });
            break;
        case Node::Kind::Star:
            print_node(n->left, lattice, 3, out);
            out += '*';
            break;
    }
}

}  // namespace detail

/// Prints an expression that parses back to the same tree.
inline std::string pretty(const QRegex& q) {
    std::string out;
    detail::print_node(q.root ? q.root : qr_empty(), q.lattice, 0, out);
    return out;
}

/// Reference semantics by structural recursion over spans of w. Star spans
/// longer than `star_bound` throw ResourceError (the composition enumeration
/// is exponential).
inline LValue denote(const QRegex& q, const Word& w, int star_bound = kWordLengthBound) {
    const auto& l = *q.lattice;
    auto eval = [&](auto&& self, const NodePtr& n, int b, int e) -> int {
        switch (n->kind) {
            case Node::Kind::Empty:
                return l.bottom();
            case Node::Kind::Eps:
                return b == e ? l.top() : l.bottom();
            case Node::Kind::Symbol: {
                if (e - b != 1) return l.bottom();
                int idx = require_symbol(q.alphabet, n->symbol);
                return w[static_cast<size_t>(b)] == idx ? l.top() : l.bottom();
            }
            case Node::Kind::Scalar:
                return l.meet(n->value, self(self, n->left, b, e));
            case Node::Kind::Sum:
                return l.join(self(self, n->left, b, e), self(self, n->right, b, e));
            case Node::Kind::Concat: {
                int acc = l.bottom();
                for (int m = b; m <= e; ++m)
                    acc = l.join(acc, l.meet(self(self, n->left, b, m), self(self, n->right, m, e)));
                return acc;
            }
            case Node::Kind::Star: {
                if (b == e) return l.top();
                const int len = e - b;
                if (len > star_bound)
                    throw ResourceError("star reference evaluation is capped at spans of length " +
                                        std::to_string(star_bound));
                int eps_value = self(self, n->left, b, b);
                int acc = l.bottom();
                for (int mask = 0; mask < (1 << (len - 1)); ++mask) {
                    int v = l.top();
                    int begin = b;
                    for (int i = 0; i < len; ++i) {
                        bool cut_here = i == len - 1 || (mask & (1 << i));
                        if (!cut_here) continue;
                        v = l.meet(v, self(self, n->left, begin, b + i + 1));
                        begin = b + i + 1;
                    }
                    acc = l.join(acc, v);
                    if (eps_value != l.bottom()) acc = l.join(acc, l.meet(v, eps_value));
                }
                return acc;
            }
        }
        return l.bottom();
    };
    NodePtr root = q.root ? q.root : qr_empty();
    return LValue(q.lattice, eval(eval, root, 0, static_cast<int>(w.size())));
}

/// Compiles an expression to a step language by structural recursion through
/// the closure operations.
inline qlang::StepLanguage compile(const QRegex& q, int star_component_cap = kStarComponentCap,
                                   int state_cap = kSubsetStateCap) {
    const auto& l = *q.lattice;
    auto rec = [&](auto&& self, const NodePtr& n) -> qlang::StepLanguage {
        switch (n->kind) {
            case Node::Kind::Empty:
                return qlang::make_step(q.lattice, q.alphabet, {});
            case Node::Kind::Eps:
                return qlang::make_step(q.lattice, q.alphabet,
                                        {{l.top(), classical::dfa_eps_only(q.alphabet)}});
            case Node::Kind::Symbol:
                return qlang::make_step(
                    q.lattice, q.alphabet,
                    {{l.top(), classical::dfa_single_symbol(
                                   q.alphabet, require_symbol(q.alphabet, n->symbol))}});
            case Node::Kind::Scalar:
                return qlang::op_scalar(LValue(q.lattice, n->value), self(self, n->left));
            case Node::Kind::Sum:
                return qlang::op_union(self(self, n->left), self(self, n->right));
            case Node::Kind::Concat:
                return qlang::op_concat(self(self, n->left), self(self, n->right), state_cap);
            case Node::Kind::Star:
                return qlang::op_star(self(self, n->left), star_component_cap, state_cap);
        }
        return qlang::make_step(q.lattice, q.alphabet, {});
    };
    return rec(rec, q.root ? q.root : qr_empty());
}

namespace detail {

inline NodePtr inject_classical(const classical::RegexPtr& r) {
    switch (r->kind) {
        case classical::Regex::Kind::Empty:
            return qr_empty();
        case classical::Regex::Kind::Eps:
            return qr_eps();
        case classical::Regex::Kind::Symbol:
            return qr_symbol(r->symbol);
        case classical::Regex::Kind::Alt:
            return qr_sum(inject_classical(r->left), inject_classical(r->right));
        case classical::Regex::Kind::Cat:
            return qr_concat(inject_classical(r->left), inject_classical(r->right));
        case classical::Regex::Kind::Star:
            return qr_star(inject_classical(r->left));
    }
    return qr_empty();
}

}  // namespace detail

/// Expression denoting the same language as the machine: one weighted
/// summand per level component, each a classical regex from state
/// elimination.
inline QRegex extract(const qfa::Lvdfa& d) {
    qlang::StepLanguage s = qlang::lvdfa_to_step(d);
    NodePtr root;
    for (const auto& c : s.components) {
        NodePtr term = qr_scalar(c.value, detail::inject_classical(classical::dfa_to_regex(c.dfa)));
        root = root ? qr_sum(std::move(root), std::move(term)) : std::move(term);
    }
    if (!root) root = qr_empty();
    return QRegex{d.lattice, d.alphabet, std::move(root)};
}

inline QRegex extract(const qfa::Lvfa& a, int state_cap = kAnnotatedStateCap) {
    return extract(qfa::determinize(a, state_cap));
}

}  // namespace qla::qregex
