// oml.hpp -- finite orthomodular lattices: validation, element operations,
// closures, and the standard example families.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qla/base.hpp"

namespace qla::oml {

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Unvalidated description of a candidate lattice, mirroring the JSON
/// document layout. `order` holds cover pairs when `order_kind` is Hasse and
/// arbitrary x<=y pairs when it is Leq.
struct RawLattice {
    enum class OrderKind { Hasse, Leq };
    std::string name;
    std::vector<std::string> elements;
    OrderKind order_kind = OrderKind::Hasse;
    std::vector<std::pair<std::string, std::string>> order;
    std::vector<std::pair<std::string, std::string>> ortho;
    std::string bottom;
    std::string top;
};

struct Violation {
    std::string axiom;                 // stable id, e.g. "orthomodular"
    std::vector<std::string> witness;  // offending element names
    std::string detail;
};

struct ValidationReport {
    bool passed = false;
    std::vector<Violation> violations;
    LatticePtr lattice;  // non-null exactly when passed
};

namespace detail {

// Row-major bit matrix; rows are 64-bit word spans so relation closure and
// subset tests stay usable at the element cap.
struct BitMatrix {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    BitMatrix() = default;
    explicit BitMatrix(int n_)
        : n(n_), words((n_ + 63) / 64),
          bits(static_cast<size_t>(n_) * static_cast<size_t>((n_ + 63) / 64), 0) {}

    std::uint64_t* row(int r) { return bits.data() + static_cast<size_t>(r) * words; }
    const std::uint64_t* row(int r) const {
        return bits.data() + static_cast<size_t>(r) * words;
    }
    void set(int r, int c) { row(r)[c >> 6] |= std::uint64_t(1) << (c & 63); }
    bool get(int r, int c) const {
        return (row(r)[c >> 6] >> (c & 63)) & 1;
    }
    void or_row(int dst, int src) {
        auto* d = row(dst);
        const auto* s = row(src);
        for (int i = 0; i < words; ++i) d[i] |= s[i];
    }
    bool row_subset(int sub, int super) const {
        const auto* a = row(sub);
        const auto* b = row(super);
        for (int i = 0; i < words; ++i)
            if (a[i] & ~b[i]) return false;
        return true;
    }
};

inline bool span_subset(const std::uint64_t* a, const std::uint64_t* b, int words) {
    for (int i = 0; i < words; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

}  // namespace detail

/// Immutable validated lattice. Elements are addressed by index; names are
/// unique within the lattice and element identity across documents is by
/// name within a structurally equal lattice.
class Lattice {
public:
    const std::string& name() const { return name_; }
    int size() const { return n_; }
    const std::vector<std::string>& element_names() const { return names_; }
    const std::string& element_name(int x) const { return names_[static_cast<size_t>(x)]; }

    int find(std::string_view name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }
    int require(std::string_view name) const {
        int x = find(name);
        if (x < 0)
            throw InputError("lattice '" + name_ + "' has no element '" +
                             std::string(name) + "'");
        return x;
    }

    int bottom() const { return bottom_; }
    int top() const { return top_; }

    bool leq(int x, int y) const { return above_.get(x, y); }
    int meet(int x, int y) const { return meet_[static_cast<size_t>(x) * n_ + y]; }
    int join(int x, int y) const { return join_[static_cast<size_t>(x) * n_ + y]; }
    int ortho(int x) const { return ortho_[static_cast<size_t>(x)]; }

    /// Cover pairs (x, y) with x < y and nothing strictly between; the
    /// canonical serialization of the order.
    std::vector<std::pair<int, int>> covers() const {
        std::vector<std::pair<int, int>> out;
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) {
                if (x == y || !leq(x, y)) continue;
                bool direct = true;
                for (int z = 0; z < n_ && direct; ++z)
                    if (z != x && z != y && leq(x, z) && leq(z, y)) direct = false;
                if (direct) out.emplace_back(x, y);
            }
        return out;
    }

    bool same_as(const Lattice& other) const {
        if (this == &other) return true;
        return name_ == other.name_ && names_ == other.names_ &&
               bottom_ == other.bottom_ && top_ == other.top_ &&
               ortho_ == other.ortho_ && above_.bits == other.above_.bits;
    }

private:
    Lattice() = default;
    friend ValidationReport validate(const RawLattice&, int);

    std::string name_;
    int n_ = 0;
    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
    detail::BitMatrix above_;  // row x = {y : x <= y}
    std::vector<int> ortho_;
    std::vector<int> meet_;
    std::vector<int> join_;
    int bottom_ = 0;
    int top_ = 0;
};

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
    return a && b && (a.get() == b.get() || a->same_as(*b));
}

/// Checks every axiom of a bounded orthomodular lattice on the candidate and
/// reports all violations. Structural problems (unknown names, duplicate
/// elements, partial ortho map) throw InputError instead of being reported,
/// and exceeding max_elements throws ResourceError.
inline ValidationReport validate(const RawLattice& raw,
                                 int max_elements = kMaxLatticeElements) {
    const int n = static_cast<int>(raw.elements.size());
    if (n == 0) throw InputError("lattice '" + raw.name + "' has no elements");
    if (n > max_elements)
        throw ResourceError("lattice '" + raw.name + "' has " + std::to_string(n) +
                            " elements, cap is " + std::to_string(max_elements));

    std::map<std::string, int, std::less<>> index;
    for (int i = 0; i < n; ++i) {
        if (!index.emplace(raw.elements[static_cast<size_t>(i)], i).second)
            throw InputError("duplicate element '" + raw.elements[static_cast<size_t>(i)] +
                             "' in lattice '" + raw.name + "'");
    }
    auto resolve = [&](const std::string& s, const char* where) {
        auto it = index.find(s);
        if (it == index.end())
            throw InputError(std::string(where) + " references unknown element '" + s +
                             "' in lattice '" + raw.name + "'");
        return it->second;
    };

    const int bottom = resolve(raw.bottom, "bottom");
    const int top = resolve(raw.top, "top");

    std::vector<int> ortho(static_cast<size_t>(n), -1);
    for (const auto& [from, to] : raw.ortho) {
        int x = resolve(from, "ortho");
        int y = resolve(to, "ortho");
        if (ortho[static_cast<size_t>(x)] >= 0)
            throw InputError("ortho maps element '" + from + "' twice in lattice '" +
                             raw.name + "'");
        ortho[static_cast<size_t>(x)] = y;
    }
    for (int x = 0; x < n; ++x)
        if (ortho[static_cast<size_t>(x)] < 0)
            throw InputError("ortho map is missing element '" +
                             raw.elements[static_cast<size_t>(x)] + "' in lattice '" +
                             raw.name + "'");

    detail::BitMatrix above(n);  // row x = {y : x <= y}
    for (int x = 0; x < n; ++x) above.set(x, x);
    for (const auto& [lo, hi] : raw.order)
        above.set(resolve(lo, "order"), resolve(hi, "order"));
    if (raw.order_kind == RawLattice::OrderKind::Hasse) {
        // Warshall closure over the cover relation.
        for (int k = 0; k < n; ++k)
            for (int x = 0; x < n; ++x)
                if (above.get(x, k)) above.or_row(x, k);
    }

    ValidationReport rep;
    auto viol = [&](std::string axiom, std::initializer_list<int> wit, std::string detail) {
        Violation v;
        v.axiom = std::move(axiom);
        for (int w : wit) v.witness.push_back(raw.elements[static_cast<size_t>(w)]);
        v.detail = std::move(detail);
        rep.violations.push_back(std::move(v));
    };
    auto nm = [&](int x) -> const std::string& { return raw.elements[static_cast<size_t>(x)]; };

    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (above.get(x, y) && above.get(y, x))
                viol("antisymmetry", {x, y},
                     nm(x) + " <= " + nm(y) + " and " + nm(y) + " <= " + nm(x));

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !above.get(x, y)) continue;
            if (!above.row_subset(y, x)) {
                for (int z = 0; z < n; ++z)
                    if (above.get(y, z) && !above.get(x, z)) {
                        viol("transitivity", {x, y, z},
                             nm(x) + " <= " + nm(y) + " <= " + nm(z) + " but not " +
                                 nm(x) + " <= " + nm(z));
                        break;  // one witness per (x, y) pair keeps reports short
                    }
            }
        }

    for (int x = 0; x < n; ++x) {
        if (!above.get(bottom, x))
            viol("bounded", {x}, "bottom '" + nm(bottom) + "' is not below '" + nm(x) + "'");
        if (!above.get(x, top))
            viol("bounded", {x}, "top '" + nm(top) + "' is not above '" + nm(x) + "'");
    }

    // below = transpose of above; used for meet scans.
    detail::BitMatrix below(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (above.get(x, y)) below.set(y, x);

    // Linear extension; on order violations leftovers are appended so the
    // candidate scan below still terminates (the verify step keeps tables
    // sound regardless).
    std::vector<int> pos(static_cast<size_t>(n), -1);
    {
        std::vector<int> pred(static_cast<size_t>(n), 0);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (x != y && above.get(y, x)) ++pred[static_cast<size_t>(x)];
        std::vector<char> done(static_cast<size_t>(n), 0);
        int placed = 0;
        while (placed < n) {
            int pick = -1;
            for (int x = 0; x < n; ++x)
                if (!done[static_cast<size_t>(x)] && pred[static_cast<size_t>(x)] <= 0) {
                    pick = x;
                    break;
                }
            if (pick < 0)
                for (int x = 0; x < n; ++x)
                    if (!done[static_cast<size_t>(x)]) {
                        pick = x;
                        break;
                    }
            done[static_cast<size_t>(pick)] = 1;
            pos[static_cast<size_t>(pick)] = placed++;
            for (int y = 0; y < n; ++y)
                if (pick != y && above.get(pick, y)) --pred[static_cast<size_t>(y)];
        }
    }

    const int words = above.words;
    std::vector<std::uint64_t> buf(static_cast<size_t>(words));
    std::vector<int> meet(static_cast<size_t>(n) * n, -1);
    std::vector<int> join(static_cast<size_t>(n) * n, -1);

    for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y) {
            // greatest lower bound
            for (int i = 0; i < words; ++i) buf[static_cast<size_t>(i)] = below.row(x)[i] & below.row(y)[i];
            int cand = -1;
            for (int z = 0; z < n; ++z)
                if ((buf[static_cast<size_t>(z >> 6)] >> (z & 63)) & 1)
                    if (cand < 0 || pos[static_cast<size_t>(z)] > pos[static_cast<size_t>(cand)]) cand = z;
            if (cand >= 0 && detail::span_subset(buf.data(), below.row(cand), words)) {
                meet[static_cast<size_t>(x) * n + y] = cand;
                meet[static_cast<size_t>(y) * n + x] = cand;
            } else {
                viol("meet_exists", {x, y},
                     "no greatest lower bound of " + nm(x) + " and " + nm(y));
            }
            // least upper bound
            for (int i = 0; i < words; ++i) buf[static_cast<size_t>(i)] = above.row(x)[i] & above.row(y)[i];
            cand = -1;
            for (int z = 0; z < n; ++z)
                if ((buf[static_cast<size_t>(z >> 6)] >> (z & 63)) & 1)
                    if (cand < 0 || pos[static_cast<size_t>(z)] < pos[static_cast<size_t>(cand)]) cand = z;
            if (cand >= 0 && detail::span_subset(buf.data(), above.row(cand), words)) {
                join[static_cast<size_t>(x) * n + y] = cand;
                join[static_cast<size_t>(y) * n + x] = cand;
            } else {
                viol("join_exists", {x, y},
                     "no least upper bound of " + nm(x) + " and " + nm(y));
            }
        }

    auto ort = [&](int x) { return ortho[static_cast<size_t>(x)]; };
    for (int x = 0; x < n; ++x)
        if (ort(ort(x)) != x)
            viol("ortho_involution", {x},
                 nm(x) + "⊥⊥ = " + nm(ort(ort(x))) + ", expected " + nm(x));

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && above.get(x, y) && !above.get(ort(y), ort(x)))
                viol("ortho_order_reversing", {x, y},
                     nm(x) + " <= " + nm(y) + " but not " + nm(ort(y)) + " <= " + nm(ort(x)));

    for (int x = 0; x < n; ++x) {
        int m = meet[static_cast<size_t>(x) * n + ort(x)];
        if (m >= 0 && m != bottom)
            viol("ortho_meet", {x},
                 nm(x) + " ∧ " + nm(ort(x)) + " = " + nm(m) + ", expected " + nm(bottom));
        int j = join[static_cast<size_t>(x) * n + ort(x)];
        if (j >= 0 && j != top)
            viol("ortho_join", {x},
                 nm(x) + " ∨ " + nm(ort(x)) + " = " + nm(j) + ", expected " + nm(top));
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!above.get(a, b)) continue;
            int m = meet[static_cast<size_t>(ort(a)) * n + b];
            if (m < 0) continue;
            int j = join[static_cast<size_t>(a) * n + m];
            if (j < 0) continue;
            if (j != b)
                viol("orthomodular", {a, b},
                     nm(a) + " ∨ (" + nm(ort(a)) + " ∧ " + nm(b) + ") = " + nm(j) +
                         ", expected " + nm(b));
        }

    rep.passed = rep.violations.empty();
    if (rep.passed) {
        auto lat = std::shared_ptr<Lattice>(new Lattice());
        lat->name_ = raw.name;
        lat->n_ = n;
        lat->names_ = raw.elements;
        lat->index_ = std::move(index);
        lat->above_ = std::move(above);
        lat->ortho_ = std::move(ortho);
        lat->meet_ = std::move(meet);
        lat->join_ = std::move(join);
        lat->bottom_ = bottom;
        lat->top_ = top;
        rep.lattice = std::move(lat);
    }
    return rep;
}

/// validate() that insists on success; violations become an InputError.
inline LatticePtr build(const RawLattice& raw, int max_elements = kMaxLatticeElements) {
    ValidationReport rep = validate(raw, max_elements);
    if (!rep.passed) {
        std::string msg = "lattice '" + raw.name + "' failed validation:";
        for (const auto& v : rep.violations) {
            msg += " [" + v.axiom + "] " + v.detail + ";";
            if (msg.size() > 400) {
                msg += " ...";
                break;
            }
        }
        throw InputError(msg);
    }
    return rep.lattice;
}

/// An element of a specific lattice. Operations on values from different
/// lattices throw InputError.
class LValue {
public:
    LValue() = default;
    LValue(LatticePtr lattice, int index) : lat_(std::move(lattice)), idx_(index) {
        if (!lat_ || idx_ < 0 || idx_ >= lat_->size())
            throw InputError("lattice value index out of range");
    }

    const LatticePtr& lattice() const { return lat_; }
    int index() const { return idx_; }
    const std::string& name() const { return lat_->element_name(idx_); }
    bool is_bottom() const { return idx_ == lat_->bottom(); }
    bool is_top() const { return idx_ == lat_->top(); }

    friend bool operator==(const LValue& a, const LValue& b) {
        return a.idx_ == b.idx_ && same_lattice(a.lat_, b.lat_);
    }
    friend bool operator!=(const LValue& a, const LValue& b) { return !(a == b); }

private:
    LatticePtr lat_;
    int idx_ = 0;
};

namespace detail {
inline const LatticePtr& check_pair(const LValue& a, const LValue& b) {
    if (!same_lattice(a.lattice(), b.lattice()))
        throw InputError("operands come from different lattices");
    return a.lattice();
}
}  // namespace detail

inline bool leq(const LValue& a, const LValue& b) {
    return detail::check_pair(a, b)->leq(a.index(), b.index());
}
inline LValue meet(const LValue& a, const LValue& b) {
    const auto& l = detail::check_pair(a, b);
    return LValue(l, l->meet(a.index(), b.index()));
}
inline LValue join(const LValue& a, const LValue& b) {
    const auto& l = detail::check_pair(a, b);
    return LValue(l, l->join(a.index(), b.index()));
}
inline LValue ortho(const LValue& a) {
    return LValue(a.lattice(), a.lattice()->ortho(a.index()));
}
inline LValue bottom_of(const LatticePtr& l) { return LValue(l, l->bottom()); }
inline LValue top_of(const LatticePtr& l) { return LValue(l, l->top()); }

/// Sasaki arrow a → b = a⊥ ∨ (a ∧ b); equals top exactly when a <= b.
inline LValue sasaki_arrow(const LValue& a, const LValue& b) {
    return join(ortho(a), meet(a, b));
}

/// Symmetric bi-implication (a → b) ∧ (b → a) under the Sasaki arrow.
inline LValue bi_implication(const LValue& a, const LValue& b) {
    return meet(sasaki_arrow(a, b), sasaki_arrow(b, a));
}

namespace detail {

inline std::vector<int> dedup_indices(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// Fixpoint closure under a binary table; adds `unit` at the end.
inline std::vector<int> close_indices(const Lattice& l, std::vector<int> xs, bool use_meet,
                                      int unit) {
    std::set<int> s(xs.begin(), xs.end());
    std::vector<int> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
        std::vector<int> added;
        for (int a : frontier)
            for (int b : s) {
                int c = use_meet ? l.meet(a, b) : l.join(a, b);
                if (s.insert(c).second) added.push_back(c);
            }
        frontier = std::move(added);
    }
    s.insert(unit);
    return std::vector<int>(s.begin(), s.end());
}

}  // namespace detail

/// All meets of nonempty finite subsets, plus top. Index-level variant used
/// by the automata modules.
inline std::vector<int> meet_closure_indices(const Lattice& l, std::vector<int> xs) {
    return detail::close_indices(l, detail::dedup_indices(std::move(xs)), true, l.top());
}

/// All joins of nonempty finite subsets, plus bottom.
inline std::vector<int> join_closure_indices(const Lattice& l, std::vector<int> xs) {
    return detail::close_indices(l, detail::dedup_indices(std::move(xs)), false, l.bottom());
}

namespace detail {
inline std::pair<LatticePtr, std::vector<int>> unpack(std::span<const LValue> xs) {
    if (xs.empty()) throw InputError("expected at least one lattice value");
    LatticePtr l = xs.front().lattice();
    std::vector<int> idx;
    idx.reserve(xs.size());
    for (const auto& x : xs) {
        if (!same_lattice(l, x.lattice()))
            throw InputError("operands come from different lattices");
        idx.push_back(x.index());
    }
    return {std::move(l), std::move(idx)};
}
inline std::vector<LValue> pack(const LatticePtr& l, const std::vector<int>& idx) {
    std::vector<LValue> out;
    out.reserve(idx.size());
    for (int i : idx) out.emplace_back(l, i);
    return out;
}
}  // namespace detail

inline std::vector<LValue> meet_closure(std::span<const LValue> xs) {
    auto [l, idx] = detail::unpack(xs);
    return detail::pack(l, meet_closure_indices(*l, std::move(idx)));
}

inline std::vector<LValue> join_closure(std::span<const LValue> xs) {
    auto [l, idx] = detail::unpack(xs);
    return detail::pack(l, join_closure_indices(*l, std::move(idx)));
}

/// Commutator γ(X) = ⋁ over sign assignments f : X → {+,-} of ⋀ x^f(x),
/// where x^+ = x and x^- = x⊥. Equals top exactly when X pairwise commutes.
inline LValue commutator(std::span<const LValue> xs) {
    auto [l, idx] = detail::unpack(xs);
    idx = detail::dedup_indices(std::move(idx));
    const int k = static_cast<int>(idx.size());
    if (k > 24)
        throw ResourceError("commutator over " + std::to_string(k) +
                            " distinct elements needs 2^" + std::to_string(k) + " terms");
    int acc = l->bottom();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        int term = l->top();
        for (int i = 0; i < k; ++i) {
            int x = idx[static_cast<size_t>(i)];
            term = l->meet(term, (mask >> i) & 1 ? x : l->ortho(x));
        }
        acc = l->join(acc, term);
    }
    return LValue(l, acc);
}

// ---------------------------------------------------------------------------
// Standard families.

namespace detail {
inline std::string atom_letter(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "m" + std::to_string(i + 1);
}
}  // namespace detail

/// Powerset of n atoms. Elements are named by joining atom names with '∨';
/// the empty set is "0" and the full set "1". Atom i sits at bit i.
inline RawLattice boolean_raw(int n_atoms, std::vector<std::string> atom_names = {},
                              std::string name = {}) {
    if (n_atoms < 1) throw InputError("a powerset lattice needs at least one atom");
    if (n_atoms >= 31 || (1 << n_atoms) > kMaxLatticeElements)
        throw ResourceError("powerset of " + std::to_string(n_atoms) +
                            " atoms exceeds the element cap");
    if (atom_names.empty())
        for (int i = 0; i < n_atoms; ++i) atom_names.push_back("a" + std::to_string(i + 1));
    if (static_cast<int>(atom_names.size()) != n_atoms)
        throw InputError("expected " + std::to_string(n_atoms) + " atom names");

    const int full = (1 << n_atoms) - 1;
    auto mask_name = [&](int mask) -> std::string {
        if (mask == 0) return "0";
        if (mask == full) return "1";
        std::string s;
        for (int i = 0; i < n_atoms; ++i)
            if (mask & (1 << i)) {
                if (!s.empty()) s += "∨";
                s += atom_names[static_cast<size_t>(i)];
            }
        return s;
    };

    RawLattice raw;
    raw.name = name.empty() ? "boolean:" + std::to_string(n_atoms) : std::move(name);
    for (int mask = 0; mask <= full; ++mask) raw.elements.push_back(mask_name(mask));
    raw.order_kind = RawLattice::OrderKind::Hasse;
    for (int mask = 0; mask <= full; ++mask)
        for (int i = 0; i < n_atoms; ++i)
            if (!(mask & (1 << i))) raw.order.emplace_back(mask_name(mask), mask_name(mask | (1 << i)));
    for (int mask = 0; mask <= full; ++mask)
        raw.ortho.emplace_back(mask_name(mask), mask_name(full & ~mask));
    raw.bottom = "0";
    raw.top = "1";
    return raw;
}

/// MO(n): n incomparable atom pairs a, a⊥ between bottom and top. The
/// smallest members are the classic non-distributive orthomodular examples.
inline RawLattice mo_raw(int n_pairs) {
    if (n_pairs < 1) throw InputError("MO(n) needs at least one atom pair");
    if (2 + 2 * n_pairs > kMaxLatticeElements)
        throw ResourceError("MO(" + std::to_string(n_pairs) + ") exceeds the element cap");
    RawLattice raw;
    raw.name = "mo:" + std::to_string(n_pairs);
    raw.elements.push_back("0");
    for (int i = 0; i < n_pairs; ++i) {
        raw.elements.push_back(detail::atom_letter(i));
        raw.elements.push_back(detail::atom_letter(i) + "⊥");
    }
    raw.elements.push_back("1");
    raw.order_kind = RawLattice::OrderKind::Hasse;
    raw.ortho.emplace_back("0", "1");
    raw.ortho.emplace_back("1", "0");
    for (int i = 0; i < n_pairs; ++i) {
        const std::string a = detail::atom_letter(i);
        raw.order.emplace_back("0", a);
        raw.order.emplace_back("0", a + "⊥");
        raw.order.emplace_back(a, "1");
        raw.order.emplace_back(a + "⊥", "1");
        raw.ortho.emplace_back(a, a + "⊥");
        raw.ortho.emplace_back(a + "⊥", a);
    }
    raw.bottom = "0";
    raw.top = "1";
    return raw;
}

/// The six-element benzene ring: 0 < a < b⊥ < 1 and 0 < b < a⊥ < 1. An
/// ortholattice that is not orthomodular; validation must reject it.
inline RawLattice hexagon_raw() {
    RawLattice raw;
    raw.name = "hexagon";
    raw.elements = {"0", "a", "b", "a⊥", "b⊥", "1"};
    raw.order_kind = RawLattice::OrderKind::Hasse;
    raw.order = {{"0", "a"}, {"0", "b"}, {"a", "b⊥"}, {"b", "a⊥"}, {"b⊥", "1"}, {"a⊥", "1"}};
    raw.ortho = {{"0", "1"}, {"1", "0"}, {"a", "a⊥"}, {"a⊥", "a"}, {"b", "b⊥"}, {"b⊥", "b"}};
    raw.bottom = "0";
    raw.top = "1";
    return raw;
}

/// Powerset of the four atoms a00, a01, a10, a11; the value lattice used by
/// the shipped two-state demo automaton.
inline RawLattice example21_raw() {
    return boolean_raw(4, {"a00", "a01", "a10", "a11"}, "example21");
}

/// True when the selector names a standard family: boolean:n, mo:n,
/// hexagon, example21.
inline bool is_standard_selector(std::string_view s) {
    if (s == "hexagon" || s == "example21") return true;
    auto num_after = [&](std::string_view prefix) {
        if (s.size() <= prefix.size() || s.substr(0, prefix.size()) != prefix) return false;
        for (char c : s.substr(prefix.size()))
            if (c < '0' || c > '9') return false;
        return true;
    };
    return num_after("boolean:") || num_after("mo:");
}

inline RawLattice standard_raw(std::string_view selector) {
    if (selector == "hexagon") return hexagon_raw();
    if (selector == "example21") return example21_raw();
    auto parse_n = [&](std::string_view prefix) -> int {
        std::string digits(selector.substr(prefix.size()));
        if (digits.empty() || digits.size() > 9) throw InputError("bad selector '" + std::string(selector) + "'");
        for (char c : digits)
            if (c < '0' || c > '9') throw InputError("bad selector '" + std::string(selector) + "'");
        return std::stoi(digits);
    };
    if (selector.substr(0, 8) == "boolean:") return boolean_raw(parse_n("boolean:"));
    if (selector.substr(0, 3) == "mo:") return mo_raw(parse_n("mo:"));
    throw InputError("unknown lattice selector '" + std::string(selector) +
                     "' (expected boolean:n, mo:n, hexagon, or example21)");
}

inline LatticePtr boolean_lattice(int n_atoms) { return build(boolean_raw(n_atoms)); }
inline LatticePtr mo_lattice(int n_pairs) { return build(mo_raw(n_pairs)); }
inline LatticePtr example21_lattice() { return build(example21_raw()); }

}  // namespace qla::oml
