#include "qla/oml.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace qla;
using oml::LValue;

namespace {

LValue el(const oml::LatticePtr& l, const std::string& name) {
    return LValue(l, l->require(name));
}

std::set<std::string> violated_axioms(const oml::ValidationReport& rep) {
    std::set<std::string> out;
    for (const auto& v : rep.violations) out.insert(v.axiom);
    return out;
}

}  // namespace

TEST_CASE("standard lattices validate clean") {
    for (int n = 1; n <= 4; ++n) {
        CAPTURE(n);
        CHECK(oml::validate(oml::boolean_raw(n)).passed);
        CHECK(oml::validate(oml::mo_raw(n)).passed);
    }
    CHECK(oml::validate(oml::example21_raw()).passed);
}

TEST_CASE("boolean lattice is the powerset of its atoms") {
    auto l = oml::boolean_lattice(3);
    REQUIRE(l->size() == 8);

    // Decode each element to its atom set; the tables must match set algebra.
    auto bits = [&](int x) {
        std::set<std::string> atoms;
        std::string name = LValue(l, x).name();
        size_t start = 0;
        while (start < name.size()) {
            size_t sep = name.find("∨", start);
            if (sep == std::string::npos) sep = name.size();
            std::string part = name.substr(start, sep - start);
            if (part != "0" && part != "1") atoms.insert(part);
            start = sep == name.size() ? sep : sep + std::string("∨").size();
        }
        if (name == "1") atoms = {"a1", "a2", "a3"};
        return atoms;
    };
    for (int x = 0; x < l->size(); ++x)
        for (int y = 0; y < l->size(); ++y) {
            std::set<std::string> bx = bits(x), by = bits(y), got = bits(l->meet(x, y));
            std::set<std::string> want;
            std::set_intersection(bx.begin(), bx.end(), by.begin(), by.end(),
                                  std::inserter(want, want.begin()));
            CHECK(got == want);
            want.clear();
            std::set_union(bx.begin(), bx.end(), by.begin(), by.end(),
                           std::inserter(want, want.begin()));
            CHECK(bits(l->join(x, y)) == want);
            CHECK(l->leq(x, y) == std::includes(by.begin(), by.end(), bx.begin(), bx.end()));
        }
    for (int x = 0; x < l->size(); ++x) {
        auto bx = bits(x), bc = bits(l->ortho(x));
        std::set<std::string> both;
        std::set_union(bx.begin(), bx.end(), bc.begin(), bc.end(),
                       std::inserter(both, both.begin()));
        CHECK(both.size() == 3);
        CHECK(l->meet(x, l->ortho(x)) == l->bottom());
    }
}

TEST_CASE("horizontal-sum lattice operation table") {
    auto l = oml::mo_lattice(2);
    auto a = el(l, "a"), ac = el(l, "a⊥"), b = el(l, "b"), bc = el(l, "b⊥");
    auto zero = oml::bottom_of(l), one = oml::top_of(l);

    CHECK(meet(a, b) == zero);
    CHECK(join(a, b) == one);
    CHECK(meet(a, ac) == zero);
    CHECK(join(a, ac) == one);
    CHECK(ortho(a) == ac);
    CHECK(ortho(zero) == one);
    CHECK(meet(a, one) == a);
    CHECK(join(a, zero) == a);
    CHECK(!leq(a, b));
    CHECK(leq(zero, b));

    CHECK(sasaki_arrow(a, b) == ac);
    CHECK(sasaki_arrow(a, a) == one);
    CHECK(sasaki_arrow(one, b) == b);
    CHECK(sasaki_arrow(zero, b) == one);
    CHECK(bi_implication(a, b) == zero);
    CHECK(bi_implication(a, one) == a);
}

TEST_CASE("lattice-theoretic identities hold on every built lattice") {
    std::vector<oml::LatticePtr> ls = {oml::boolean_lattice(2), oml::boolean_lattice(3),
                                       oml::mo_lattice(2), oml::mo_lattice(3),
                                       oml::mo_lattice(4), oml::example21_lattice()};
    for (const auto& l : ls) {
        CAPTURE(l->name());
        for (int x = 0; x < l->size(); ++x) {
            CHECK(l->ortho(l->ortho(x)) == x);
            CHECK(l->meet(x, l->ortho(x)) == l->bottom());
            CHECK(l->join(x, l->ortho(x)) == l->top());
            for (int y = 0; y < l->size(); ++y) {
                // De Morgan
                CHECK(l->ortho(l->meet(x, y)) == l->join(l->ortho(x), l->ortho(y)));
                // orthomodularity, join form
                if (l->leq(x, y))
                    CHECK(l->join(x, l->meet(l->ortho(x), y)) == y);
                // the projection of y onto x agrees with the plain meet below x
                LValue xv(l, x), yv(l, y);
                CHECK(meet(xv, sasaki_arrow(xv, yv)) == meet(xv, yv));
                CHECK((bi_implication(xv, yv) == oml::top_of(l)) == (x == y));
            }
        }
    }
}

TEST_CASE("hexagon fails the orthomodular law and nothing else") {
    auto rep = oml::validate(oml::hexagon_raw());
    REQUIRE(!rep.passed);
    CHECK(violated_axioms(rep) == std::set<std::string>{"orthomodular"});
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().witness ==
          std::vector<std::string>{"a", "b⊥"});
}

TEST_CASE("validation pinpoints broken structures") {
    SECTION("unbounded poset") {
        oml::RawLattice raw;
        raw.name = "fork";
        raw.elements = {"0", "a", "b"};
        raw.order = {{"0", "a"}, {"0", "b"}};
        raw.ortho = {{"0", "0"}, {"a", "a"}, {"b", "b"}};
        raw.bottom = "0";
        raw.top = "a";
        auto rep = oml::validate(raw);
        REQUIRE(!rep.passed);
        CHECK(violated_axioms(rep).count("bounded") == 1);
    }
    SECTION("missing meets and joins") {
        oml::RawLattice raw;
        raw.name = "double-diamond";
        raw.elements = {"0", "a", "b", "c", "d", "1"};
        raw.order = {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"},
                     {"b", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}};
        raw.ortho = {{"0", "1"}, {"1", "0"}, {"a", "d"}, {"d", "a"}, {"b", "c"}, {"c", "b"}};
        raw.bottom = "0";
        raw.top = "1";
        auto rep = oml::validate(raw);
        REQUIRE(!rep.passed);
        auto axioms = violated_axioms(rep);
        CHECK(axioms.count("join_exists") == 1);
        CHECK(axioms.count("meet_exists") == 1);
    }
    SECTION("fixed point of the complement") {
        oml::RawLattice raw;
        raw.name = "midpoint";
        raw.elements = {"0", "a", "1"};
        raw.order = {{"0", "a"}, {"a", "1"}};
        raw.ortho = {{"0", "1"}, {"1", "0"}, {"a", "a"}};
        raw.bottom = "0";
        raw.top = "1";
        auto rep = oml::validate(raw);
        REQUIRE(!rep.passed);
        auto axioms = violated_axioms(rep);
        CHECK(axioms.count("ortho_meet") == 1);
        CHECK(axioms.count("ortho_join") == 1);
    }
    SECTION("antisymmetry under full order input") {
        oml::RawLattice raw;
        raw.name = "twins";
        raw.elements = {"0", "a", "b", "1"};
        raw.order_kind = oml::RawLattice::OrderKind::Leq;
        raw.order = {{"0", "a"}, {"0", "b"}, {"0", "1"}, {"a", "1"}, {"b", "1"},
                     {"a", "b"}, {"b", "a"}};
        raw.ortho = {{"0", "1"}, {"1", "0"}, {"a", "b"}, {"b", "a"}};
        raw.bottom = "0";
        raw.top = "1";
        auto rep = oml::validate(raw);
        REQUIRE(!rep.passed);
        CHECK(violated_axioms(rep).count("antisymmetry") == 1);
    }
    SECTION("unknown element names throw") {
        oml::RawLattice raw;
        raw.name = "dangling";
        raw.elements = {"0", "1"};
        raw.order = {{"0", "x"}};
        raw.ortho = {{"0", "1"}, {"1", "0"}};
        raw.bottom = "0";
        raw.top = "1";
        CHECK_THROWS_AS(oml::validate(raw), InputError);
    }
    SECTION("element cap") {
        CHECK_THROWS_AS(oml::validate(oml::boolean_raw(13)), ResourceError);
    }
}

TEST_CASE("meet and join closures") {
    auto l = oml::mo_lattice(2);
    std::vector<int> x = {l->require("a"), l->require("b")};

    auto mc = oml::meet_closure_indices(*l, x);
    std::set<int> mset(mc.begin(), mc.end());
    CHECK(mset == std::set<int>{l->bottom(), l->require("a"), l->require("b"), l->top()});

    auto jc = oml::join_closure_indices(*l, mc);
    CHECK(std::set<int>(jc.begin(), jc.end()) == mset);

    // empty input: the closure is just the unit of the operation
    CHECK(oml::meet_closure_indices(*l, {}) == std::vector<int>{l->top()});
    CHECK(oml::join_closure_indices(*l, {}) == std::vector<int>{l->bottom()});

    // closures are fixpoints
    auto again = oml::meet_closure_indices(*l, mc);
    CHECK(std::set<int>(again.begin(), again.end()) == mset);
}

TEST_CASE("commutator") {
    auto mo = oml::mo_lattice(2);
    auto a = el(mo, "a"), b = el(mo, "b");
    std::vector<LValue> ab = {a, b};
    CHECK(oml::commutator(ab) == oml::bottom_of(mo));

    std::vector<LValue> aac = {a, ortho(a)};
    CHECK(oml::commutator(aac) == oml::top_of(mo));

    std::vector<LValue> single = {a};
    CHECK(oml::commutator(single) == oml::top_of(mo));

    // distributive lattices commute everywhere
    auto bl = oml::boolean_lattice(3);
    for (int x = 0; x < bl->size(); ++x)
        for (int y = 0; y < bl->size(); ++y) {
            std::vector<LValue> xs = {LValue(bl, x), LValue(bl, y)};
            CHECK(oml::commutator(xs) == oml::top_of(bl));
        }

    CHECK_THROWS_AS(oml::commutator(std::vector<LValue>{}), InputError);

    auto big = oml::boolean_lattice(5);
    std::vector<LValue> many;
    for (int i = 0; i < 25; ++i) many.emplace_back(big, i % big->size());
    CHECK_THROWS_AS(oml::commutator(many), ResourceError);
}

TEST_CASE("selector strings") {
    CHECK(oml::is_standard_selector("boolean:3"));
    CHECK(oml::is_standard_selector("mo:2"));
    CHECK(oml::is_standard_selector("hexagon"));
    CHECK(oml::is_standard_selector("example21"));
    CHECK(!oml::is_standard_selector("boolean:"));
    CHECK(!oml::is_standard_selector("boolean:x"));
    CHECK(!oml::is_standard_selector("pentagon"));
    CHECK(!oml::is_standard_selector("/tmp/lattice.json"));

    CHECK(oml::build(oml::standard_raw("mo:3"))->size() == 8);
    CHECK(oml::build(oml::standard_raw("boolean:4"))->size() == 16);
}

TEST_CASE("values refuse to mix lattices") {
    auto l1 = oml::mo_lattice(2);
    auto l2 = oml::boolean_lattice(2);
    CHECK_THROWS_AS(meet(oml::top_of(l1), oml::top_of(l2)), InputError);

    // structurally equal copies are interchangeable
    auto l1copy = oml::mo_lattice(2);
    CHECK(oml::same_lattice(l1, l1copy));
    CHECK(meet(el(l1, "a"), el(l1copy, "a")) == el(l1, "a"));
}
