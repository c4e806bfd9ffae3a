#include "qla/qregex.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qla;
using namespace qla::qregex;
using oml::LValue;
using Catch::Matchers::ContainsSubstring;

namespace {

NodePtr rnd_node(std::mt19937& rng, const oml::LatticePtr& l, const Alphabet& alpha, int depth) {
    unsigned pick = rng() % (depth <= 0 ? 3u : 7u);
    switch (pick) {
        case 0: return qr_empty();
        case 1: return qr_eps();
        case 2: return qr_symbol(alpha[rng() % static_cast<unsigned>(alpha.size())]);
        case 3: return qr_star(rnd_node(rng, l, alpha, depth - 1));
        case 4: return qr_scalar(testgen::rnd_index(rng, l), rnd_node(rng, l, alpha, depth - 1));
        case 5:
            return qr_sum(rnd_node(rng, l, alpha, depth - 1), rnd_node(rng, l, alpha, depth - 1));
        default:
            return qr_concat(rnd_node(rng, l, alpha, depth - 1),
                             rnd_node(rng, l, alpha, depth - 1));
    }
}

}  // namespace

TEST_CASE("parsing fixed expressions") {
    auto l = oml::mo_lattice(2);
    Alphabet alpha = make_alphabet({"x", "y"});
    auto p = [&](const char* text) { return parse(text, l, alpha); };

    CHECK(same_tree(p("x y").root, qr_concat(qr_symbol("x"), qr_symbol("y"))));
    CHECK(same_tree(p("x + y").root, qr_sum(qr_symbol("x"), qr_symbol("y"))));
    CHECK(same_tree(p("x y*").root, qr_concat(qr_symbol("x"), qr_star(qr_symbol("y")))));
    CHECK(same_tree(p("(x y)*").root, qr_star(qr_concat(qr_symbol("x"), qr_symbol("y")))));
    CHECK(same_tree(p("[a]x y").root,
                    qr_concat(qr_scalar(l->require("a"), qr_symbol("x")), qr_symbol("y"))));
    CHECK(same_tree(p("[a](x y)").root,
                    qr_scalar(l->require("a"), qr_concat(qr_symbol("x"), qr_symbol("y")))));
    CHECK(same_tree(p("[a⊥]_eps").root, qr_scalar(l->require("a⊥"), qr_eps())));
    CHECK(same_tree(p("_empty").root, qr_empty()));
    CHECK(same_tree(p("x**").root, qr_star(qr_star(qr_symbol("x")))));
    // sum chains associate to the left
    CHECK(same_tree(p("x + y + x").root,
                    qr_sum(qr_sum(qr_symbol("x"), qr_symbol("y")), qr_symbol("x"))));
}

TEST_CASE("multi-byte symbols parse greedily") {
    auto l = oml::boolean_lattice(1);
    Alphabet alpha = make_alphabet({"σ", "στ", "τ"});
    CHECK(same_tree(parse("στ", l, alpha).root, qr_symbol("στ")));
    CHECK(same_tree(parse("σ τ", l, alpha).root, qr_concat(qr_symbol("σ"), qr_symbol("τ"))));
    CHECK(same_tree(parse("στσ", l, alpha).root, qr_concat(qr_symbol("στ"), qr_symbol("σ"))));
}

TEST_CASE("parse errors carry byte offsets") {
    auto l = oml::mo_lattice(2);
    Alphabet alpha = make_alphabet({"x", "y"});
    auto p = [&](const char* text) { return parse(text, l, alpha); };

    CHECK_THROWS_AS(p("x +"), InputError);
    CHECK_THROWS_WITH(p("x +"), ContainsSubstring("offset 3"));
    CHECK_THROWS_WITH(p(")"), ContainsSubstring("offset 0"));
    CHECK_THROWS_WITH(p("x)"), ContainsSubstring("offset 1"));
    CHECK_THROWS_WITH(p("(x y"), ContainsSubstring("offset 4"));
    CHECK_THROWS_WITH(p("[a x"), ContainsSubstring("']'"));
    CHECK_THROWS_WITH(p("[zz]x"), ContainsSubstring("no element 'zz'"));
    CHECK_THROWS_WITH(p("z"), ContainsSubstring("offset 0"));
    CHECK_THROWS_AS(p(""), InputError);
    CHECK_THROWS_AS(p("*x"), InputError);
}

TEST_CASE("printing inverts parsing") {
    auto l = oml::mo_lattice(2);
    Alphabet alpha = make_alphabet({"x", "y"});

    // fixed shapes that exercise every precedence edge
    for (const char* text :
         {"x", "_eps", "_empty", "x y", "x + y", "x y*", "(x y)*", "x**", "[a]x*", "([a]x)*",
          "x + (y + x)", "x (y + x)", "[a](x + y)", "[b⊥]([a]x y)", "x (y x) y"}) {
        QRegex q = parse(text, l, alpha);
        QRegex r = parse(pretty(q), l, alpha);
        CAPTURE(text, pretty(q));
        CHECK(same_tree(q.root, r.root));
    }

    std::mt19937 rng(701);
    for (int t = 0; t < 300; ++t) {
        QRegex q{l, alpha, rnd_node(rng, l, alpha, 5)};
        std::string text = pretty(q);
        QRegex r = parse(text, l, alpha);
        CAPTURE(t, text);
        REQUIRE(same_tree(q.root, r.root));
        REQUIRE(pretty(r) == text);
    }
}

TEST_CASE("fixed denotations") {
    auto l = oml::mo_lattice(2);
    Alphabet alpha = make_alphabet({"x"});
    auto a = LValue(l, l->require("a")), b = LValue(l, l->require("b"));
    auto v = [&](const char* text, const Word& w) { return denote(parse(text, l, alpha), w); };

    CHECK(v("[a]x + [b]x", {0}) == join(a, b));
    CHECK(v("[a]x + [b]x", {}) == oml::bottom_of(l));
    CHECK(v("([a]x)*", {}) == oml::top_of(l));
    CHECK(v("([a]x)*", {0}) == a);
    CHECK(v("([a]x)*", {0, 0}) == a);
    CHECK(v("[a]_eps", {}) == a);
    CHECK(v("[a]_eps", {0}) == oml::bottom_of(l));
    CHECK(v("_empty", {}) == oml::bottom_of(l));
    CHECK(v("_empty*", {}) == oml::top_of(l));
    CHECK(v("[a]([b]x)", {0}) == oml::bottom_of(l));  // a ∧ b = 0
    CHECK(v("x x", {0, 0}) == oml::top_of(l));
    CHECK(v("x x", {0}) == oml::bottom_of(l));
}

TEST_CASE("unfolding iteration deeper than the bound is refused") {
    auto l = oml::boolean_lattice(1);
    Alphabet alpha = make_alphabet({"x"});
    QRegex q = parse("x*", l, alpha);
    CHECK_NOTHROW(denote(q, Word(6, 0), 6));
    CHECK_THROWS_AS(denote(q, Word(7, 0), 6), ResourceError);
}

TEST_CASE("compilation agrees with denotation") {
    Alphabet alpha = make_alphabet({"x", "y"});
    std::mt19937 rng(702);
    auto words = testgen::words_up_to(alpha, 4);
    for (const auto& l : {oml::mo_lattice(2), oml::boolean_lattice(2)}) {
        for (int t = 0; t < 40; ++t) {
            QRegex q{l, alpha, rnd_node(rng, l, alpha, 4)};
            qlang::StepLanguage s = compile(q);
            for (const auto& w : words) {
                CAPTURE(l->name(), t, pretty(q), format_word(alpha, w));
                REQUIRE(qlang::step_value(s, w) == denote(q, w));
            }
        }
    }
}

TEST_CASE("extraction recovers an equivalent expression") {
    Alphabet alpha = make_alphabet({"x", "y"});
    std::mt19937 rng(703);
    for (const auto& l : {oml::mo_lattice(2), oml::boolean_lattice(2)}) {
        for (int t = 0; t < 25; ++t) {
            qfa::Lvfa a = testgen::rnd_lvfa(rng, l, alpha, 3);
            qfa::Lvdfa d = qfa::determinize(a);
            QRegex q = extract(d);
            auto direct = qlang::lvdfa_to_step(d);
            auto via_expr = compile(q);
            CAPTURE(l->name(), t, pretty(q));
            REQUIRE(qlang::equivalent(direct, via_expr).equivalent);

            // the expression survives its own concrete syntax
            QRegex reparsed = parse(pretty(q), l, alpha);
            REQUIRE(same_tree(q.root, reparsed.root));
        }
    }
}

TEST_CASE("extraction accepts the nondeterministic form directly") {
    Alphabet alpha = make_alphabet({"x"});
    std::mt19937 rng(704);
    auto l = oml::mo_lattice(2);
    qfa::Lvfa a = testgen::rnd_lvfa(rng, l, alpha, 3);
    QRegex q = extract(a);
    auto words = testgen::words_up_to(alpha, 4);
    for (const auto& w : words) REQUIRE(denote(q, w, 6) == qfa::eval_nfa(a, w));
}
