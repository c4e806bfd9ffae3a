#include "qla/json_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace qla;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int status;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string("\"") + QLA_BIN_PATH + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string data_file(const std::string& name) {
    return std::string(QLA_DATA_DIR) + "/" + name;
}

const fs::path& scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("qla_cli_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("evaluation prints element names") {
    auto r = run_cli("fa eval " + data_file("example21.json") + " σ");
    CHECK(r.status == 0);
    CHECK(r.out == "a00∨a01∨a10\n");

    r = run_cli("fa eval " + data_file("example21.json") + " _eps");
    CHECK(r.status == 0);
    CHECK(r.out == "a01∨a10\n");

    r = run_cli("fa eval-oracle " + data_file("example21.json") + " σσ");
    CHECK(r.status == 0);
    CHECK(r.out == "a01∨a10\n");
}

TEST_CASE("validation reports violations through the exit code") {
    auto good = run_cli("lattice validate boolean:2");
    CHECK(good.status == 0);
    CHECK_THAT(good.out, ContainsSubstring("ok"));

    CHECK(run_cli("lattice validate mo:3").status == 0);
    CHECK(run_cli("lattice validate example21").status == 0);

    auto bad = run_cli("lattice validate hexagon");
    CHECK(bad.status == 1);
    CHECK_THAT(bad.out, ContainsSubstring("orthomodular"));
    CHECK_THAT(bad.out, ContainsSubstring("a, b⊥"));
}

TEST_CASE("commutator command") {
    auto r = run_cli("lattice commutator mo:2 a b");
    CHECK(r.status == 0);
    CHECK(r.out == "0\n");
    r = run_cli("lattice commutator boolean:2 a1 a2");
    CHECK(r.status == 0);
    CHECK(r.out == "1\n");
    CHECK(run_cli("lattice commutator mo:2 nosuch").status == 2);
}

TEST_CASE("determinize writes a loadable deterministic document") {
    std::string out = scratch("det.json");
    auto r = run_cli("fa determinize " + data_file("example21.json") + " -o " + out);
    REQUIRE(r.status == 0);

    auto j = json_io::read_json_file(out);
    CHECK(j.at("kind") == "lvdfa");
    CHECK(j.at("states").size() == 3);

    CHECK(run_cli("fa eval " + out + " σ").out == "a00∨a01∨a10\n");
    CHECK(run_cli("fa eval " + out + " σσσ").out == "a01∨a10\n");

    // without -o the document goes to standard output
    auto piped = run_cli("fa determinize " + data_file("example21.json"));
    CHECK(piped.status == 0);
    CHECK(json_io::json::parse(piped.out).at("kind") == "lvdfa");
}

TEST_CASE("epsilon elimination command") {
    std::string eps = scratch("eps.json");
    write_text(eps, R"({
      "kind": "lvfa_eps",
      "lattice": "mo:2",
      "states": ["s", "t"],
      "alphabet": ["x"],
      "initial": {"s": "1"},
      "final": {"t": "a"},
      "transitions": [
        {"from": "s", "symbol": "", "to": "t", "value": "a"},
        {"from": "t", "symbol": "x", "to": "t", "value": "1"}
      ]
    })");
    std::string out = scratch("noeps.json");
    REQUIRE(run_cli("fa rm-eps " + eps + " -o " + out).status == 0);
    auto j = json_io::read_json_file(out);
    CHECK(j.at("kind") == "lvfa");
    CHECK(run_cli("fa eval " + out + " x").out == run_cli("fa eval-oracle " + eps + " x").out);

    // the flattened machine must not be mistaken for an ε-machine
    CHECK(run_cli("fa rm-eps " + out + " -o /dev/null").status == 2);
}

TEST_CASE("pumping command output shape") {
    std::string det = scratch("pump-input.json");
    REQUIRE(run_cli("fa determinize " + data_file("example21.json") + " -o " + det).status == 0);
    auto r = run_cli("fa pump " + det + " σσσσ");
    REQUIRE(r.status == 0);
    CHECK_THAT(r.out, ContainsSubstring("u: "));
    CHECK_THAT(r.out, ContainsSubstring("v: "));
    CHECK_THAT(r.out, ContainsSubstring("w: "));
    CHECK_THAT(r.out, ContainsSubstring("states: 3"));

    CHECK(run_cli("fa pump " + det + " σ").status == 2);
    CHECK(run_cli("fa pump " + data_file("example21.json") + " σσσσ").status == 2);
}

TEST_CASE("decomposition and equivalence commands") {
    std::string step = scratch("step.json");
    REQUIRE(run_cli("lang decompose " + data_file("example21.json") + " -o " + step).status == 0);
    auto j = json_io::read_json_file(step);
    REQUIRE(j.contains("components"));
    CHECK(j.at("components").size() == 2);

    auto eq = run_cli("lang equiv " + step + " " + data_file("example21.json"));
    CHECK(eq.status == 0);
    CHECK(eq.out == "equivalent\n");
}

TEST_CASE("closure operation commands") {
    std::string step = scratch("ops-step.json");
    REQUIRE(run_cli("lang decompose " + data_file("example21.json") + " -o " + step).status == 0);

    CHECK(run_cli("lang op union " + step + " " + step + " -o " + scratch("u.json")).status == 0);
    CHECK(run_cli("lang equiv " + scratch("u.json") + " " + step).out == "equivalent\n");

    CHECK(run_cli("lang op intersect " + step + " " + step + " -o /dev/null").status == 0);
    CHECK(run_cli("lang op complement " + step + " -o " + scratch("c.json")).status == 0);
    CHECK(run_cli("lang op concat " + step + " " + step + " -o /dev/null").status == 0);
    CHECK(run_cli("lang op star " + step + " -o /dev/null").status == 0);

    auto sc = run_cli("lang op scalar a01 " + step + " -o " + scratch("s.json"));
    REQUIRE(sc.status == 0);
    auto ineq = run_cli("lang equiv " + scratch("s.json") + " " + step);
    CHECK(ineq.status == 1);
    CHECK_THAT(ineq.out, ContainsSubstring("not equivalent"));
    CHECK_THAT(ineq.out, ContainsSubstring("counterexample:"));

    // double complement is the identity
    CHECK(run_cli("lang op complement " + scratch("c.json") + " -o " + scratch("cc.json")).status ==
          0);
    CHECK(run_cli("lang equiv " + scratch("cc.json") + " " + step).out == "equivalent\n");

    CHECK(run_cli("lang op scalar " + step + " -o /dev/null").status == 2);
    CHECK(run_cli("lang op union " + step + " -o /dev/null").status == 2);
}

TEST_CASE("threshold commands emit crisp steps") {
    std::string step = scratch("cut-step.json");
    REQUIRE(run_cli("lang decompose " + data_file("example21.json") + " -o " + step).status == 0);

    std::string cut = scratch("cut.json");
    REQUIRE(run_cli("lang cut " + step + " a00 -o " + cut).status == 0);
    auto doc = json_io::step_from_json(json_io::read_json_file(cut), scratch_dir());
    REQUIRE(doc.step.components.size() == 1);
    CHECK(doc.step.components[0].value == doc.step.lattice->top());
    // value ≥ a00 holds exactly on the single-symbol word
    CHECK(classical::dfa_accepts(doc.step.components[0].dfa, {0}));
    CHECK(!classical::dfa_accepts(doc.step.components[0].dfa, {}));
    CHECK(!classical::dfa_accepts(doc.step.components[0].dfa, {0, 0}));

    std::string lvl = scratch("level.json");
    REQUIRE(run_cli("lang level " + step + " a01∨a10 -o " + lvl).status == 0);
    auto ldoc = json_io::step_from_json(json_io::read_json_file(lvl), scratch_dir());
    REQUIRE(ldoc.step.components.size() == 1);
    CHECK(!classical::dfa_accepts(ldoc.step.components[0].dfa, {0}));
    CHECK(classical::dfa_accepts(ldoc.step.components[0].dfa, {}));

    // a step document is required, not an automaton
    CHECK(run_cli("lang cut " + data_file("example21.json") + " a00 -o /dev/null").status == 2);
}

TEST_CASE("expression commands round trip through text") {
    std::string compiled = scratch("rx.json");
    auto r = run_cli("regex compile example21 σ \"[a00∨a01∨a10]σ + [a01∨a10]σ σ* + "
                     "[a01∨a10]_eps\" -o " +
                     compiled);
    REQUIRE(r.status == 0);
    CHECK(run_cli("lang equiv " + compiled + " " + data_file("example21.json")).out ==
          "equivalent\n");

    auto ex = run_cli("regex extract " + data_file("example21.json"));
    REQUIRE(ex.status == 0);
    std::string text = ex.out;
    if (!text.empty() && text.back() == '\n') text.pop_back();
    REQUIRE(!text.empty());

    // the printed expression compiles back to the same language
    std::string again = scratch("rx2.json");
    REQUIRE(run_cli("regex compile example21 σ \"" + text + "\" -o " + again).status == 0);
    CHECK(run_cli("lang equiv " + again + " " + data_file("example21.json")).out ==
          "equivalent\n");

    CHECK(run_cli("regex compile example21 σ \"[nosuch]σ\" -o /dev/null").status == 2);
    CHECK(run_cli("regex compile example21 σ \"σ +\" -o /dev/null").status == 2);
}

TEST_CASE("lattice references resolve relative to the document") {
    write_text(scratch("tiny-lattice.json"), R"({
      "name": "tiny",
      "elements": ["0", "1"],
      "order": [["0", "1"]],
      "ortho": {"0": "1", "1": "0"},
      "bottom": "0",
      "top": "1"
    })");
    write_text(scratch("tiny-fa.json"), R"({
      "kind": "lvfa",
      "lattice": "tiny-lattice.json",
      "states": ["s"],
      "alphabet": ["x"],
      "initial": {"s": "1"},
      "final": {"s": "1"},
      "transitions": [{"from": "s", "symbol": "x", "to": "s", "value": "1"}]
    })");
    auto r = run_cli("fa eval " + scratch("tiny-fa.json") + " xx");
    CHECK(r.status == 0);
    CHECK(r.out == "1\n");

    // documents written elsewhere stay self-contained: the reference is inlined
    std::string det = scratch("nested/tiny-det.json");
    fs::create_directories(scratch_dir() / "nested");
    REQUIRE(run_cli("fa determinize " + scratch("tiny-fa.json") + " -o " + det).status == 0);
    auto j = json_io::read_json_file(det);
    CHECK(j.at("lattice").is_object());
    CHECK(run_cli("fa eval " + det + " x").out == "1\n");
}

TEST_CASE("failure exit codes") {
    CHECK(run_cli("fa eval " + data_file("example21.json") + " ττ").status == 2);
    CHECK(run_cli("fa eval no-such-file.json σ").status == 2);
    CHECK(run_cli("fa determinize " + data_file("example21.json") + " --cap 1 -o /dev/null")
              .status == 3);
    CHECK(run_cli("fa eval " + data_file("example21.json") + " σσσσσσσσ").status == 3);
    CHECK(run_cli("fa eval " + data_file("example21.json") +
                  " σσσσσσσσ --max-word-len 10")
              .status == 0);
    CHECK(run_cli("bogus").status == 2);
    CHECK(run_cli("fa").status == 2);
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("fa --help").status == 0);
}
