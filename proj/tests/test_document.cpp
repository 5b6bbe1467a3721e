#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfk/cli.hpp"
#include "mfk/document.hpp"

using namespace mfk;

#ifndef MFK_SOURCE_DIR
#define MFK_SOURCE_DIR "."
#endif

namespace {

const char* kSample = R"(# sample document
vars: x y z
potential "w": x*y - z^3
mf "M" potential "w" {
  phi: [[x, z], [z^2, y]]
  psi: [[y, -z], [-z^2, x]]
}
structure "q" on "M" {
  kind: twisted; sign: +1;
  b0: [[0, 1], [1, 0]];
  b1: [[0, 1], [1, 0]]
}
morphism "id" from "M" to "M" degree even {
  S: [[1, 0], [0, 1]]
  T: [[1, 0], [0, 1]]
}
)";

}  // namespace

TEST_CASE("documents parse, resolve names and round-trip") {
    InputDocument doc = parse_document(kSample);
    CHECK(doc.vars->names() == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(doc.find_mf("M"));
    CHECK(doc.find_mf("M")->mf.rank() == 2);
    REQUIRE(doc.find_structure("q"));
    CHECK(doc.find_structure("q")->structure.kind == StructureKind::Twisted);
    REQUIRE(doc.find_morphism("id"));

    std::string emitted = emit_document(doc);
    InputDocument again = parse_document(emitted);
    CHECK(again == doc);
    // Emission is stable under a second pass.
    CHECK(emit_document(again) == emitted);
}

TEST_CASE("default potential binds unnamed factorizations") {
    const char* text = R"(vars: x y
potential: x*y
mf "M" {
  phi: [[x]]
  psi: [[y]]
}
)";
    InputDocument doc = parse_document(text);
    REQUIRE(doc.find_mf("M"));
    CHECK(doc.find_mf("M")->mf.potential == parse_polynomial("x*y", doc.vars));
    InputDocument again = parse_document(emit_document(doc));
    CHECK(again == doc);
}

TEST_CASE("parse errors carry positions and reasons") {
    // Row-length mismatch.
    const char* bad_rows = R"(vars: x y
potential "w": x*y
mf "M" potential "w" {
  phi: [[x, 0], [y]]
  psi: [[y]]
}
)";
    CHECK_THROWS_WITH_AS(parse_document(bad_rows),
                         doctest::Contains("row length mismatch"), ParseError);

    // Undefined structure host.
    const char* bad_host = R"(vars: x y
potential "w": x*y
structure "b" on "N" { kind: untwisted; sign: +1; b0: [[1]]; b1: [[1]] }
)";
    CHECK_THROWS_WITH_AS(parse_document(bad_host), doctest::Contains("not a declared mf"),
                         ParseError);

    // Duplicate names.
    const char* dup = R"(vars: x
potential "w": x^2
mf "M" potential "w" { phi: [[x]] psi: [[x]] }
mf "M" potential "w" { phi: [[x]] psi: [[x]] }
)";
    CHECK_THROWS_WITH_AS(parse_document(dup), doctest::Contains("duplicate"), ParseError);

    // Unknown variable inside a polynomial.
    const char* bad_var = R"(vars: x
potential "w": x*q
)";
    CHECK_THROWS_AS(parse_document(bad_var), ParseError);

    try {
        parse_document(bad_rows);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("bundled example documents round-trip") {
    for (const auto& name : example_names()) {
        std::string text = example_document(name);
        InputDocument doc = parse_document(text);
        CHECK(parse_document(emit_document(doc)) == doc);
    }
}

TEST_CASE("data files parse and round-trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(MFK_SOURCE_DIR) / "data";
    REQUIRE(fs::exists(dir));
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".mf") continue;
        ++count;
        InputDocument doc = parse_document_file(entry.path().string());
        CHECK(parse_document(emit_document(doc)) == doc);
    }
    CHECK(count >= 4);
}

TEST_CASE("cli runs commands with deterministic records output") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "mfk_cli_test.mf";
    {
        std::ofstream out(tmp);
        out << example_document("node_rank2");
    }

    CliRequest req;
    req.command = "ext";
    req.input_path = tmp.string();
    req.source = "M";
    req.format = "records";
    std::ostringstream out1, out2, err;
    CHECK(run_cli(req, out1, err) == 0);
    CHECK(run_cli(req, out2, err) == 0);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str().find("\"dims\":[2,2]") != std::string::npos);

    // verify exit codes: valid -> 0, broken mf -> 1.
    CliRequest vreq;
    vreq.command = "verify";
    vreq.input_path = tmp.string();
    vreq.name = "M";
    std::ostringstream vout;
    CHECK(run_cli(vreq, vout, err) == 0);

    fs::path bad = fs::temp_directory_path() / "mfk_cli_bad.mf";
    {
        std::ofstream out(bad);
        out << "vars: x y\npotential \"w\": x*y\n"
            << "mf \"M\" potential \"w\" { phi: [[x]] psi: [[x]] }\n";
    }
    CliRequest breq;
    breq.command = "verify";
    breq.input_path = bad.string();
    breq.name = "M";
    std::ostringstream bout;
    CHECK(run_cli(breq, bout, err) == 1);

    // usage error -> 2
    CliRequest ureq;
    ureq.command = "verify";
    ureq.input_path = tmp.string();
    ureq.name = "unknown";
    CHECK(run_cli(ureq, bout, err) == 2);

    // budget exhaustion -> 3
    CliRequest xreq;
    xreq.command = "ext";
    xreq.input_path = tmp.string();
    xreq.source = "M";
    xreq.budget = 2;
    CHECK(run_cli(xreq, bout, err) == 3);

    fs::remove(tmp);
    fs::remove(bad);
}

TEST_CASE("cli emits parseable factorizations from knorrer") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "mfk_cli_kn.mf";
    {
        std::ofstream out(tmp);
        out << example_document("cusp");
    }
    CliRequest req;
    req.command = "knorrer";
    req.input_path = tmp.string();
    req.name = "M";
    req.new_vars = {"u", "v"};
    std::ostringstream out, err;
    REQUIRE(run_cli(req, out, err) == 0);
    std::string text = out.str();
    // Skip the provenance comment, then parse the document.
    InputDocument doc = parse_document(text.substr(text.find("vars:")));
    REQUIRE(doc.find_mf("M_th"));
    CHECK(doc.find_mf("M_th")->mf.rank() == 2);
    CHECK(verify(doc.find_mf("M_th")->mf).valid());
    fs::remove(tmp);
}
