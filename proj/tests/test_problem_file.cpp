#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/problem_file.hpp"

using namespace proxima;

namespace {

const char* kMinimal = R"(schema_version: 1
name: tiny
dimension: 2
sets:
  re:
    points:
      - [0, 0]
      - [0, 1]
  omega:
    segment: {from: [1, 0], to: [1, 1], samples: 3}
phi: "a2 - b2"
mapping:
  - when: "a2 - 0.5"
    value: ["0", "0"]
  - value: ["0", "a2"]
tolerances:
  eps_eq: 1e-10
assumptions:
  phi_complete: true
)";

int first_line(std::string_view text) {
    const auto r = validate_text(text);
    REQUIRE_FALSE(r.ok());
    return r.diagnostics.front().line;
}

std::string first_message(std::string_view text) {
    const auto r = validate_text(text);
    REQUIRE_FALSE(r.ok());
    return r.diagnostics.front().message;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("minimal file loads") {
    const auto inst = load_problem_text(kMinimal);
    CHECK(inst.name == "tiny");
    CHECK(inst.re.size() == 2);
    CHECK(inst.omega.size() == 3);
    CHECK(inst.omega[1] == Point{1.0, 0.5});
    CHECK(inst.eps_eq == 1e-10);
    CHECK_FALSE(inst.eps_range.has_value());
    CHECK(inst.assumptions.phi_complete);
    CHECK_FALSE(inst.assumptions.approx_phi_compact);
    CHECK(inst.F()({0.0, 1.0}) == Point{0.0, 0.0});
    CHECK(inst.F()({0.0, 0.0}) == Point{0.0, 0.0});
}

TEST_CASE("export round-trips every built-in instance") {
    for (const auto& e : builtin_corpus()) {
        CAPTURE(e.name);
        const auto text = export_problem(e.instance);
        const auto back = validate_text(text);
        REQUIRE(back.ok());
        CHECK(equivalent(*back.instance, e.instance));
        CHECK(export_problem(*back.instance) == text);
    }
}

TEST_CASE("round trip through a file") {
    const auto path = std::filesystem::temp_directory_path() / "proxima_ex_thm1.yaml";
    {
        std::ofstream out(path);
        out << export_problem(load_builtin("ex_thm1").instance);
    }
    CHECK(equivalent(load_problem_file(path), load_builtin("ex_thm1").instance));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_problem_file(path), FileError);
    CHECK_THROWS_AS(validate_file(path), FileError);
}

TEST_CASE("unbound variable is reported on its line") {
    const auto text = replace(kMinimal, "phi: \"a2 - b2\"", "phi: \"a2 - c3\"");
    CHECK(first_line(text) == 11);
    CHECK(first_message(text).find("c3") != std::string::npos);
}

TEST_CASE("empty set is rejected") {
    const auto text = replace(kMinimal, "    points:\n      - [0, 0]\n      - [0, 1]\n", "    points: []\n");
    CHECK(first_message(text).find("non-empty") != std::string::npos);
    CHECK(first_line(text) == 6);
    const auto zero = replace(kMinimal, "samples: 3", "samples: 0");
    CHECK(first_message(zero).find("non-empty") != std::string::npos);
}

TEST_CASE("dimension mismatches") {
    CHECK(first_line(replace(kMinimal, "- [0, 1]", "- [0, 1, 2]")) == 8);
    CHECK(first_line(replace(kMinimal, "value: [\"0\", \"a2\"]", "value: [\"a2\"]")) == 15);
    CHECK(first_message(replace(kMinimal, "dimension: 2", "dimension: 3")).find("coordinate") != std::string::npos);
}

TEST_CASE("schema violations") {
    CHECK(first_line(replace(kMinimal, "schema_version: 1", "schema_version: 2")) == 1);
    CHECK(first_line(replace(kMinimal, "name: tiny", "name: tiny\ncolour: red")) == 3);
    CHECK(first_message(replace(kMinimal, "phi: \"a2 - b2\"\n", "")).find("phi") != std::string::npos);
    CHECK(first_line(replace(kMinimal, "eps_eq: 1e-10", "eps_eq: 1/2")) == 17);
    CHECK(first_line(replace(kMinimal, "eps_eq: 1e-10", "eps_eq: -1")) == 17);
    CHECK(first_line(replace(kMinimal, "phi_complete: true", "phi_complete: yes")) == 19);
    CHECK(first_line(replace(kMinimal, "- [0, 1]", "- [0, 0]")) == 6);  // duplicate point
    CHECK(first_message(replace(kMinimal, "    segment: {from: [1, 0], to: [1, 1], samples: 3}",
                                "    segment: {from: [1, 0], to: [1, 1], samples: 3}\n    points: [[1, 0]]"))
              .find("exactly one") != std::string::npos);
}

TEST_CASE("expression parse errors carry the line and offset") {
    const auto text = replace(kMinimal, "when: \"a2 - 0.5\"", "when: \"a2 - - \"");
    CHECK(first_line(text) == 13);
    CHECK(first_message(text).find("offset") != std::string::npos);
}

TEST_CASE("YAML syntax errors are diagnostics") {
    const auto r = validate_text("name: [unclosed\n");
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics.front().message.find("YAML") != std::string::npos);
    CHECK_THROWS_AS(load_problem_text("- 1\n- 2\n"), SchemaError);
}

TEST_CASE("several diagnostics are collected") {
    auto text = replace(kMinimal, "phi: \"a2 - b2\"", "phi: \"a2 - c3\"");
    text = replace(text, "eps_eq: 1e-10", "eps_eq: abc");
    CHECK(validate_text(text).diagnostics.size() == 2);
}
