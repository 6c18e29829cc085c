#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "fairmodel/dsl.hpp"
#include "fairmodel/validator.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace fairmodel;

TEST_CASE("empty model") {
  auto r = parse(R"(model "m" {})");
  REQUIRE(r.ok());
  CHECK(r.model->name() == "m");
  CHECK(r.model->elements().empty());
  CHECK(serialize(*r.model) == "model \"m\" {\n}\n");
}

TEST_CASE("undeclared dimension parses and is left to the validator") {
  auto r = parse(R"(model "m" { value v "Equitable access to care" in social })");
  REQUIRE(r.ok());
  auto diags = validate(*r.model);
  REQUIRE(diags.size() >= 1);
  CHECK(diags.front().code == DiagnosticCode::E001);
}

TEST_CASE("forward references resolve at end of scope") {
  auto r = parse(R"(model "m" {
    obstacle o "O" { obstructs v }
    dimension social
    value v "V" in social
  })");
  REQUIRE(r.ok());
  CHECK(r.model->links().size() == 1);
  CHECK(r.model->elements()[0].kind == ElementKind::Obstacle);
}

TEST_CASE("elements and links carry spans") {
  auto r = parse("model \"m\" {\n  dimension social\n  value v \"V\" in social\n  activity a \"A\" {\n    operationalizes v\n  }\n}\n",
                 "spans.fair");
  REQUIRE(r.ok());
  const Element* v = r.model->find("v");
  REQUIRE(v->span);
  CHECK(v->span->file == "spans.fair");
  CHECK(v->span->line_start == 3);
  CHECK(v->span->col_start == 3);
  REQUIRE(r.model->links()[0].span);
  CHECK(r.model->links()[0].span->line_start == 5);
  CHECK(r.model->links()[0].span->col_start == 5);
}

TEST_CASE("all clauses") {
  auto r = parse(R"(model "m" {
    dimension social
    value v "V" in social @is pattern "transparency" milestone
    obstacle o "O" @env accepted reduce { obstructs v }
    indicator i "I" target "< 1" { measures v }
  })");
  REQUIRE(r.ok());
  const Element* v = r.model->find("v");
  CHECK(v->attribution == Attribution::System);
  CHECK(v->milestone());
  CHECK(*v->annotation("pattern") == "transparency");
  CHECK(*r.model->find("o")->annotation("accepted") == "reduce");
  CHECK(r.model->find("o")->attribution == Attribution::Environment);
  CHECK(*r.model->find("i")->annotation("target") == "< 1");
}

TEST_CASE("keywords are contextual") {
  auto r = parse(R"(model "m" { goal target "T"  goal refines "R" { refines target } })");
  REQUIRE(r.ok());
  CHECK(r.model->has_link(LinkKind::Refines, "refines", "target"));
}

TEST_CASE("string escapes, comments, CRLF and BOM") {
  std::string text = "\xEF\xBB\xBFmodel \"q\\\"uote\\\\d\" {  # trailing comment\r\n  goal g \"line\r\nbreak\"\r\n}\r\n";
  auto r = parse(text);
  REQUIRE(r.ok());
  CHECK(r.model->name() == "q\"uote\\d");
  CHECK(r.model->find("g")->name == "line\nbreak");
  CHECK(serialize(*r.model).find('\r') == std::string::npos);
}

TEST_CASE("quote escapes only quote and backslash") {
  CHECK(quote("a\"b\\c") == "\"a\\\"b\\\\c\"");
  CHECK(quote("é\n") == "\"é\n\"");
}

TEST_CASE("parse errors report position, expectation and lexeme") {
  auto r = parse("model \"m\" {\n  goal 9bad \"x\"\n}\n", "e.fair");
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.errors.size() == 1);
  const ParseError& e = r.errors[0];
  CHECK(e.span.line_start == 2);
  CHECK(e.span.col_start == 8);
  CHECK(e.found.find("9bad") != std::string::npos);
  std::string line = format_parse_error(e);
  CHECK(line.rfind("e.fair:2:8: error: ", 0) == 0);
}

TEST_CASE("field misuse is a parse error") {
  CHECK_FALSE(parse(R"(model "m" { goal g "G" in social })").ok());
  CHECK_FALSE(parse(R"(model "m" { value v "V" accepted avoid })").ok());
  CHECK_FALSE(parse(R"(model "m" { goal g "G" milestone milestone })").ok());
  CHECK_FALSE(parse(R"(model "m" { value v "V" { resolves v } })").ok());
  CHECK_FALSE(parse(R"(model "m" { goal g "G" goal g "H" })").ok());
  CHECK_FALSE(parse(R"(model "m" { fragment f { fragment g { } } })").ok());
  CHECK_FALSE(parse(R"(model "m" { fragment f { } fragment f { } })").ok());
  CHECK_FALSE(parse(R"(model "m" { goal a "A" { refines b refines b } goal b "B" })").ok());
}

TEST_CASE("error recovery reports every independent error") {
  const std::vector<std::string> bad_items = {
      "goal Bad \"x\"",
      "value v2 \"V\" in",
      "activity a3 { operationalizes x }",
      "obstacle o4 \"O\" accepted",
      "indicator i5 \"I\" target 7",
      "frobnicate",
      "goal g7 \"G\" { refines }",
  };
  for (std::size_t k = 1; k <= bad_items.size(); ++k) {
    std::string text = "model \"m\" {\n  dimension social\n";
    for (std::size_t i = 0; i < k; ++i) {
      text += "  goal ok" + std::to_string(i) + " \"fine\"\n";
      text += "  " + bad_items[i] + "\n";
    }
    text += "  goal tail \"still parsed\"\n}\n";
    auto r = parse(text);
    CAPTURE(text);
    CHECK_FALSE(r.ok());
    CHECK(r.errors.size() >= k);
  }
}

TEST_CASE("unterminated input") {
  auto r = parse("model \"m\" {\n  goal g \"open");
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.errors.empty());
  CHECK_FALSE(parse("").ok());
  CHECK_FALSE(parse("model \"m\" { } extra").ok());
}

TEST_CASE("serialization layout") {
  auto r = parse(R"(model "m" { activity a "A" @is { operationalizes v } dimension social value v "V" in social
                   fragment f { goal g "G" } })");
  REQUIRE(r.ok());
  CHECK(serialize(*r.model) ==
        "model \"m\" {\n"
        "  dimension social\n"
        "\n"
        "  activity a \"A\" @is {\n"
        "    operationalizes v\n"
        "  }\n"
        "  value v \"V\" in social\n"
        "\n"
        "  fragment f {\n"
        "    goal g \"G\"\n"
        "  }\n"
        "}\n");
}

TEST_CASE("randomized round trip") {
  std::mt19937 rng(20240611);
  int failures = 0;
  std::size_t elements = 0, links = 0, fragments = 0, dangling = 0;
  for (int i = 0; i < 500; ++i) {
    Model m = oracle::random_model(rng);
    elements += m.elements().size();
    links += m.links().size();
    fragments += m.fragments().size();
    for (const Link& l : m.links()) dangling += l.target == "ghost";
    std::string text = serialize(m);
    auto r = parse(text);
    if (!r.ok() || !structurally_equal(*r.model, m) || serialize(*r.model) != text) {
      ++failures;
      if (failures == 1) {
        CAPTURE(text);
        for (const auto& e : r.errors) MESSAGE(format_parse_error(e));
        CHECK(false);
      }
    }
  }
  CHECK(failures == 0);
  MESSAGE("generated " << elements << " elements, " << links << " links, " << fragments << " fragments");
  // The generator must not degenerate into trivial models.
  CHECK(elements > 3000);
  CHECK(links > 2000);
  CHECK(fragments > 300);
  CHECK(dangling > 50);
}

TEST_CASE("corpus census matches the sidecar files") {
  for (const std::string& name : corpus::fixtures()) {
    CAPTURE(name);
    std::map<std::string, std::size_t> expected;
    std::istringstream in(corpus::read(corpus::dir() / (name + ".expect")));
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string key;
      std::size_t count = 0;
      fields >> key >> count;
      expected[key] = count;
    }
    Model m = corpus::load(name);
    std::map<std::string, std::size_t> actual;
    for (const Element& e : m.elements()) ++actual[std::string(keyword(e.kind))];
    actual["links"] = m.links().size();
    actual["fragments"] = m.fragments().size();
    for (auto it = actual.begin(); it != actual.end();) {
      it = (it->second == 0 && expected.count(it->first) == 0) ? actual.erase(it) : std::next(it);
    }
    for (auto it = expected.begin(); it != expected.end();) {
      it = (it->second == 0 && actual.count(it->first) == 0) ? expected.erase(it) : std::next(it);
    }
    CHECK(actual == expected);
  }
}

TEST_CASE("fmt is idempotent on the corpus") {
  for (const std::string& name : corpus::fixtures()) {
    std::string once = serialize(corpus::load(name));
    auto again = parse(once);
    REQUIRE(again.ok());
    CHECK(serialize(*again.model) == once);
  }
}
