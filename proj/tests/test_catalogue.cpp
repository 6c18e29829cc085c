#include <doctest.h>

#include <cctype>
#include <set>

#include "fairmodel/catalogue.hpp"
#include "fairmodel/placeholders.hpp"
#include "fairmodel/validator.hpp"

using namespace fairmodel;

namespace {

std::set<std::string> names_of(const std::vector<const PatternCard*>& cards) {
  std::set<std::string> out;
  for (const PatternCard* c : cards) out.insert(c->name);
  return out;
}

const std::string kMinimalCard = R"(
  pattern tiny {
    title "Tiny"
    category design
    dimensions [social]
    summary "s"
    applicability "a"
    content "c"
    archetype {
      dimension social
      value root "Root of <Thing>" in social
      activity act "Act" { operationalizes root }
    }
  }
)";

std::string wrap(const std::string& body) { return "catalogue \"t\" version \"0\" {" + body + "}\n"; }

}  // namespace

TEST_CASE("builtin catalogue has the six published classifications") {
  const Catalogue& cat = builtin_catalogue();
  REQUIRE(cat.cards.size() == 6);
  struct Row {
    const char* name;
    Stage primary;
    std::optional<Stage> secondary;
    std::set<std::string> dimensions;
  };
  const std::set<std::string> all = {"environmental", "economic", "social", "personal", "technical"};
  const std::vector<Row> table = {
      {"distributive-justice", Stage::Governance, Stage::Design, {"economic", "social"}},
      {"substantial-freedom", Stage::Governance, Stage::Implementation, {"personal"}},
      {"rule-acceptance", Stage::Adoption, std::nullopt, {"social"}},
      {"transparency", Stage::Adoption, Stage::Implementation, all},
      {"violation-anticipation", Stage::Implementation, Stage::Evolution, all},
      {"co-evolution", Stage::Evolution, Stage::Governance, {"social", "environmental", "economic"}},
  };
  for (const Row& row : table) {
    CAPTURE(row.name);
    const PatternCard* card = cat.find(row.name);
    REQUIRE(card != nullptr);
    CHECK(card->category_primary == row.primary);
    CHECK(card->category_secondary == row.secondary);
    CHECK(std::set<std::string>(card->dimensions.begin(), card->dimensions.end()) == row.dimensions);
  }
}

TEST_CASE("builtin stages cover the whole cycle") {
  std::set<Stage> covered;
  for (const PatternCard& card : builtin_catalogue().cards) {
    covered.insert(card.category_primary);
    if (card.category_secondary) covered.insert(*card.category_secondary);
  }
  CHECK(covered.size() == 5);
  for (Stage s : kAllStages) {
    CHECK(std::any_of(builtin_catalogue().cards.begin(), builtin_catalogue().cards.end(),
                      [&](const PatternCard& c) { return c.in_stage(s); }));
  }
}

TEST_CASE("builtin archetypes validate without errors") {
  for (const PatternCard& card : builtin_catalogue().cards) {
    CAPTURE(card.name);
    std::map<std::string, std::string, std::less<>> identity;
    for (const std::string& w : card.placeholders()) identity[w] = w;
    Model m = card.archetype;
    Model substituted(m.name());
    for (Element e : m.elements()) {
      e.name = substitute_placeholders(e.name, identity);
      substituted = add_element(std::move(substituted), e);
    }
    for (const Link& l : m.links()) substituted = append_unchecked_link(std::move(substituted), l);
    CHECK_FALSE(has_errors(validate(substituted)));
  }
}

TEST_CASE("builtin archetype contents") {
  const Catalogue& cat = builtin_catalogue();
  CHECK(cat.find("distributive-justice")->root().name == "Fair distribution of <Resource>");
  CHECK(cat.find("distributive-justice")->placeholders() == std::vector<std::string>{"Resource"});
  const PatternCard* sf = cat.find("substantial-freedom");
  CHECK(sf->root().kind == ElementKind::Obstacle);
  CHECK(sf->archetype.find("hdi")->kind == ElementKind::Indicator);
  CHECK(sf->archetype.find("gem")->kind == ElementKind::Indicator);
  CHECK(sf->archetype.find("analyse_achievement_indicators")->attribution == Attribution::System);
  const PatternCard* ra = cat.find("rule-acceptance");
  std::size_t milestones = 0;
  for (const Element& e : ra->archetype.elements()) milestones += e.milestone();
  CHECK(milestones == 1);
  CHECK(ra->discussion.has_value());
  const PatternCard* tr = cat.find("transparency");
  for (const char* id : {"audit_process", "inspect_software", "publish_evidence"}) {
    CHECK(tr->archetype.find(id)->attribution == Attribution::System);
  }
  const PatternCard* va = cat.find("violation-anticipation");
  CHECK(va->archetype.find("simulate_load")->attribution == Attribution::System);
  CHECK(va->archetype.find("load")->attribution == Attribution::System);
  CHECK(va->archetype.find("load")->kind == ElementKind::Indicator);
  CHECK(cat.find("co-evolution")->placeholders().empty());
}

TEST_CASE("census of the builtin archetypes") {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> census = {
      {"distributive-justice", {10, 9}}, {"substantial-freedom", {6, 5}}, {"rule-acceptance", {8, 7}},
      {"transparency", {7, 6}},          {"violation-anticipation", {8, 7}}, {"co-evolution", {6, 6}},
  };
  for (const auto& [name, counts] : census) {
    CAPTURE(name);
    const PatternCard* card = builtin_catalogue().find(name);
    CHECK(card->census_elements() == counts.first);
    CHECK(card->census_links() == counts.second);
  }
}

TEST_CASE("related names and dangling notices") {
  const Catalogue& cat = builtin_catalogue();
  auto rel = [&](const char* n) {
    const auto& r = cat.find(n)->related;
    return std::set<std::string>(r.begin(), r.end());
  };
  CHECK(rel("distributive-justice").count("substantial-freedom") == 1);
  CHECK(rel("substantial-freedom").count("distributive-justice") == 1);
  CHECK(rel("substantial-freedom").count("co-evolution") == 1);
  auto result = load_catalogue(builtin_catalogue_text());
  REQUIRE(result.ok());
  std::set<std::string> dangling;
  for (const auto& n : result.notices) dangling.insert(n.related);
  CHECK(dangling == std::set<std::string>{"participatory-design", "fair-rule"});
}

TEST_CASE("serialize then load gives the same catalogue") {
  std::string text = serialize_catalogue(builtin_catalogue());
  auto result = load_catalogue(text);
  REQUIRE(result.ok());
  CHECK(catalogues_equal(*result.catalogue, builtin_catalogue()));
  CHECK(serialize_catalogue(*result.catalogue) == text);
}

TEST_CASE("load errors") {
  REQUIRE(load_catalogue(wrap(kMinimalCard)).ok());

  SUBCASE("unknown category") {
    std::string body = kMinimalCard;
    body.replace(body.find("category design"), 15, "category maintenance");
    auto r = load_catalogue(wrap(body));
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].code == CatalogueErrorCode::UnknownCategory);
  }
  SUBCASE("refinement cycle in the archetype") {
    std::string body = kMinimalCard;
    body.replace(body.find("activity act"), 0,
                 "value a \"A\" in social { refines b }\n      value b \"B\" in social { refines a }\n      ");
    auto r = load_catalogue(wrap(body));
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors[0].code == CatalogueErrorCode::InvalidArchetype);
    bool cycle = false;
    for (const auto& d : r.errors[0].diagnostics) cycle |= d.code == DiagnosticCode::E003;
    CHECK(cycle);
    CHECK(format_catalogue_error(r.errors[0]).find("E003") != std::string::npos);
  }
  SUBCASE("missing field") {
    std::string body = kMinimalCard;
    body.erase(body.find("content \"c\""), 11);
    auto r = load_catalogue(wrap(body));
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].code == CatalogueErrorCode::MissingField);
  }
  SUBCASE("non-canonical dimension") {
    std::string body = kMinimalCard;
    body.replace(body.find("[social]"), 8, "[socio-cultural]");
    auto r = load_catalogue(wrap(body));
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].code == CatalogueErrorCode::UnknownDimension);
  }
  SUBCASE("duplicate pattern") {
    auto r = load_catalogue(wrap(kMinimalCard + kMinimalCard));
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].code == CatalogueErrorCode::DuplicatePattern);
  }
  SUBCASE("syntax error") {
    auto r = load_catalogue("catalogue \"t\" version { }");
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].code == CatalogueErrorCode::Parse);
  }
}

TEST_CASE("bracketed secondary category") {
  std::string body = kMinimalCard;
  body.replace(body.find("category design"), 15, "category design [adoption]");
  auto r = load_catalogue(wrap(body));
  REQUIRE(r.ok());
  CHECK(r.catalogue->cards[0].category_secondary == Stage::Adoption);
}

TEST_CASE("search") {
  const Catalogue& cat = builtin_catalogue();

  SUBCASE("empty query returns every card by name") {
    auto all = search(cat, {});
    REQUIRE(all.size() == 6);
    CHECK(std::is_sorted(all.begin(), all.end(), [](auto* a, auto* b) { return a->name < b->name; }));
  }
  SUBCASE("adoption") {
    CHECK(names_of(search(cat, {Stage::Adoption, std::nullopt, std::nullopt})) ==
          std::set<std::string>{"rule-acceptance", "transparency"});
  }
  SUBCASE("no keyword match") { CHECK(search(cat, {std::nullopt, std::nullopt, "zzz"}).empty()); }
  SUBCASE("dimension filter equals a scan of the dimension lists") {
    for (const char* dim : {"personal", "social", "economic", "environmental", "technical"}) {
      std::set<std::string> expected;
      for (const PatternCard& c : cat.cards) {
        if (std::find(c.dimensions.begin(), c.dimensions.end(), dim) != c.dimensions.end()) expected.insert(c.name);
      }
      CHECK(names_of(search(cat, {std::nullopt, std::string(dim), std::nullopt})) == expected);
    }
    CHECK(names_of(search(cat, {std::nullopt, std::string("personal"), std::nullopt})) ==
          std::set<std::string>{"substantial-freedom", "transparency", "violation-anticipation"});
  }
  SUBCASE("filters commute") {
    for (Stage s : kAllStages) {
      for (const char* dim : {"personal", "social", "economic"}) {
        auto both = names_of(search(cat, {s, std::string(dim), std::nullopt}));
        std::set<std::string> by_stage = names_of(search(cat, {s, std::nullopt, std::nullopt}));
        std::set<std::string> by_dim = names_of(search(cat, {std::nullopt, std::string(dim), std::nullopt}));
        std::set<std::string> inter;
        std::set_intersection(by_stage.begin(), by_stage.end(), by_dim.begin(), by_dim.end(),
                              std::inserter(inter, inter.end()));
        CHECK(both == inter);
      }
    }
  }
  SUBCASE("keyword ranking by hit count then name") {
    auto count = [](std::string hay, std::string needle) {
      for (auto* s : {&hay, &needle}) {
        for (char& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      std::size_t n = 0;
      for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
      return n;
    };
    for (const char* word : {"fair", "COMMUNITY", "evidence", "value"}) {
      CAPTURE(word);
      std::vector<std::pair<std::size_t, std::string>> expected;
      for (const PatternCard& c : cat.cards) {
        std::size_t n = count(c.title, word) + count(c.summary, word) + count(c.content, word);
        if (n > 0) expected.emplace_back(n, c.name);
      }
      std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      std::vector<std::string> expected_names;
      for (const auto& e : expected) expected_names.push_back(e.second);
      std::vector<std::string> actual;
      for (const PatternCard* c : search(cat, {std::nullopt, std::nullopt, std::string(word)})) actual.push_back(c->name);
      CHECK(actual == expected_names);
    }
    CHECK_FALSE(search(cat, {std::nullopt, std::nullopt, "fair"}).empty());
  }
}

TEST_CASE("placeholders") {
  CHECK(placeholders_in("Fair <Resource> for <Community> and <Resource>") ==
        std::vector<std::string>{"Resource", "Community"});
  CHECK(placeholders_in("<lower> <1x> <>").empty());
  CHECK(substitute_placeholders("<A> and <B>", std::map<std::string, std::string, std::less<>>{{"A", "x"}}) ==
        "x and <B>");
}
