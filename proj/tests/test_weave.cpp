#include <doctest.h>

#include <set>

#include "fairmodel/dsl.hpp"
#include "fairmodel/validator.hpp"
#include "fairmodel/weave.hpp"
#include "support/corpus.hpp"

using namespace fairmodel;

namespace {

WeaveErrorCode weave_error(auto&& fn) {
  try {
    fn();
  } catch (const WeaveError& e) {
    return e.code();
  }
  FAIL("expected a WeaveError");
  return WeaveErrorCode::UnknownPattern;
}

Model anchor_model() {
  auto r = parse(R"(model "m" {
    dimension social
    value anchor "Anchor" in social
    goal g "Goal"
    activity act "Act" { operationalizes anchor }
  })");
  REQUIRE(r.ok());
  return *r.model;
}

/// A binding for every placeholder of the card.
std::vector<Binding> bindings_for(const PatternCard& card) {
  std::vector<Binding> out;
  for (const std::string& w : card.placeholders()) out.push_back({w, "the " + w});
  return out;
}

std::multiset<std::pair<DiagnosticCode, std::vector<std::string>>> error_set(const Model& m) {
  std::multiset<std::pair<DiagnosticCode, std::vector<std::string>>> out;
  for (const auto& d : validate(m)) {
    if (d.severity == Severity::Error) out.emplace(d.code, d.elements);
  }
  return out;
}

}  // namespace

TEST_CASE("parse_binding") {
  Binding b = parse_binding("Resource=vaccines=doses");
  CHECK(b.placeholder == "Resource");
  CHECK(b.replacement == "vaccines=doses");
  CHECK(parse_binding("<Load>=x").placeholder == "Load");
  CHECK(weave_error([] { parse_binding("novalue"); }) == WeaveErrorCode::InvalidBinding);
  CHECK(weave_error([] { parse_binding("lower=x"); }) == WeaveErrorCode::InvalidBinding);
}

TEST_CASE("instantiate") {
  const PatternCard& dj = *builtin_catalogue().find("distributive-justice");

  SUBCASE("vaccines") {
    std::vector<Binding> b = {{"Resource", "vaccines"}};
    Model inst = instantiate(dj, b);
    CHECK(inst.elements().size() == dj.archetype.elements().size());
    CHECK(inst.find("fair_distribution")->name == "Fair distribution of vaccines");
    for (const Element& e : inst.elements()) {
      CHECK(e.name.find('<') == std::string::npos);
      if (e.kind != ElementKind::Dimension) CHECK(*e.annotation("pattern") == "distributive-justice");
    }
    CHECK(inst.links().size() == dj.archetype.links().size());
  }
  SUBCASE("missing binding") {
    try {
      instantiate(dj, {});
      FAIL("no throw");
    } catch (const WeaveError& e) {
      CHECK(e.code() == WeaveErrorCode::MissingBinding);
      CHECK(e.subjects() == std::vector<std::string>{"Resource"});
    }
  }
  SUBCASE("unknown placeholder") {
    std::vector<Binding> b = {{"Resource", "x"}, {"Colour", "y"}};
    CHECK(weave_error([&] { instantiate(dj, b); }) == WeaveErrorCode::UnknownPlaceholder);
  }
  SUBCASE("bound twice") {
    std::vector<Binding> b = {{"Resource", "x"}, {"Resource", "y"}};
    CHECK(weave_error([&] { instantiate(dj, b); }) == WeaveErrorCode::InvalidBinding);
  }
}

TEST_CASE("full weave of every builtin card adds the census") {
  for (const PatternCard& card : builtin_catalogue().cards) {
    CAPTURE(card.name);
    Model before = anchor_model();
    WeaveRequest req;
    req.source = card.name;
    req.anchor = card.root().kind == ElementKind::Obstacle ? "g" : "anchor";
    req.bindings = bindings_for(card);
    req.id_prefix = "p";
    Model after = apply(before, req, builtin_catalogue());
    std::size_t before_nd = 0, after_nd = 0;
    for (const Element& e : before.elements()) before_nd += e.kind != ElementKind::Dimension;
    for (const Element& e : after.elements()) after_nd += e.kind != ElementKind::Dimension;
    CHECK(after_nd - before_nd == card.census_elements());
    CHECK(after.links().size() - before.links().size() == card.census_links() + 1);
    for (const Element& e : after.elements()) {
      if (e.id.rfind("p__", 0) == 0) CHECK(*e.annotation("pattern") == card.name);
    }
    CHECK(error_set(after) == error_set(before));
  }
}

TEST_CASE("attachment kind") {
  Model m = anchor_model();
  WeaveRequest req;
  req.source = "substantial-freedom";
  req.anchor = "anchor";
  req.bindings = {{"Community", "members"}};
  req.id_prefix = "sf";
  Model woven = apply(m, req, builtin_catalogue());
  CHECK(woven.has_link(LinkKind::Obstructs, "sf__personal_fulfilment_limited", "anchor"));

  req.source = "co-evolution";
  req.bindings.clear();
  req.id_prefix = "co";
  CHECK(apply(m, req, builtin_catalogue()).has_link(LinkKind::Refines, "co__synergies_identified", "anchor"));

  req.attach_kind = LinkKind::Measures;
  CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::IncompatibleEndpoints);
  req.attach_kind = LinkKind::Refines;
  req.anchor = "act";
  CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::IncompatibleEndpoints);
}

TEST_CASE("apply errors") {
  Model m = anchor_model();
  WeaveRequest req;
  req.source = "co-evolution";
  req.anchor = "anchor";
  req.id_prefix = "co";

  SUBCASE("unknown pattern") {
    req.source = "fair-rule";
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::UnknownPattern);
  }
  SUBCASE("unknown anchor") {
    req.anchor = "nowhere";
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::UnknownAnchor);
  }
  SUBCASE("prefix reuse") {
    Model once = apply(m, req, builtin_catalogue());
    CHECK(weave_error([&] { apply(once, req, builtin_catalogue()); }) == WeaveErrorCode::PrefixCollision);
  }
  SUBCASE("bad prefix") {
    req.id_prefix = "Bad Prefix";
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::InvalidPrefix);
  }
  SUBCASE("selection") {
    req.selection = std::vector<std::string>{"synergies_identified", "nope"};
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::UnknownSelection);
    req.selection = std::vector<std::string>{"environmental_progress"};
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::SelectionNotClosed);
    req.selection = std::vector<std::string>{"synergies_identified", "co_innovate"};
    CHECK(weave_error([&] { apply(m, req, builtin_catalogue()); }) == WeaveErrorCode::SelectionNotClosed);
    req.selection = std::vector<std::string>{"synergies_identified", "assess_imbalances"};
    Model woven = apply(m, req, builtin_catalogue());
    CHECK(woven.elements().size() == m.elements().size() + 2);
    CHECK(woven.links().size() == m.links().size() + 2);
  }
}

TEST_CASE("same card twice under distinct prefixes") {
  WeaveRequest req;
  req.source = "transparency";
  req.anchor = "anchor";
  req.bindings = {{"Decision", "d"}};
  req.id_prefix = "one";
  Model once = apply(anchor_model(), req, builtin_catalogue());
  req.id_prefix = "two";
  Model twice = apply(once, req, builtin_catalogue());
  std::set<std::string> a, b;
  for (const Element& e : twice.elements()) {
    if (e.id.rfind("one__", 0) == 0) a.insert(e.id.substr(5));
    if (e.id.rfind("two__", 0) == 0) b.insert(e.id.substr(5));
  }
  CHECK(a.size() == 7);
  CHECK(a == b);
}

TEST_CASE("weaving a local fragment") {
  auto r = parse(R"(model "m" {
    dimension social
    value anchor "Anchor" in social { details phase }
    activity act "Act" { operationalizes anchor }
    fragment phase {
      dimension technical
      value step "Step for <Who>" in technical
      activity run "Run" { operationalizes step }
    }
  })");
  REQUIRE(r.ok());
  WeaveRequest req;
  req.source = "phase";
  req.anchor = "anchor";
  req.bindings = {{"Who", "everyone"}};
  req.id_prefix = "ph";
  Model woven = apply(*r.model, req, builtin_catalogue());
  CHECK(woven.find("ph__step")->name == "Step for everyone");
  CHECK(*woven.find("ph__step")->annotation("pattern") == "phase");
  CHECK(woven.find("technical") != nullptr);
  CHECK_FALSE(has_errors(validate(woven)));
}

TEST_CASE("quota load indicator in the ONE model") {
  Model base = corpus::load("one_overview");
  WeaveRequest req;
  req.source = "violation-anticipation";
  req.anchor = "care_organised_equitably";
  req.bindings = {{"Load", "percentage of quota consumed"}};
  req.id_prefix = "quota";
  Model woven = apply(base, req, builtin_catalogue());
  const Element* load = woven.find("quota__load");
  REQUIRE(load != nullptr);
  CHECK(load->kind == ElementKind::Indicator);
  CHECK(load->name == "percentage of quota consumed");
}

TEST_CASE("weaving into the corpus introduces no new errors") {
  for (const std::string& name : corpus::fixtures()) {
    Model base = corpus::load(name);
    auto baseline = error_set(base);
    for (const Element& anchor : base.elements()) {
      if (!is_intention(anchor.kind)) continue;
      for (const PatternCard& card : builtin_catalogue().cards) {
        CAPTURE(name);
        CAPTURE(anchor.id);
        CAPTURE(card.name);
        WeaveRequest req;
        req.source = card.name;
        req.anchor = anchor.id;
        req.bindings = bindings_for(card);
        req.id_prefix = "w";
        CHECK(error_set(apply(base, req, builtin_catalogue())) == baseline);
      }
    }
  }
}

TEST_CASE("import_fragment") {
  Model m = corpus::load("covid_confinement");
  // Drop the authored pointer to re-create it.
  Model bare(m.name());
  for (const Element& e : m.elements()) bare = add_element(std::move(bare), e);
  for (const Link& l : m.links()) {
    if (l.kind != LinkKind::DetailedBy) bare = append_unchecked_link(std::move(bare), l);
  }
  for (const Model& f : m.fragments()) bare = add_fragment(std::move(bare), f);

  Model linked = import_fragment(bare, "population_vaccinated", "vaccination_phase");
  std::size_t detail_links = 0;
  for (const Link& l : linked.links()) detail_links += l.kind == LinkKind::DetailedBy;
  CHECK(detail_links == 1);
  CHECK(subtree(linked, "population_vaccinated") == subtree(bare, "population_vaccinated"));
  CHECK(weave_error([&] { import_fragment(linked, "population_vaccinated", "vaccination_phase"); }) ==
        WeaveErrorCode::DuplicateLink);
  CHECK(weave_error([&] { import_fragment(bare, "nobody", "vaccination_phase"); }) == WeaveErrorCode::UnknownEndpoint);
  CHECK(weave_error([&] { import_fragment(bare, "population_vaccinated", "nothing"); }) ==
        WeaveErrorCode::UnknownFragment);
}
