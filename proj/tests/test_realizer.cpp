#include <doctest.h>

#include <random>
#include <sstream>

#include "scriptrev/realizer.hpp"
#include "scriptrev/revision.hpp"
#include "scriptrev/rrl.hpp"
#include "scriptrev/search.hpp"
#include "support.hpp"

using namespace scriptrev;
using scriptrev::testing::data_path;
using scriptrev::testing::read_text;

namespace {

DialoguePlan load(const char* name) { return rrl::read_file(data_path(name)); }
Lexicon showroom() { return Lexicon::read_file(data_path("showroom.lex")); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Covers every token the random plan generator can produce.
Lexicon generator_lexicon() {
  Lexicon lex;
  for (const char* f : {"airbags", "abs", "leather_seats", "heated_seats", "alloy_wheels",
                        "sunroof"}) {
    lex.set(f, f);
  }
  lex.set("frame:greet", "Hello!");
  lex.set("frame:acknowledge", "I see.");
  return lex;
}

}  // namespace

TEST_CASE("lexicon file format") {
  Lexicon lex = Lexicon::parse("# comment\r\n\nkey\tphrase with spaces\r\nframe:x:y\t{}!\n");
  CHECK(lex.size() == 2);
  CHECK(lex.find("key") == "phrase with spaces");
  CHECK(lex.find("frame:x:y") == "{}!");
  CHECK_FALSE(lex.find("missing"));

  CHECK_THROWS_WITH_AS(Lexicon::parse("a\tb\nno tab here\n"), "lexicon line 2: expected key<TAB>phrase",
                       LexiconError);
  CHECK_THROWS_AS(Lexicon::parse("a\tb\na\tc\n"), LexiconError);
  CHECK_THROWS_AS(Lexicon::parse("\tphrase\n"), LexiconError);
  CHECK_THROWS_AS(Lexicon::read_file(data_path("no_such.lex")), LexiconError);
  CHECK(showroom().find("label:ritchie") == "Seller");
}

TEST_CASE("feature token") {
  Condition unary{"sporty", {"x_1"}, true, "", {}};
  Condition ternary{"attribute", {"x_1", "leather_seats", "true"}, true, "", {}};
  CHECK(feature_token(unary) == "x_1");
  CHECK(feature_token(ternary) == "leather_seats");
}

TEST_CASE("the showroom plan renders the showroom transcript") {
  std::string text = realize(load("showroom.rrl.xml"), showroom());
  CHECK(text == read_text(data_path("golden/showroom.txt")));
}

TEST_CASE("operator examples render as in the golden files") {
  DialoguePlan aggr = load("aggr.rrl.xml");
  DialoguePlan merged = apply_aggr(aggr, aggr_sites(aggr).front());
  CHECK(realize(merged, showroom()) == read_text(data_path("golden/aggr.txt")));

  DialoguePlan insert = load("insert.rrl.xml");
  DialoguePlan inserted = apply_insert(insert, insert_sites(insert).front());
  CHECK(realize(inserted, showroom()) == read_text(data_path("golden/insert.txt")));
}

TEST_CASE("leather-seats elaboration line") {
  auto lines = lines_of(realize(load("showroom.rrl.xml"), showroom()));
  CHECK(lines.at(3) == "Seller: It has leather seats.");
}

TEST_CASE("joining three or more phrases repeats 'and'") {
  DialoguePlan start = load("aggr.rrl.xml");
  DialoguePlan plan = apply_aggr(start, aggr_sites(start).front());
  for (auto& a : plan.acts) {
    if (a.id == "v_1") {
      a.content->conditions.push_back({"attribute", {"x_1", "sunroof"}, true, "", {}});
    }
  }
  Lexicon lex = showroom();
  lex.set("sunroof", "a sunroof");
  auto lines = lines_of(realize(plan, lex));
  CHECK(lines.at(0) == "Buyer: Does it have airbags and ABS and a sunroof?");
  CHECK(lines.at(1) == "Seller: It has airbags and ABS.");
}

TEST_CASE("negative answers and property frames") {
  DialoguePlan plan = load("aggr.rrl.xml");
  for (auto& a : plan.acts) {
    if (a.id == "v_4") a.content->conditions[0].polarity = false;
    if (a.id == "v_1" || a.id == "v_2") {
      for (auto& c : a.content->conditions) c.predicate = "property";
      a.content->conditions[0].args[1] = "sporty";
    }
  }
  auto lines = lines_of(realize(plan, showroom()));
  CHECK(lines.at(0) == "Buyer: Is it sporty?");
  CHECK(lines.at(1) == "Seller: Yes.");
  CHECK(lines.at(3) == "Seller: No.");
}

TEST_CASE("lexicon frames override the built-in ones") {
  Lexicon lex = showroom();
  lex.set("frame:answer:attribute", "Indeed.");
  lex.set("question:airbags", "any airbags");
  auto lines = lines_of(realize(load("aggr.rrl.xml"), lex));
  CHECK(lines.at(0) == "Buyer: Does it have any airbags?");
  CHECK(lines.at(1) == "Seller: Indeed.");
}

TEST_CASE("gaps name the missing key") {
  Lexicon lex = showroom();
  Lexicon partial;
  partial.set("airbags", "airbags");
  try {
    realize(load("aggr.rrl.xml"), partial);
    FAIL("no gap");
  } catch (const LexiconGap& e) {
    CHECK(e.key() == "abs");
    CHECK(std::string(e.what()).find("'abs'") != std::string::npos);
  }
  partial.set("abs", "ABS");
  CHECK_NOTHROW(realize(load("aggr.rrl.xml"), partial));

  DialoguePlan showroom_plan = load("showroom.rrl.xml");
  try {
    realize(showroom_plan, partial);
    FAIL("no gap");
  } catch (const LexiconGap& e) {
    CHECK(e.key() == "frame:greet");
  }
  Lexicon no_frame = showroom();
  DialoguePlan odd = load("aggr.rrl.xml");
  for (auto& a : odd.acts) {
    for (auto& c : a.content->conditions) c.predicate = "colour";
  }
  CHECK_THROWS_WITH_AS(realize(odd, no_frame), "lexicon has no entry for 'frame:question:colour'",
                       LexiconGap);
}

TEST_CASE("labels fall back to the participant name, then the id") {
  Lexicon lex;
  lex.set("airbags", "airbags");
  lex.set("abs", "ABS");
  DialoguePlan plan = load("aggr.rrl.xml");
  CHECK(lines_of(realize(plan, lex)).at(0) == "Tina: Does it have airbags?");
  plan.participants[1].name.clear();
  CHECK(lines_of(realize(plan, lex)).at(0) == "tina: Does it have airbags?");
}

TEST_CASE("invalid plans are rejected with the validation report") {
  DialoguePlan plan = load("showroom.rrl.xml");
  plan.ordering.pop_back();
  CHECK_THROWS_AS(realize(plan, showroom()), PlanError);
}

TEST_CASE("property: one line per act, labels in temporal order, deterministic") {
  std::mt19937 rng(77);
  Lexicon lex = generator_lexicon();
  for (int i = 0; i < 200; ++i) {
    scriptrev::testing::PlanGenerator gen(rng, {6, 3, false});
    DialoguePlan plan = gen();
    CAPTURE(i);
    std::string text = realize(plan, lex);
    auto lines = lines_of(text);
    REQUIRE(lines.size() == plan.acts.size());
    auto acts = plan.acts_in_order();
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const Participant* p = plan.find_participant(acts[k]->speaker);
      std::string label = p->name.empty() ? p->id : p->name;
      CHECK(lines[k].rfind(label + ": ", 0) == 0);
    }
    CHECK(realize(plan, lex) == text);
    CHECK(text.find('\r') == std::string::npos);
  }
}

TEST_CASE("property: dropping track-2 lines equals realizing the stripped plan") {
  std::mt19937 rng(78);
  Lexicon lex = generator_lexicon();
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    scriptrev::testing::GenOptions options{4, 3, false, false};
    scriptrev::testing::PlanGenerator gen(rng, options);
    PlanSpace space = enumerate_closure(gen());
    for (const auto& member : space.members) {
      auto lines = lines_of(realize(member, lex));
      auto acts = member.acts_in_order();
      std::string kept;
      for (std::size_t k = 0; k < acts.size(); ++k) {
        if (acts[k]->track == Track::track1) kept += lines[k] + "\n";
      }
      DialoguePlan stripped = strip_track2(member);
      REQUIRE(validate(stripped).empty());
      CHECK(stripped.inserted_count == 0);
      CHECK(realize(stripped, lex) == kept);
      ++checked;
    }
  }
  CHECK(checked > 200);
}
