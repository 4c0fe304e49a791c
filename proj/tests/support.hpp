#pragma once

// Shared helpers for the test binaries: fixture access and a random
// generator of valid dialogue plans.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scriptrev/plan.hpp"

#ifndef SCRIPTREV_DATA_DIR
#error "SCRIPTREV_DATA_DIR must point at the fixture directory"
#endif

namespace scriptrev::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(SCRIPTREV_DATA_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct GenOptions {
  int max_pairs = 6;
  int max_marks = 4;
  bool rich = false;  // extras, payload, traits, odd condition shapes
  bool clarifications = true;  // pre-existing track-2 pairs
};

class PlanGenerator {
 public:
  PlanGenerator(std::mt19937& rng, GenOptions options) : rng_(rng), opt_(options) {}

  DialoguePlan operator()() {
    plan_ = DialoguePlan{};
    next_act_ = next_pair_ = 1;
    add_participants();

    std::vector<std::string> dims = {"comfort", "security", "sportiness"};
    std::shuffle(dims.begin(), dims.end(), rng_);
    dims.resize(1 + pick(3));

    int pairs = pick(opt_.max_pairs + 1);
    if (chance(0.3)) unpaired_opener();
    for (int i = 0; i < pairs; ++i) {
      const std::string& dim = dims[pick(static_cast<int>(dims.size()))];
      if (opt_.clarifications && chance(0.15)) {
        clarification_pair(dim);
      } else {
        planner_pair(dim);
      }
      if (chance(0.15)) elaboration();
    }
    if (!plan_.ordering.empty() && chance(0.3)) closer();
    place_marks();
    if (opt_.rich) decorate();
    return plan_;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  void add_participants() {
    plan_.participants.push_back({"ritchie", "Ritchie", Role::seller, {}, {}, {}});
    plan_.participants.push_back({"tina", "Tina", Role::customer, {}, {}, {}});
    if (chance(0.25)) plan_.participants.push_back({"sam", "", Role::customer, {}, {}, {}});
  }

  std::string other_than(const std::string& id) {
    std::vector<std::string> ids;
    for (const auto& p : plan_.participants) {
      if (p.id != id) ids.push_back(p.id);
    }
    return ids[pick(static_cast<int>(ids.size()))];
  }

  std::string any_participant() {
    return plan_.participants[pick(static_cast<int>(plan_.participants.size()))].id;
  }

  SemanticContent content(bool answer) {
    static const char* features[] = {"airbags", "abs", "leather_seats", "heated_seats",
                                     "alloy_wheels", "sunroof"};
    SemanticContent c;
    int n = 1 + (chance(0.25) ? 1 : 0);
    for (int i = 0; i < n; ++i) {
      Condition cond;
      cond.predicate = chance(0.7) ? "attribute" : "property";
      cond.args = {"x_1", features[pick(6)]};
      if (answer) cond.args.push_back("true");
      cond.polarity = !chance(0.1);
      c.conditions.push_back(std::move(cond));
    }
    return c;
  }

  DialogueAct& add_act(ActType type, std::string speaker, std::string addressee,
                       std::optional<SemanticContent> c) {
    DialogueAct act;
    act.id = "a" + std::to_string(next_act_++);
    act.type = type;
    act.speaker = std::move(speaker);
    act.addressee = std::move(addressee);
    act.content = std::move(c);
    if (act.content) {
      act.content->id = "d" + act.id.substr(1);
      int k = 0;
      for (auto& cond : act.content->conditions) {
        cond.id = "c" + act.id.substr(1) + "_" + std::to_string(++k);
      }
    }
    act.track = type == ActType::clarify_request || type == ActType::confirm ? Track::track2
                                                                             : Track::track1;
    plan_.ordering.push_back(act.id);
    plan_.acts.push_back(std::move(act));
    return plan_.acts.back();
  }

  void add_pair(const std::string& dim, PairOrigin origin) {
    const DialogueAct& second = plan_.acts.back();
    const DialogueAct& first = plan_.acts[plan_.acts.size() - 2];
    AdjacencyPair pair;
    pair.id = "p" + std::to_string(next_pair_++);
    pair.first = first.id;
    pair.second = second.id;
    pair.dimension = dim;
    pair.origin = origin;
    pair.subdialogues = origin == PairOrigin::inserted ? 1 : 0;
    plan_.inserted_count += pair.subdialogues;
    plan_.pairs.push_back(std::move(pair));
  }

  void unpaired_opener() {
    std::string s = any_participant();
    add_act(ActType::greet, s, other_than(s), std::nullopt);
  }

  void closer() {
    const DialogueAct& last = plan_.acts.back();
    std::string s = last.addressee;
    std::string to = last.speaker;
    std::string target = last.id;
    add_act(ActType::acknowledge, s, to, std::nullopt).reaction_to = target;
  }

  void planner_pair(const std::string& dim) {
    std::string asker = chance(0.8) ? "tina" : any_participant();
    std::string answerer = chance(0.8) && asker != "ritchie" ? "ritchie" : other_than(asker);
    bool ask = chance(0.8);
    add_act(ask ? ActType::question : ActType::inform, asker, answerer, content(false));
    std::string first = plan_.acts.back().id;
    bool acknowledge = !ask && chance(0.5);
    auto& second = add_act(acknowledge ? ActType::acknowledge : ActType::inform, answerer, asker,
                           acknowledge ? std::nullopt : std::optional(content(true)));
    second.reaction_to = first;
    add_pair(dim, chance(0.1) ? PairOrigin::aggregated : PairOrigin::planner);
  }

  void clarification_pair(const std::string& dim) {
    SemanticContent echo = content(true);
    add_act(ActType::clarify_request, "tina", "ritchie", echo);
    std::string first = plan_.acts.back().id;
    add_act(ActType::confirm, "ritchie", "tina", echo).reaction_to = first;
    add_pair(dim, PairOrigin::inserted);
  }

  void elaboration() {
    const DialogueAct& last = plan_.acts.back();
    std::string s = last.speaker;
    std::string to = last.addressee;
    std::string target = last.id;
    add_act(ActType::inform, s, to, content(true)).reaction_to = target;
  }

  void place_marks() {
    std::vector<DialogueAct*> candidates;
    for (auto& act : plan_.acts) {
      if (act.content && act.track == Track::track1) candidates.push_back(&act);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    int marks = std::min<int>(pick(opt_.max_marks + 1), static_cast<int>(candidates.size()));
    for (int i = 0; i < marks; ++i) candidates[i]->emphasis = true;
  }

  static xml::Element element(std::string name, std::map<std::string, std::string> attrs,
                              std::string text = {}) {
    xml::Element el;
    el.name = std::move(name);
    el.attributes = std::move(attrs);
    el.text = std::move(text);
    return el;
  }

  void decorate() {
    if (chance(0.5)) plan_.extras["version"] = "1.0";
    if (chance(0.5)) {
      auto entity = element("entity", {{"id", "x_1"}, {"type", "car"}});
      entity.children.push_back(element("label", {}, "A & B <car>"));
      plan_.common_ground.push_back(entity);
    }
    for (auto& p : plan_.participants) {
      if (chance(0.5)) p.traits["agreeableness"] = std::uniform_real_distribution<>(0, 1)(rng_);
      if (chance(0.5)) p.traits["neuroticism"] = pick(11) / 10.0;
      if (chance(0.4)) p.extras["personality.politeness"] = "polite";
      if (chance(0.4)) p.extras["realname.title"] = "Mr \"Q\"";
      if (chance(0.4)) p.extras["domainSpecificAttr.x-position"] = std::to_string(pick(300));
      if (chance(0.3)) p.extras["group"] = "showroom";
      if (chance(0.4)) p.payload.push_back(element("gender", {{"type", "male"}}));
      if (chance(0.3)) {
        auto voice = element("voice", {{"name", "us2"}});
        voice.children.push_back(element("prosody", {{"pitch", "-20"}, {"rate", "-10"}}));
        p.payload.push_back(voice);
      }
    }
    for (auto& act : plan_.acts) {
      if (chance(0.2)) act.extras["mood"] = "calm";
      if (chance(0.2)) act.extras["domainSpecificAttr.register"] = "formal";
      if (chance(0.2)) act.payload.push_back(element("emotion", {{"type", "joy"}}, "mild"));
      if (!act.content) continue;
      if (chance(0.3)) act.content->drs_id = "r" + act.id.substr(1);
      if (chance(0.2)) act.content->extras["drs.scope"] = "local";
      if (chance(0.2)) act.content->id.clear();
      for (auto& cond : act.content->conditions) {
        if (chance(0.2)) cond.extras["weight"] = "0.5";
        if (chance(0.2)) cond.id.clear();
        if (chance(0.15)) cond.args = {"x_1"};
        if (chance(0.1)) cond.args = {"x_1", cond.args.back(), "true", "strongly"};
      }
    }
    for (auto& pair : plan_.pairs) {
      if (chance(0.2)) pair.extras["note"] = "n";
    }
  }

  std::mt19937& rng_;
  GenOptions opt_;
  DialoguePlan plan_;
  int next_act_ = 1;
  int next_pair_ = 1;
};

// Copy of the plan with every act, pair, content and condition id replaced
// by a fresh random one (all references updated), and the act and pair
// vectors shuffled.
inline DialoguePlan rename_ids(const DialoguePlan& plan, std::mt19937& rng) {
  DialoguePlan out = plan;
  std::vector<int> perm(plan.acts.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::map<std::string, std::string> act_names;
  for (std::size_t i = 0; i < plan.acts.size(); ++i) {
    act_names[plan.acts[i].id] = "r" + std::to_string(perm[i] * 7 + 3);
  }
  int serial = 0;
  for (auto& act : out.acts) {
    act.id = act_names.at(act.id);
    if (act.reaction_to) act.reaction_to = act_names.at(*act.reaction_to);
    if (act.content) {
      act.content->id = "k" + std::to_string(++serial);
      for (auto& cond : act.content->conditions) cond.id = "q" + std::to_string(++serial);
    }
  }
  for (auto& id : out.ordering) id = act_names.at(id);
  for (auto& pair : out.pairs) {
    pair.id = "z" + std::to_string(++serial);
    pair.first = act_names.at(pair.first);
    pair.second = act_names.at(pair.second);
  }
  std::shuffle(out.acts.begin(), out.acts.end(), rng);
  return out;
}

}  // namespace scriptrev::testing
