#include "scriptrev/plan.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <utility>

namespace scriptrev {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<Role, std::string_view>, 2> kRoles{{
    {Role::seller, "seller"},
    {Role::customer, "customer"},
}};

constexpr std::array<std::pair<ActType, std::string_view>, 6> kActTypes{{
    {ActType::greet, "greet"},
    {ActType::question, "question"},
    {ActType::inform, "inform"},
    {ActType::acknowledge, "acknowledge"},
    {ActType::clarify_request, "clarify_request"},
    {ActType::confirm, "confirm"},
}};

constexpr std::array<std::pair<Track, std::string_view>, 2> kTracks{{
    {Track::track1, "track1"},
    {Track::track2, "track2"},
}};

constexpr std::array<std::pair<PairOrigin, std::string_view>, 3> kOrigins{{
    {PairOrigin::planner, "planner"},
    {PairOrigin::inserted, "inserted"},
    {PairOrigin::aggregated, "aggregated"},
}};

constexpr std::array<std::pair<Polarity, std::string_view>, 2> kPolarities{{
    {Polarity::max, "max"},
    {Polarity::min, "min"},
}};

}  // namespace

std::string_view to_string(Role v) { return name_of(kRoles, v); }
std::string_view to_string(ActType v) { return name_of(kActTypes, v); }
std::string_view to_string(Track v) { return name_of(kTracks, v); }
std::string_view to_string(PairOrigin v) { return name_of(kOrigins, v); }
std::string_view to_string(Polarity v) { return name_of(kPolarities, v); }

std::optional<Role> parse_role(std::string_view t) { return lookup(kRoles, t); }
std::optional<ActType> parse_act_type(std::string_view t) { return lookup(kActTypes, t); }
std::optional<Track> parse_track(std::string_view t) { return lookup(kTracks, t); }
std::optional<PairOrigin> parse_pair_origin(std::string_view t) { return lookup(kOrigins, t); }
std::optional<Polarity> parse_polarity(std::string_view t) { return lookup(kPolarities, t); }

bool is_token(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

const DialogueAct* DialoguePlan::find_act(std::string_view id) const {
  for (const auto& act : acts) {
    if (act.id == id) return &act;
  }
  return nullptr;
}

const AdjacencyPair* DialoguePlan::find_pair(std::string_view id) const {
  for (const auto& pair : pairs) {
    if (pair.id == id) return &pair;
  }
  return nullptr;
}

const Participant* DialoguePlan::find_participant(std::string_view id) const {
  for (const auto& p : participants) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const AdjacencyPair* DialoguePlan::pair_of(std::string_view act_id) const {
  for (const auto& pair : pairs) {
    if (pair.first == act_id || pair.second == act_id) return &pair;
  }
  return nullptr;
}

std::optional<std::size_t> DialoguePlan::position(std::string_view act_id) const {
  auto it = std::find(ordering.begin(), ordering.end(), act_id);
  if (it == ordering.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ordering.begin());
}

std::vector<const DialogueAct*> DialoguePlan::acts_in_order() const {
  std::unordered_map<std::string_view, const DialogueAct*> by_id;
  for (const auto& act : acts) by_id.emplace(act.id, &act);
  std::vector<const DialogueAct*> out;
  out.reserve(ordering.size());
  for (const auto& id : ordering) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw PlanError("ordering names undeclared act '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

bool operator==(const DialoguePlan& a, const DialoguePlan& b) {
  if (a.participants != b.participants || a.pairs != b.pairs ||
      a.ordering != b.ordering || a.common_ground != b.common_ground ||
      a.inserted_count != b.inserted_count || a.extras != b.extras ||
      a.acts.size() != b.acts.size()) {
    return false;
  }
  auto by_id = [](const DialoguePlan& p) {
    std::vector<const DialogueAct*> v;
    for (const auto& act : p.acts) v.push_back(&act);
    std::sort(v.begin(), v.end(),
              [](const DialogueAct* x, const DialogueAct* y) { return x->id < y->id; });
    return v;
  };
  auto va = by_id(a);
  auto vb = by_id(b);
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!(*va[i] == *vb[i])) return false;
  }
  return true;
}

std::string describe(const Violation& v) {
  std::string out = v.invariant + ": " + v.message;
  if (!v.ids.empty()) {
    out += " [";
    for (std::size_t i = 0; i < v.ids.size(); ++i) {
      if (i) out += ", ";
      out += v.ids[i];
    }
    out += "]";
  }
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    out += describe(v);
    out += '\n';
  }
  return out;
}

namespace {

class Checker {
 public:
  explicit Checker(const DialoguePlan& plan) : plan_(plan) {}

  std::vector<Violation> run() {
    check_participants();
    check_acts();
    check_ordering();
    check_reactions();
    check_pairs();
    check_unpaired();
    check_inserted_count();
    return std::move(out_);
  }

 private:
  const DialoguePlan& plan_;
  std::vector<Violation> out_;
  std::unordered_map<std::string, const DialogueAct*> acts_;
  std::unordered_map<std::string, std::size_t> pos_;
  std::unordered_map<std::string, const AdjacencyPair*> membership_;

  void add(std::string invariant, std::vector<std::string> ids, std::string message) {
    out_.push_back({std::move(invariant), std::move(ids), std::move(message)});
  }

  std::optional<std::size_t> pos(const std::string& id) const {
    auto it = pos_.find(id);
    if (it == pos_.end()) return std::nullopt;
    return it->second;
  }

  void check_participants() {
    std::set<std::string> seen;
    for (const auto& p : plan_.participants) {
      if (!is_token(p.id)) add("token-syntax", {p.id}, "participant id is not a token");
      if (!seen.insert(p.id).second) {
        add("participant-id-unique", {p.id}, "duplicate participant id");
      }
      for (const auto& [trait, value] : p.traits) {
        if (!(value >= 0.0 && value <= 1.0)) {
          add("trait-range", {p.id, trait}, "trait value outside [0,1]");
        }
      }
    }
  }

  void check_acts() {
    for (const auto& act : plan_.acts) {
      if (!is_token(act.id)) add("token-syntax", {act.id}, "act id is not a token");
      if (!acts_.emplace(act.id, &act).second) {
        add("act-id-unique", {act.id}, "duplicate act id");
        continue;
      }
      if (!plan_.find_participant(act.speaker)) {
        add("speaker-known", {act.id, act.speaker}, "speaker is not a participant");
      }
      if (!plan_.find_participant(act.addressee)) {
        add("addressee-known", {act.id, act.addressee}, "addressee is not a participant");
      }
      if (act.speaker == act.addressee) {
        add("speaker-not-addressee", {act.id}, "speaker equals addressee");
      }
      if ((act.type == ActType::clarify_request || act.type == ActType::confirm) &&
          act.track != Track::track2) {
        add("metacommunication-track", {act.id},
            std::string(to_string(act.type)) + " act must be on track2");
      }
      if (act.emphasis && !act.content) {
        add("emphasis-needs-content", {act.id}, "emphasis on an act without content");
      }
      bool needs_conditions = act.type == ActType::inform || act.type == ActType::question;
      if (needs_conditions && (!act.content || act.content->conditions.empty())) {
        add("content-non-empty", {act.id},
            std::string(to_string(act.type)) + " act needs at least one condition");
      }
      if (act.content) {
        for (const auto& cond : act.content->conditions) {
          if (cond.args.empty()) {
            add("condition-args", {act.id, cond.predicate}, "condition without arguments");
          }
          if (!is_token(cond.predicate)) {
            add("token-syntax", {act.id, cond.predicate}, "condition predicate is not a token");
          }
          for (const auto& arg : cond.args) {
            if (!is_token(arg)) {
              add("token-syntax", {act.id, arg}, "condition argument is not a token");
            }
          }
        }
      }
    }
  }

  void check_ordering() {
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < plan_.ordering.size(); ++i) {
      const auto& id = plan_.ordering[i];
      if (!acts_.count(id)) {
        problems.push_back(id);
      } else if (!pos_.emplace(id, i).second) {
        problems.push_back(id);
      }
    }
    for (const auto& act : plan_.acts) {
      if (!pos_.count(act.id) &&
          std::find(problems.begin(), problems.end(), act.id) == problems.end()) {
        problems.push_back(act.id);
      }
    }
    if (!problems.empty()) {
      add("ordering-permutation", problems, "ordering not a permutation of the acts");
    }
  }

  void check_reactions() {
    for (const auto& act : plan_.acts) {
      if (!act.reaction_to) continue;
      const auto& target = *act.reaction_to;
      if (!acts_.count(target)) {
        add("reaction-known", {act.id, target}, "reaction_to names an undeclared act");
        continue;
      }
      auto p = pos(act.id);
      auto q = pos(target);
      if (p && q && *q >= *p) {
        add("reaction-earlier", {act.id, target}, "reaction_to must name an earlier act");
      }
    }
  }

  void check_pairs() {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < plan_.pairs.size(); ++i) {
      const auto& pair = plan_.pairs[i];
      if (!is_token(pair.id)) add("token-syntax", {pair.id}, "pair id is not a token");
      if (!is_token(pair.dimension)) {
        add("token-syntax", {pair.id, pair.dimension}, "value dimension is not a token");
      }
      if (!ids.insert(pair.id).second) add("pair-id-unique", {pair.id}, "duplicate pair id");

      auto first_it = acts_.find(pair.first);
      auto second_it = acts_.find(pair.second);
      if (first_it == acts_.end() || second_it == acts_.end()) {
        add("pair-acts-known", {pair.id}, "pair names an undeclared act");
        continue;
      }
      if (pair.first == pair.second) {
        add("pair-distinct-parts", {pair.id}, "pair parts are the same act");
        continue;
      }
      for (const auto* part : {&pair.first, &pair.second}) {
        if (!membership_.emplace(*part, &pair).second) {
          add("single-pair-membership", {*part, pair.id}, "act belongs to more than one pair");
        }
      }
      const DialogueAct& first = *first_it->second;
      const DialogueAct& second = *second_it->second;
      if (second.reaction_to != pair.first) {
        add("conditional-relevance", {pair.id, second.id},
            "second part does not react to the first part");
      }
      auto p1 = pos(first.id);
      auto p2 = pos(second.id);
      if (p1 && p2) {
        if (*p2 <= *p1) {
          add("pair-order", {pair.id}, "first part does not precede second part");
        } else if (*p2 != *p1 + 1) {
          add("pair-adjacent", {pair.id}, "pair parts are not adjacent");
        }
      }
      if (i > 0) {
        const auto& prev = plan_.pairs[i - 1];
        auto q = pos(prev.first);
        if (p1 && q && *q > *p1) {
          add("pair-list-order", {prev.id, pair.id}, "pairs not listed in temporal order");
        }
      }
      check_origin(pair, first, second);
    }
  }

  void check_origin(const AdjacencyPair& pair, const DialogueAct& first,
                    const DialogueAct& second) {
    if (first.track != second.track) {
      add("pair-track", {pair.id}, "pair parts on different tracks");
      return;
    }
    switch (pair.origin) {
      case PairOrigin::planner:
        if (first.track != Track::track1) {
          add("pair-track", {pair.id}, "planner pair must be on track1");
        }
        if (pair.subdialogues != 0) {
          add("subdialogue-count", {pair.id}, "planner pair carries subdialogues");
        }
        break;
      case PairOrigin::inserted:
        if (first.track != Track::track2) {
          add("pair-track", {pair.id}, "inserted pair must be on track2");
        }
        if (pair.subdialogues != 1) {
          add("subdialogue-count", {pair.id}, "inserted pair must count one subdialogue");
        }
        break;
      case PairOrigin::aggregated:
        if (first.track == Track::track1 && pair.subdialogues != 0) {
          add("subdialogue-count", {pair.id}, "track1 aggregate carries subdialogues");
        }
        if (first.track == Track::track2 && pair.subdialogues < 2) {
          add("subdialogue-count", {pair.id}, "track2 aggregate must merge subdialogues");
        }
        break;
    }
  }

  // Unpaired acts: openers/closers, or an inform elaborating the same
  // speaker's immediately preceding act.
  void check_unpaired() {
    for (const auto& act : plan_.acts) {
      if (membership_.count(act.id)) continue;
      if (act.type == ActType::greet || act.type == ActType::acknowledge) continue;
      if (act.type == ActType::inform && act.reaction_to) {
        auto p = pos(act.id);
        auto q = pos(*act.reaction_to);
        if (!p || !q) continue;  // reported elsewhere
        const DialogueAct* target = acts_.count(*act.reaction_to)
                                        ? acts_.at(*act.reaction_to)
                                        : nullptr;
        if (*q + 1 == *p && target && target->speaker == act.speaker) continue;
      }
      add("pair-membership", {act.id},
          "act is in no pair and is neither opener/closer nor elaboration");
    }
  }

  void check_inserted_count() {
    int total = 0;
    for (const auto& pair : plan_.pairs) total += pair.subdialogues;
    if (total != plan_.inserted_count) {
      add("inserted-count", {std::to_string(plan_.inserted_count), std::to_string(total)},
          "inserted_count disagrees with the subdialogues carried by pairs");
    }
  }
};

}  // namespace

std::vector<Violation> validate(const DialoguePlan& plan) { return Checker(plan).run(); }

int turn_count(const DialoguePlan& plan) {
  if (plan.ordering.empty()) throw PlanError("turn_count of an empty plan");
  auto acts = plan.acts_in_order();
  int turns = 1;
  for (std::size_t i = 1; i < acts.size(); ++i) {
    if (acts[i]->speaker != acts[i - 1]->speaker) ++turns;
  }
  return turns;
}

std::set<std::string> emphasis_marks(const DialoguePlan& plan) {
  std::set<std::string> out;
  for (const auto& act : plan.acts) {
    if (act.emphasis) out.insert(act.id);
  }
  return out;
}

}  // namespace scriptrev
