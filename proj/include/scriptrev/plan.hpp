#pragma once

// Domain types for abstract dialogue plans: who takes part, which acts are
// performed, how acts group into adjacency pairs, and in which order they
// occur. Plans are plain values; every query here is pure.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptrev/xml.hpp"

namespace scriptrev {

// Unmodelled attributes of a known element, keyed by attribute name (or by
// "child.attribute" for attributes of a known child element).
using Extras = std::map<std::string, std::string>;

enum class Role { seller, customer };

enum class ActType { greet, question, inform, acknowledge, clarify_request, confirm };

enum class Track { track1, track2 };

enum class PairOrigin { planner, inserted, aggregated };

enum class Polarity { max, min };

std::string_view to_string(Role role);
std::string_view to_string(ActType type);
std::string_view to_string(Track track);
std::string_view to_string(PairOrigin origin);
std::string_view to_string(Polarity polarity);

std::optional<Role> parse_role(std::string_view text);
std::optional<ActType> parse_act_type(std::string_view text);
std::optional<Track> parse_track(std::string_view text);
std::optional<PairOrigin> parse_pair_origin(std::string_view text);
std::optional<Polarity> parse_polarity(std::string_view text);

// Ids are restricted to [A-Za-z0-9_]+.
bool is_token(std::string_view text);

struct Participant {
  std::string id;
  std::string name;
  Role role = Role::seller;
  std::map<std::string, double> traits;  // values in [0,1]
  Extras extras;
  std::vector<xml::Element> payload;  // e.g. gender, appearance, voice

  friend bool operator==(const Participant&, const Participant&) = default;
};

struct Condition {
  std::string predicate;
  std::vector<std::string> args;
  bool polarity = true;
  std::string id;  // optional
  Extras extras;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct SemanticContent {
  std::string id;      // optional
  std::string drs_id;  // optional
  std::vector<Condition> conditions;
  Extras extras;

  friend bool operator==(const SemanticContent&, const SemanticContent&) = default;
};

struct DialogueAct {
  std::string id;
  ActType type = ActType::inform;
  std::string speaker;
  std::string addressee;
  std::optional<SemanticContent> content;
  Track track = Track::track1;
  std::optional<std::string> reaction_to;
  bool emphasis = false;
  Extras extras;
  std::vector<xml::Element> payload;  // e.g. emotion markup

  friend bool operator==(const DialogueAct&, const DialogueAct&) = default;
};

struct AdjacencyPair {
  std::string id;
  std::string first;
  std::string second;
  std::string dimension;
  PairOrigin origin = PairOrigin::planner;
  // Number of clarification subdialogues this pair embodies: 1 for an
  // inserted pair, the sum of its sources for an aggregated pair, else 0.
  int subdialogues = 0;
  Extras extras;

  friend bool operator==(const AdjacencyPair&, const AdjacencyPair&) = default;
};

struct DialoguePlan {
  std::vector<Participant> participants;
  std::vector<DialogueAct> acts;      // any order; `ordering` is authoritative
  std::vector<AdjacencyPair> pairs;   // sorted by position of the first part
  std::vector<std::string> ordering;  // temporal order of act ids
  std::vector<xml::Element> common_ground;
  int inserted_count = 0;
  Extras extras;  // unmodelled attributes of the document root

  const DialogueAct* find_act(std::string_view id) const;
  const AdjacencyPair* find_pair(std::string_view id) const;
  const Participant* find_participant(std::string_view id) const;

  // Pair containing the act, or nullptr for unpaired acts.
  const AdjacencyPair* pair_of(std::string_view act_id) const;

  // Position of the act in `ordering`, if present.
  std::optional<std::size_t> position(std::string_view act_id) const;

  // Acts in temporal order. Requires every ordering id to be declared.
  std::vector<const DialogueAct*> acts_in_order() const;
};

// Structural equality: acts compared as a set keyed by id.
bool operator==(const DialoguePlan& a, const DialoguePlan& b);

struct ConstraintSetting {
  Polarity turn = Polarity::max;
  Polarity emph = Polarity::max;

  friend bool operator==(const ConstraintSetting&, const ConstraintSetting&) = default;
};

struct Violation {
  std::string invariant;
  std::vector<std::string> ids;
  std::string message;
};

std::string describe(const Violation& violation);
std::string describe(const std::vector<Violation>& violations);

std::vector<Violation> validate(const DialoguePlan& plan);

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of maximal runs of consecutive acts by the same speaker.
// Throws PlanError for a plan with an empty ordering.
int turn_count(const DialoguePlan& plan);

std::set<std::string> emphasis_marks(const DialoguePlan& plan);

}  // namespace scriptrev
