#pragma once

// The two revision operators on dialogue plans: adjacency-pair aggregation
// and clarification-subdialogue insertion. Both are pure: they return a new
// plan and never modify their input.

#include <stdexcept>
#include <string>
#include <vector>

#include "scriptrev/plan.hpp"

namespace scriptrev {

// Two pairs that can be merged; pair_a precedes pair_b.
struct AggrSite {
  std::string pair_a;
  std::string pair_b;

  friend bool operator==(const AggrSite&, const AggrSite&) = default;
};

struct InsertSite {
  std::string pair;
  std::string trigger_act;

  friend bool operator==(const InsertSite&, const InsertSite&) = default;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Aggregation precondition. Besides sharing a value dimension, the first
// parts must agree on (speaker, addressee, act type), likewise the second
// parts, both pairs must live on the same track, and no act outside the
// later pair may react to one of its acts (it disappears on merging).
bool aggregable(const DialoguePlan& plan, const AdjacencyPair& a, const AdjacencyPair& b);

// All aggregable pair-pairs ordered by (position of pair_a, position of pair_b).
std::vector<AggrSite> aggr_sites(const DialoguePlan& plan);

// Merges pair_b into pair_a at pair_a's position: condition lists are
// concatenated (a then b), emphasis marks are or-ed, and pair_b's acts are
// removed. Throws PreconditionError when the site does not apply.
DialoguePlan apply_aggr(const DialoguePlan& plan, const AggrSite& site);

// One site per emphasis-marked act inside a pair, in temporal order.
std::vector<InsertSite> insert_sites(const DialoguePlan& plan);

// Adds a track-2 (clarify_request, confirm) pair right after the site's pair
// (and after any elaboration that trails it). The hearer of the pair's second
// part asks, its speaker confirms; both echo the trigger's conditions. The
// trigger's emphasis mark is consumed.
DialoguePlan apply_insert(const DialoguePlan& plan, const InsertSite& site);

std::string describe(const AggrSite& site);
std::string describe(const InsertSite& site);

}  // namespace scriptrev
