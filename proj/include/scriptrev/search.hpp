#pragma once

// Exhaustive enumeration of every plan reachable from a start plan by zero
// or more revision steps, deduplicated up to renaming of ids.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptrev/plan.hpp"

namespace scriptrev {

// Deterministic encoding that ignores every id (acts, pairs, contents,
// conditions): acts are referred to by temporal position. Two valid plans
// share a canonical form iff they are equal up to such renaming.
std::string canonical_form(const DialoguePlan& plan);

// 16 hex digits (FNV-1a 64) of a canonical form, for reports and dumps.
std::string short_key(const std::string& canonical);

enum class OperatorTag { aggr, insert };

struct SpaceEdge {
  std::size_t from = 0;  // member indices
  std::size_t to = 0;
  OperatorTag op = OperatorTag::aggr;
  std::string site;  // ids as they appear in the source member
};

struct PlanSpace {
  // Members sorted by canonical form; keys[i] is the form of members[i].
  std::vector<std::string> keys;
  std::vector<DialoguePlan> members;
  std::vector<SpaceEdge> edges;
  std::size_t start = 0;

  std::optional<std::size_t> index_of(const std::string& key) const;
};

class CeilingExceeded : public std::runtime_error {
 public:
  CeilingExceeded(std::size_t ceiling);
  std::size_t ceiling() const { return ceiling_; }

 private:
  std::size_t ceiling_;
};

inline constexpr std::size_t kDefaultMemberCeiling = 100000;

// Breadth-first worklist closure. Throws CeilingExceeded once more than
// `ceiling` distinct plans have been found.
PlanSpace enumerate_closure(const DialoguePlan& start,
                            std::size_t ceiling = kDefaultMemberCeiling);

// Length of the longest edge path starting at the start member.
int longest_derivation(const PlanSpace& space);

// One edge per line: "<from-key>\t<op>\t<site>\t<to-key>".
std::string dump_edges(const PlanSpace& space);

enum class BranchOrder { insert_first, aggr_first };

// Verification oracle: depth-first recursion over operator applications,
// pruned at already-seen canonical forms. Independent of the worklist.
std::set<std::string> oracle_closure(const DialoguePlan& start,
                                     BranchOrder order = BranchOrder::insert_first);

}  // namespace scriptrev
