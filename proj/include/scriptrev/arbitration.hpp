#pragma once

// Scoring revised plans against the TURN and EMPH constraints and choosing
// among them: Pareto filtering, Nash-product and sum arbitration, and the
// sequential one-operator-at-a-time baseline.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scriptrev/plan.hpp"
#include "scriptrev/search.hpp"

namespace scriptrev {

struct RawScore {
  int turns = 0;
  int emph = 0;  // clarification subdialogues added during revision
};

struct ScoreTuple {
  double s_t = 0;
  double s_e = 0;
  int raw_turns = 0;
  int raw_emph = 0;
};

enum class ArbitrationKind { nash, sum, pareto_all, sequential_insert_first, sequential_aggr_first };

std::string_view to_string(ArbitrationKind kind);

RawScore raw_scores(const DialoguePlan& plan);

// Min-max map of one axis onto [0,100] after orienting it (max: larger is
// better, min: smaller is better). A constant axis scores 100 everywhere.
std::vector<double> normalize_axis(std::span<const double> raw, Polarity polarity);

std::vector<ScoreTuple> normalize(std::span<const RawScore> raw, ConstraintSetting setting);

// True if `other` dominates `score` by one of the three clauses: equal turn
// score with better emph score, equal emph score with better turn score, or
// better on both.
bool dominates(const ScoreTuple& other, const ScoreTuple& score);

// Indices of non-dominated tuples, in input order.
std::vector<std::size_t> pareto_front(std::span<const ScoreTuple> scored);

struct Selection {
  std::vector<std::size_t> winners;  // ascending indices
  std::size_t first = 0;             // lowest winning index
  bool fallback = false;             // zero-product fallback was used
};

// Maximum s_t * s_e. When the best product is 0, falls back to the Pareto
// front ranked by s_t + s_e. Near-ties within a relative 1e-9 count as ties;
// dominated near-ties are dropped.
Selection nash_select(std::span<const ScoreTuple> scored);

Selection sum_select(std::span<const ScoreTuple> scored);

enum class PhaseOrder { insert_first, aggr_first };

struct SequentialResult {
  DialoguePlan plan;
  int insertions = 0;
  int aggregations = 0;
};

// Insert runs to exhaustion iff emph = max, Aggr iff turn = max, phases in
// the given order, sites always taken in canonical order.
SequentialResult sequential_revise(const DialoguePlan& start, ConstraintSetting setting,
                                   PhaseOrder order);

struct ScoredSpace {
  std::vector<RawScore> raw;
  std::vector<ScoreTuple> scores;
  std::vector<std::size_t> front;
};

ScoredSpace score_space(const PlanSpace& space, ConstraintSetting setting);

// Tab-separated report, one record per member in canonical order.
std::string score_report(const PlanSpace& space, const ScoredSpace& scored,
                         ConstraintSetting setting, ArbitrationKind kind,
                         const Selection& selection);

}  // namespace scriptrev
