#include "scriptrev/arbitration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "scriptrev/revision.hpp"

namespace scriptrev {

std::string_view to_string(ArbitrationKind kind) {
  switch (kind) {
    case ArbitrationKind::nash: return "nash";
    case ArbitrationKind::sum: return "sum";
    case ArbitrationKind::pareto_all: return "pareto";
    case ArbitrationKind::sequential_insert_first: return "seq-insert-first";
    case ArbitrationKind::sequential_aggr_first: return "seq-aggr-first";
  }
  return "?";
}

RawScore raw_scores(const DialoguePlan& plan) {
  return {turn_count(plan), plan.inserted_count};
}

std::vector<double> normalize_axis(std::span<const double> raw, Polarity polarity) {
  std::vector<double> oriented(raw.begin(), raw.end());
  if (polarity == Polarity::min) {
    for (double& v : oriented) v = -v;
  }
  std::vector<double> out(oriented.size(), 100.0);
  if (oriented.empty()) return out;
  auto [lo, hi] = std::minmax_element(oriented.begin(), oriented.end());
  double worst = *lo;
  double best = *hi;
  if (best == worst) return out;
  for (std::size_t i = 0; i < oriented.size(); ++i) {
    out[i] = 100.0 * ((oriented[i] - worst) / (best - worst));
  }
  return out;
}

std::vector<ScoreTuple> normalize(std::span<const RawScore> raw, ConstraintSetting setting) {
  std::vector<double> turns, emph;
  turns.reserve(raw.size());
  emph.reserve(raw.size());
  for (const auto& r : raw) {
    turns.push_back(r.turns);
    emph.push_back(r.emph);
  }
  auto s_t = normalize_axis(turns, setting.turn);
  auto s_e = normalize_axis(emph, setting.emph);
  std::vector<ScoreTuple> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = {s_t[i], s_e[i], raw[i].turns, raw[i].emph};
  }
  return out;
}

bool dominates(const ScoreTuple& other, const ScoreTuple& score) {
  return (other.s_t == score.s_t && other.s_e > score.s_e) ||
         (other.s_e == score.s_e && other.s_t > score.s_t) ||
         (other.s_e > score.s_e && other.s_t > score.s_t);
}

std::vector<std::size_t> pareto_front(std::span<const ScoreTuple> scored) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    bool dominated = std::any_of(scored.begin(), scored.end(),
                                 [&](const ScoreTuple& o) { return dominates(o, scored[i]); });
    if (!dominated) front.push_back(i);
  }
  return front;
}

namespace {

bool near(double value, double best) {
  return value >= best - 1e-9 * std::max(1.0, std::abs(best));
}

// Indices among `candidates` whose objective ties the maximum, minus any
// that another tied candidate dominates.
Selection select_max(std::span<const ScoreTuple> scored,
                     const std::vector<std::size_t>& candidates,
                     const std::function<double(const ScoreTuple&)>& objective) {
  double best = -1.0;
  for (std::size_t i : candidates) best = std::max(best, objective(scored[i]));
  std::vector<std::size_t> tied;
  for (std::size_t i : candidates) {
    if (near(objective(scored[i]), best)) tied.push_back(i);
  }
  Selection sel;
  for (std::size_t i : tied) {
    bool dominated = std::any_of(tied.begin(), tied.end(), [&](std::size_t j) {
      return dominates(scored[j], scored[i]);
    });
    if (!dominated) sel.winners.push_back(i);
  }
  sel.first = sel.winners.front();
  return sel;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

double product(const ScoreTuple& s) { return s.s_t * s.s_e; }
double total(const ScoreTuple& s) { return s.s_t + s.s_e; }

}  // namespace

Selection nash_select(std::span<const ScoreTuple> scored) {
  double best = 0.0;
  for (const auto& s : scored) best = std::max(best, product(s));
  if (best > 0.0) return select_max(scored, all_indices(scored.size()), product);
  Selection sel = select_max(scored, pareto_front(scored), total);
  sel.fallback = true;
  return sel;
}

Selection sum_select(std::span<const ScoreTuple> scored) {
  return select_max(scored, all_indices(scored.size()), total);
}

SequentialResult sequential_revise(const DialoguePlan& start, ConstraintSetting setting,
                                   PhaseOrder order) {
  SequentialResult result{start, 0, 0};
  auto insert_phase = [&] {
    if (setting.emph != Polarity::max) return;
    for (auto sites = insert_sites(result.plan); !sites.empty();
         sites = insert_sites(result.plan)) {
      result.plan = apply_insert(result.plan, sites.front());
      ++result.insertions;
    }
  };
  auto aggr_phase = [&] {
    if (setting.turn != Polarity::max) return;
    for (auto sites = aggr_sites(result.plan); !sites.empty();
         sites = aggr_sites(result.plan)) {
      result.plan = apply_aggr(result.plan, sites.front());
      ++result.aggregations;
    }
  };
  if (order == PhaseOrder::insert_first) {
    insert_phase();
    aggr_phase();
  } else {
    aggr_phase();
    insert_phase();
  }
  return result;
}

ScoredSpace score_space(const PlanSpace& space, ConstraintSetting setting) {
  ScoredSpace scored;
  scored.raw.reserve(space.members.size());
  for (const auto& member : space.members) scored.raw.push_back(raw_scores(member));
  scored.scores = normalize(scored.raw, setting);
  scored.front = pareto_front(scored.scores);
  return scored;
}

std::string score_report(const PlanSpace& space, const ScoredSpace& scored,
                         ConstraintSetting setting, ArbitrationKind kind,
                         const Selection& selection) {
  std::string out = "# scriptrev score report v1\n";
  out += "# setting\tturn=" + std::string(to_string(setting.turn)) +
         "\temph=" + std::string(to_string(setting.emph)) + "\n";
  out += "# arbitration\t" + std::string(to_string(kind)) + "\n";
  out += "# members\t" + std::to_string(space.members.size()) + "\n";
  out += "# fallback\t" + std::string(selection.fallback ? "yes" : "no") + "\n";
  out += "index\tkey\traw_turns\traw_emph\ts_t\ts_e\tproduct\tsum\tpareto\twinner\tfirst\n";
  std::vector<bool> in_front(space.members.size(), false);
  for (std::size_t i : scored.front) in_front[i] = true;
  std::vector<bool> winner(space.members.size(), false);
  for (std::size_t i : selection.winners) winner[i] = true;
  for (std::size_t i = 0; i < space.members.size(); ++i) {
    const ScoreTuple& s = scored.scores[i];
    char line[256];
    std::snprintf(line, sizeof line, "%zu\t%s\t%d\t%d\t%.6f\t%.6f\t%.6f\t%.6f\t%d\t%d\t%d\n", i,
                  short_key(space.keys[i]).c_str(), s.raw_turns, s.raw_emph, s.s_t, s.s_e,
                  product(s), total(s), in_front[i] ? 1 : 0, winner[i] ? 1 : 0,
                  !selection.winners.empty() && selection.first == i ? 1 : 0);
    out += line;
  }
  return out;
}

}  // namespace scriptrev
