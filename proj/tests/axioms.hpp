#pragma once

// Property harness for the selection axioms, shared by the unit tests and
// the acceptance binary. Each check returns the number of violations.

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "scriptrev/arbitration.hpp"

namespace scriptrev::testing {

inline std::vector<ScoreTuple> random_scores(std::mt19937& rng, int size) {
  std::vector<ScoreTuple> out(static_cast<std::size_t>(size));
  bool grid = std::bernoulli_distribution(0.5)(rng);
  std::uniform_int_distribution<int> step(0, 10);
  std::uniform_real_distribution<double> real(0.0, 100.0);
  for (auto& s : out) {
    s.s_t = grid ? step(rng) * 10.0 : real(rng);
    s.s_e = grid ? step(rng) * 10.0 : real(rng);
  }
  return out;
}

inline std::set<std::pair<double, double>> winner_tuples(const std::vector<ScoreTuple>& scores,
                                                         const Selection& sel) {
  std::set<std::pair<double, double>> out;
  for (std::size_t i : sel.winners) out.insert({scores[i].s_t, scores[i].s_e});
  return out;
}

inline double max_product(const std::vector<ScoreTuple>& scores) {
  double best = 0;
  for (const auto& s : scores) best = std::max(best, s.s_t * s.s_e);
  return best;
}

// (a) Every Nash winner with a positive product lies on the Pareto front.
inline int pareto_violations(const std::vector<ScoreTuple>& scores) {
  Selection sel = nash_select(scores);
  auto front = pareto_front(scores);
  int bad = 0;
  for (std::size_t w : sel.winners) {
    if (scores[w].s_t * scores[w].s_e > 0 &&
        !std::binary_search(front.begin(), front.end(), w)) {
      ++bad;
    }
  }
  if (sel.winners.empty()) ++bad;
  return bad;
}

// (b) Scaling one axis by c > 0 leaves the winner index set unchanged.
inline int scaling_violations(const std::vector<ScoreTuple>& scores, double c, bool turn_axis) {
  if (max_product(scores) == 0) return 0;
  std::vector<ScoreTuple> scaled = scores;
  for (auto& s : scaled) (turn_axis ? s.s_t : s.s_e) *= c;
  return nash_select(scores).winners == nash_select(scaled).winners ? 0 : 1;
}

// (c) A swap-closed multiset yields a swap-closed winner set.
inline int symmetry_violations(std::vector<ScoreTuple> half) {
  std::vector<ScoreTuple> scores = half;
  for (const auto& s : half) scores.push_back({s.s_e, s.s_t, 0, 0});
  auto winners = winner_tuples(scores, nash_select(scores));
  int bad = 0;
  for (const auto& [t, e] : winners) {
    if (!winners.count({e, t})) ++bad;
  }
  return bad;
}

// (d) At fixed scores, a winner of B that survives into A ⊆ B wins in A.
inline int iia_violations(const std::vector<ScoreTuple>& b, std::mt19937& rng) {
  Selection sel_b = nash_select(b);
  std::size_t keep = sel_b.winners[std::uniform_int_distribution<std::size_t>(
      0, sel_b.winners.size() - 1)(rng)];
  std::vector<ScoreTuple> a;
  std::size_t keep_in_a = 0;
  std::bernoulli_distribution take(0.5);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i == keep) {
      keep_in_a = a.size();
      a.push_back(b[i]);
    } else if (take(rng)) {
      a.push_back(b[i]);
    }
  }
  Selection sel_a = nash_select(a);
  return std::binary_search(sel_a.winners.begin(), sel_a.winners.end(), keep_in_a) ? 0 : 1;
}

struct AxiomTally {
  int pareto = 0;
  int scaling = 0;
  int symmetry = 0;
  int iia = 0;
  int sets = 0;
  int iia_pairs = 0;
};

// The axiom suite over `sets` random score sets of size 2..50, with IIA
// checked on the first `iia_pairs` of them.
inline AxiomTally run_axiom_suite(unsigned seed, int sets, int iia_pairs) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_real_distribution<double> factor(0.1, 10.0);
  AxiomTally tally;
  for (int i = 0; i < sets; ++i) {
    auto scores = random_scores(rng, size(rng));
    tally.pareto += pareto_violations(scores);
    tally.scaling += scaling_violations(scores, factor(rng), i % 2 == 0);
    std::vector<ScoreTuple> half(scores.begin(),
                                 scores.begin() + static_cast<long>(scores.size() / 2 + 1));
    tally.symmetry += symmetry_violations(half);
    if (i < iia_pairs) {
      tally.iia += iia_violations(scores, rng);
      ++tally.iia_pairs;
    }
    ++tally.sets;
  }
  return tally;
}

}  // namespace scriptrev::testing
