#include "scriptrev/revision.hpp"

#include <algorithm>

namespace scriptrev {

namespace {

DialogueAct& act_ref(DialoguePlan& plan, const std::string& id) {
  for (auto& act : plan.acts) {
    if (act.id == id) return act;
  }
  throw PlanError("unknown act '" + id + "'");
}

bool same_roles(const DialogueAct& x, const DialogueAct& y) {
  return x.speaker == y.speaker && x.addressee == y.addressee && x.type == y.type;
}

bool detachable(const DialoguePlan& plan, const AdjacencyPair& pair) {
  for (const auto& act : plan.acts) {
    if (!act.reaction_to || act.id == pair.second) continue;
    if (*act.reaction_to == pair.first || *act.reaction_to == pair.second) return false;
  }
  return true;
}

std::optional<SemanticContent> merge_content(const std::optional<SemanticContent>& a,
                                             const std::optional<SemanticContent>& b) {
  if (!a) return b;
  if (!b) return a;
  SemanticContent merged = *a;
  merged.conditions.insert(merged.conditions.end(), b->conditions.begin(),
                           b->conditions.end());
  return merged;
}

void sort_pairs(DialoguePlan& plan) {
  std::stable_sort(plan.pairs.begin(), plan.pairs.end(),
                   [&](const AdjacencyPair& x, const AdjacencyPair& y) {
                     return plan.position(x.first) < plan.position(y.first);
                   });
}

bool id_taken(const DialoguePlan& plan, const std::string& id) {
  return plan.find_act(id) || plan.find_pair(id);
}

}  // namespace

std::string describe(const AggrSite& site) {
  return "aggr(" + site.pair_a + "," + site.pair_b + ")";
}

std::string describe(const InsertSite& site) {
  return "insert(" + site.pair + "," + site.trigger_act + ")";
}

bool aggregable(const DialoguePlan& plan, const AdjacencyPair& a, const AdjacencyPair& b) {
  if (a.id == b.id || a.dimension != b.dimension) return false;
  const DialogueAct* a1 = plan.find_act(a.first);
  const DialogueAct* a2 = plan.find_act(a.second);
  const DialogueAct* b1 = plan.find_act(b.first);
  const DialogueAct* b2 = plan.find_act(b.second);
  if (!a1 || !a2 || !b1 || !b2) return false;
  if (!same_roles(*a1, *b1) || !same_roles(*a2, *b2)) return false;
  if (a1->track != b1->track) return false;
  auto pa = plan.position(a.first);
  auto pb = plan.position(b.first);
  const AdjacencyPair& later = pa < pb ? b : a;
  return detachable(plan, later);
}

std::vector<AggrSite> aggr_sites(const DialoguePlan& plan) {
  // plan.pairs is kept in temporal order, so index order is canonical order.
  std::vector<AggrSite> sites;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.pairs.size(); ++j) {
      if (aggregable(plan, plan.pairs[i], plan.pairs[j])) {
        sites.push_back({plan.pairs[i].id, plan.pairs[j].id});
      }
    }
  }
  return sites;
}

DialoguePlan apply_aggr(const DialoguePlan& plan, const AggrSite& site) {
  const AdjacencyPair* a = plan.find_pair(site.pair_a);
  const AdjacencyPair* b = plan.find_pair(site.pair_b);
  if (!a || !b || !(plan.position(a->first) < plan.position(b->first)) ||
      !aggregable(plan, *a, *b)) {
    throw PreconditionError("aggregation not applicable: " + describe(site));
  }
  const AdjacencyPair pair_a = *a;
  const AdjacencyPair pair_b = *b;

  DialoguePlan out = plan;
  const DialogueAct b1 = act_ref(out, pair_b.first);
  const DialogueAct b2 = act_ref(out, pair_b.second);
  DialogueAct& a1 = act_ref(out, pair_a.first);
  a1.content = merge_content(a1.content, b1.content);
  a1.emphasis = a1.emphasis || b1.emphasis;
  DialogueAct& a2 = act_ref(out, pair_a.second);
  a2.content = merge_content(a2.content, b2.content);
  a2.emphasis = a2.emphasis || b2.emphasis;

  auto removed = [&](const std::string& id) { return id == b1.id || id == b2.id; };
  std::erase_if(out.acts, [&](const DialogueAct& act) { return removed(act.id); });
  std::erase_if(out.ordering, removed);
  std::erase_if(out.pairs, [&](const AdjacencyPair& p) { return p.id == pair_b.id; });
  for (auto& p : out.pairs) {
    if (p.id == pair_a.id) {
      p.origin = PairOrigin::aggregated;
      p.subdialogues = pair_a.subdialogues + pair_b.subdialogues;
    }
  }
  return out;
}

std::vector<InsertSite> insert_sites(const DialoguePlan& plan) {
  std::vector<InsertSite> sites;
  for (const auto& pair : plan.pairs) {
    for (const auto* part : {&pair.first, &pair.second}) {
      const DialogueAct* act = plan.find_act(*part);
      if (act && act->emphasis) sites.push_back({pair.id, act->id});
    }
  }
  return sites;
}

DialoguePlan apply_insert(const DialoguePlan& plan, const InsertSite& site) {
  const AdjacencyPair* pair = plan.find_pair(site.pair);
  const DialogueAct* trigger = plan.find_act(site.trigger_act);
  if (!pair || !trigger || !trigger->emphasis || !trigger->content ||
      (pair->first != trigger->id && pair->second != trigger->id)) {
    throw PreconditionError("insertion not applicable: " + describe(site));
  }
  const DialogueAct& answer = *plan.find_act(pair->second);

  int k = 1;
  while (id_taken(plan, "s" + std::to_string(k)) ||
         id_taken(plan, "s" + std::to_string(k) + "_1") ||
         id_taken(plan, "s" + std::to_string(k) + "_2")) {
    ++k;
  }
  const std::string pair_id = "s" + std::to_string(k);

  SemanticContent echo;
  for (const auto& cond : trigger->content->conditions) {
    Condition copy;
    copy.predicate = cond.predicate;
    copy.args = cond.args;
    copy.polarity = cond.polarity;
    echo.conditions.push_back(std::move(copy));
  }

  DialogueAct ask;
  ask.id = pair_id + "_1";
  ask.type = ActType::clarify_request;
  ask.speaker = answer.addressee;
  ask.addressee = answer.speaker;
  ask.content = echo;
  ask.track = Track::track2;

  DialogueAct confirm;
  confirm.id = pair_id + "_2";
  confirm.type = ActType::confirm;
  confirm.speaker = answer.speaker;
  confirm.addressee = answer.addressee;
  confirm.content = echo;
  confirm.track = Track::track2;
  confirm.reaction_to = ask.id;

  DialoguePlan out = plan;
  act_ref(out, trigger->id).emphasis = false;

  // Skip elaborations (unpaired informs chained onto the answer).
  std::size_t at = *out.position(answer.id);
  while (at + 1 < out.ordering.size()) {
    const DialogueAct* next = out.find_act(out.ordering[at + 1]);
    if (!next || out.pair_of(next->id) || next->type != ActType::inform ||
        next->reaction_to != out.ordering[at]) {
      break;
    }
    ++at;
  }
  auto insert_at = out.ordering.begin() + static_cast<std::ptrdiff_t>(at + 1);
  out.ordering.insert(insert_at, {ask.id, confirm.id});
  out.acts.push_back(std::move(ask));
  out.acts.push_back(std::move(confirm));

  AdjacencyPair added;
  added.id = pair_id;
  added.first = pair_id + "_1";
  added.second = pair_id + "_2";
  added.dimension = pair->dimension;
  added.origin = PairOrigin::inserted;
  added.subdialogues = 1;
  out.pairs.push_back(std::move(added));
  sort_pairs(out);
  out.inserted_count += 1;
  return out;
}

}  // namespace scriptrev
