#include "scriptrev/search.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "scriptrev/revision.hpp"

namespace scriptrev {

namespace {

// Length-prefixed so that arbitrary text cannot collide with separators.
void field(std::string& out, std::string_view value) {
  out += std::to_string(value.size());
  out += ':';
  out += value;
}

void encode_map(std::string& out, const Extras& extras) {
  out += '{';
  for (const auto& [k, v] : extras) {
    field(out, k);
    field(out, v);
  }
  out += '}';
}

void encode_element(std::string& out, const xml::Element& el) {
  out += '<';
  field(out, el.name);
  encode_map(out, el.attributes);
  field(out, el.text);
  for (const auto& child : el.children) encode_element(out, child);
  out += '>';
}

}  // namespace

std::string canonical_form(const DialoguePlan& plan) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < plan.ordering.size(); ++i) pos.emplace(plan.ordering[i], i);

  std::string out;
  out.reserve(256 + 96 * plan.acts.size());
  out += "X";
  encode_map(out, plan.extras);
  out += "\nG";
  for (const auto& el : plan.common_ground) encode_element(out, el);
  for (const auto& p : plan.participants) {
    out += "\nP";
    field(out, p.id);
    field(out, p.name);
    field(out, to_string(p.role));
    for (const auto& [trait, value] : p.traits) {
      field(out, trait);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%a", value);
      field(out, buf);
    }
    encode_map(out, p.extras);
    for (const auto& el : p.payload) encode_element(out, el);
  }
  for (const DialogueAct* act : plan.acts_in_order()) {
    out += "\nA";
    field(out, to_string(act->type));
    field(out, act->speaker);
    field(out, act->addressee);
    out += act->track == Track::track1 ? '1' : '2';
    out += act->emphasis ? '!' : '.';
    if (act->reaction_to) {
      auto it = pos.find(*act->reaction_to);
      out += 'r';
      out += it == pos.end() ? std::string("?") : std::to_string(it->second);
    } else {
      out += '-';
    }
    encode_map(out, act->extras);
    if (act->content) {
      out += 'C';
      encode_map(out, act->content->extras);
      for (const auto& cond : act->content->conditions) {
        out += cond.polarity ? '+' : '~';
        field(out, cond.predicate);
        out += std::to_string(cond.args.size());
        for (const auto& arg : cond.args) field(out, arg);
        encode_map(out, cond.extras);
      }
    }
    for (const auto& el : act->payload) encode_element(out, el);
  }
  for (const auto& pair : plan.pairs) {
    out += "\nR";
    out += std::to_string(pos.at(pair.first));
    out += ',';
    out += std::to_string(pos.at(pair.second));
    out += ',';
    field(out, pair.dimension);
    field(out, to_string(pair.origin));
    out += std::to_string(pair.subdialogues);
    encode_map(out, pair.extras);
  }
  return out;
}

std::string short_key(const std::string& canonical) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::optional<std::size_t> PlanSpace::index_of(const std::string& key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys.begin());
}

CeilingExceeded::CeilingExceeded(std::size_t ceiling)
    : std::runtime_error("plan space exceeds the member ceiling of " +
                         std::to_string(ceiling)),
      ceiling_(ceiling) {}

PlanSpace enumerate_closure(const DialoguePlan& start, std::size_t ceiling) {
  struct RawEdge {
    std::string from;
    std::string to;
    OperatorTag op;
    std::string site;
  };
  std::map<std::string, DialoguePlan> seen;
  std::vector<RawEdge> raw_edges;
  std::deque<const std::pair<const std::string, DialoguePlan>*> frontier;

  auto visit = [&](DialoguePlan plan) -> const std::string& {
    std::string key = canonical_form(plan);
    auto [it, inserted] = seen.try_emplace(std::move(key), std::move(plan));
    if (inserted) {
      if (seen.size() > ceiling) throw CeilingExceeded(ceiling);
      frontier.push_back(&*it);
    }
    return it->first;
  };

  const std::string start_key = visit(start);
  while (!frontier.empty()) {
    const auto* entry = frontier.front();
    frontier.pop_front();
    const std::string& key = entry->first;
    const DialoguePlan& plan = entry->second;
    for (const auto& site : aggr_sites(plan)) {
      const std::string& to = visit(apply_aggr(plan, site));
      raw_edges.push_back({key, to, OperatorTag::aggr, describe(site)});
    }
    for (const auto& site : insert_sites(plan)) {
      const std::string& to = visit(apply_insert(plan, site));
      raw_edges.push_back({key, to, OperatorTag::insert, describe(site)});
    }
  }

  PlanSpace space;
  space.keys.reserve(seen.size());
  space.members.reserve(seen.size());
  for (auto& [key, plan] : seen) {
    space.keys.push_back(key);
    space.members.push_back(std::move(plan));
  }
  space.start = *space.index_of(start_key);
  space.edges.reserve(raw_edges.size());
  for (auto& e : raw_edges) {
    space.edges.push_back({*space.index_of(e.from), *space.index_of(e.to), e.op,
                           std::move(e.site)});
  }
  return space;
}

int longest_derivation(const PlanSpace& space) {
  std::vector<std::vector<std::size_t>> out(space.members.size());
  for (const auto& e : space.edges) out[e.from].push_back(e.to);
  // Every step strictly lowers (marks, pairs), so the graph is acyclic.
  std::vector<int> memo(space.members.size(), -1);
  std::function<int(std::size_t)> depth = [&](std::size_t node) {
    if (memo[node] >= 0) return memo[node];
    int best = 0;
    for (std::size_t next : out[node]) best = std::max(best, 1 + depth(next));
    memo[node] = best;
    return best;
  };
  return depth(space.start);
}

std::string dump_edges(const PlanSpace& space) {
  std::vector<std::string> short_keys;
  short_keys.reserve(space.keys.size());
  for (const auto& key : space.keys) short_keys.push_back(short_key(key));
  std::string out;
  for (const auto& e : space.edges) {
    out += short_keys[e.from];
    out += '\t';
    out += e.op == OperatorTag::aggr ? "aggr" : "insert";
    out += '\t';
    out += e.site;
    out += '\t';
    out += short_keys[e.to];
    out += '\n';
  }
  return out;
}

namespace {

void explore(const DialoguePlan& plan, BranchOrder order, std::set<std::string>& found) {
  if (!found.insert(canonical_form(plan)).second) return;
  auto inserts = [&] {
    for (const auto& site : insert_sites(plan)) {
      explore(apply_insert(plan, site), order, found);
    }
  };
  auto aggregations = [&] {
    for (const auto& site : aggr_sites(plan)) {
      explore(apply_aggr(plan, site), order, found);
    }
  };
  if (order == BranchOrder::insert_first) {
    inserts();
    aggregations();
  } else {
    aggregations();
    inserts();
  }
}

}  // namespace

std::set<std::string> oracle_closure(const DialoguePlan& start, BranchOrder order) {
  std::set<std::string> found;
  explore(start, order, found);
  return found;
}

}  // namespace scriptrev
