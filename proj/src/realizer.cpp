#include "scriptrev/realizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace scriptrev {

LexiconGap::LexiconGap(std::string key)
    : std::runtime_error("lexicon has no entry for '" + key + "'"), key_(std::move(key)) {}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw LexiconError("lexicon line " + std::to_string(line_no) +
                         ": expected key<TAB>phrase");
    }
    std::string key(line.substr(0, tab));
    if (lexicon.find(key)) {
      throw LexiconError("lexicon line " + std::to_string(line_no) + ": duplicate key '" +
                         key + "'");
    }
    lexicon.set(std::move(key), std::string(line.substr(tab + 1)));
  }
  return lexicon;
}

Lexicon Lexicon::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void Lexicon::set(std::string key, std::string phrase) {
  entries_[std::move(key)] = std::move(phrase);
}

std::optional<std::string> Lexicon::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::string& feature_token(const Condition& condition) {
  return condition.args.size() >= 2 ? condition.args[1] : condition.args.front();
}

namespace {

std::string join_and(const std::vector<std::string>& phrases) {
  std::string out;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    if (i) out += " and ";
    out += phrases[i];
  }
  return out;
}

bool same_facts(const SemanticContent& a, const SemanticContent& b) {
  return std::equal(a.conditions.begin(), a.conditions.end(), b.conditions.begin(),
                    b.conditions.end(), [](const Condition& x, const Condition& y) {
                      return x.predicate == y.predicate && feature_token(x) == feature_token(y);
                    });
}

std::optional<std::string> builtin_frame(std::string_view kind, std::string_view predicate,
                                         const SemanticContent& content) {
  if (kind == "answer") {
    bool positive = std::all_of(content.conditions.begin(), content.conditions.end(),
                                [](const Condition& c) { return c.polarity; });
    return positive ? "Yes." : "No.";
  }
  if (kind == "clarify_request") return "{}?";
  if (kind == "confirm") return "Yes, {}.";
  if (predicate == "attribute") {
    if (kind == "question") return "Does it have {}?";
    if (kind == "inform") return "It has {}.";
  }
  if (predicate == "property") {
    if (kind == "question") return "Is it {}?";
    if (kind == "inform") return "It is {}.";
  }
  return std::nullopt;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string sentence(const DialoguePlan& plan, const DialogueAct& act, const Lexicon& lexicon) {
  const std::string type(to_string(act.type));
  if (!act.content || act.content->conditions.empty()) {
    auto frame = lexicon.find("frame:" + type);
    if (!frame) throw LexiconGap("frame:" + type);
    return *frame;
  }
  const SemanticContent& content = *act.content;

  std::string kind = type;
  if (act.type == ActType::inform && act.reaction_to) {
    const DialogueAct* target = plan.find_act(*act.reaction_to);
    if (target && target->type == ActType::question && target->content &&
        same_facts(*target->content, content)) {
      kind = "answer";
    }
  }

  std::vector<std::string> phrases;
  for (const auto& cond : content.conditions) {
    const std::string& token = feature_token(cond);
    auto phrase = lexicon.find(type + ":" + token);
    if (!phrase) phrase = lexicon.find(token);
    if (!phrase) throw LexiconGap(token);
    phrases.push_back(*phrase);
  }

  const std::string& predicate = content.conditions.front().predicate;
  auto frame = lexicon.find("frame:" + kind + ":" + predicate);
  if (!frame) frame = builtin_frame(kind, predicate, content);
  if (!frame) throw LexiconGap("frame:" + kind + ":" + predicate);

  std::string out = *frame;
  if (auto slot = out.find("{}"); slot != std::string::npos) {
    out.replace(slot, 2, join_and(phrases));
  }
  return capitalize(std::move(out));
}

}  // namespace

std::string realize(const DialoguePlan& plan, const Lexicon& lexicon) {
  if (auto violations = validate(plan); !violations.empty()) {
    throw PlanError("cannot realize an invalid plan:\n" + describe(violations));
  }
  std::string out;
  for (const DialogueAct* act : plan.acts_in_order()) {
    std::string label;
    if (auto entry = lexicon.find("label:" + act->speaker)) {
      label = *entry;
    } else if (const Participant* p = plan.find_participant(act->speaker);
               p && !p->name.empty()) {
      label = p->name;
    } else {
      label = act->speaker;
    }
    out += label;
    out += ": ";
    out += sentence(plan, *act, lexicon);
    out += '\n';
  }
  return out;
}

DialoguePlan strip_track2(const DialoguePlan& plan) {
  DialoguePlan out = plan;
  auto on_track2 = [&](const std::string& id) {
    const DialogueAct* act = plan.find_act(id);
    return act && act->track == Track::track2;
  };
  for (const auto& pair : plan.pairs) {
    if (on_track2(pair.first)) out.inserted_count -= pair.subdialogues;
  }
  std::erase_if(out.pairs, [&](const AdjacencyPair& p) { return on_track2(p.first); });
  std::erase_if(out.ordering, on_track2);
  std::erase_if(out.acts, [](const DialogueAct& a) { return a.track == Track::track2; });
  return out;
}

}  // namespace scriptrev
