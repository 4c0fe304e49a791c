#include "scriptrev/rrl.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "scriptrev/xml.hpp"

namespace scriptrev::rrl {

RrlError::RrlError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(line ? std::to_string(line) + ":" + std::to_string(column) +
                                    ": " + what
                              : what),
      line_(line),
      column_(column),
      message_(what) {}

InvalidPlanError::InvalidPlanError(std::vector<Violation> violations)
    : RrlError(0, 0, "invalid dialogue plan:\n" + describe(violations)),
      violations_(std::move(violations)) {}

namespace {

constexpr std::string_view kSections[] = {"commonGround", "participants",
                                          "dialogueActs", "temporalOrdering"};

[[noreturn]] void fail(const xml::Element& at, const std::string& what) {
  throw RrlError(at.line, at.column, what);
}

std::string tag(const xml::Element& el) { return "<" + el.name + ">"; }

std::string required(const xml::Element& el, const std::string& attr) {
  auto it = el.attributes.find(attr);
  if (it == el.attributes.end()) fail(el, tag(el) + " lacks required attribute '" + attr + "'");
  return it->second;
}

std::string required_token(const xml::Element& el, const std::string& attr) {
  std::string value = required(el, attr);
  if (!is_token(value)) {
    fail(el, tag(el) + " attribute '" + attr + "' is not a token: '" + value + "'");
  }
  return value;
}

void require_leaf(const xml::Element& el) {
  if (!el.children.empty() || !el.text.empty()) fail(el, tag(el) + " must be empty");
}

void require_no_attributes(const xml::Element& el) {
  if (!el.attributes.empty()) {
    fail(el, tag(el) + " takes no attributes, found '" + el.attributes.begin()->first + "'");
  }
}

// Copies attributes not in `known` into `extras` under `prefix`.
void keep_unknown(const xml::Element& el, std::initializer_list<std::string_view> known,
                  const std::string& prefix, Extras& extras) {
  for (const auto& [key, value] : el.attributes) {
    if (std::find(known.begin(), known.end(), key) != known.end()) continue;
    if (prefix.empty() && key.find('.') != std::string::npos) {
      fail(el, tag(el) + " attribute name '" + key + "' contains '.'");
    }
    extras[prefix + key] = value;
  }
}

std::optional<double> unit_number(const std::string& text) {
  double value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  if (!(value >= 0.0 && value <= 1.0)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

const xml::Element* single_child(const xml::Element& parent, const xml::Element& child,
                                 const xml::Element* current) {
  if (current) fail(child, "duplicate " + tag(child) + " in " + tag(parent));
  return &child;
}

Participant read_person(const xml::Element& el) {
  Participant p;
  p.id = required_token(el, "id");
  keep_unknown(el, {"id"}, "", p.extras);
  const xml::Element* realname = nullptr;
  const xml::Element* personality = nullptr;
  const xml::Element* domain = nullptr;
  for (const auto& child : el.children) {
    if (child.name == "realname") {
      realname = single_child(el, child, realname);
    } else if (child.name == "personality") {
      personality = single_child(el, child, personality);
    } else if (child.name == "domainSpecificAttr") {
      domain = single_child(el, child, domain);
    } else {
      p.payload.push_back(child);
    }
  }
  if (realname) {
    require_leaf(*realname);
    if (auto it = realname->attributes.find("firstname"); it != realname->attributes.end()) {
      p.name = it->second;
    }
    keep_unknown(*realname, {"firstname"}, "realname.", p.extras);
  }
  if (personality) {
    require_leaf(*personality);
    for (const auto& [key, value] : personality->attributes) {
      if (auto number = unit_number(value)) {
        p.traits[key] = *number;
      } else {
        p.extras["personality." + key] = value;
      }
    }
  }
  if (!domain) fail(el, "<person id=\"" + p.id + "\"> lacks <domainSpecificAttr role=...>");
  require_leaf(*domain);
  std::string role = required(*domain, "role");
  auto parsed = parse_role(role);
  if (!parsed) fail(*domain, "unknown role '" + role + "'");
  p.role = *parsed;
  keep_unknown(*domain, {"role"}, "domainSpecificAttr.", p.extras);
  return p;
}

Condition read_condition(const xml::Element& el) {
  require_leaf(el);
  Condition c;
  c.predicate = required_token(el, "pred");
  if (el.name == "unaryCond") {
    c.args = {required_token(el, "argOne")};
    keep_unknown(el, {"pred", "argOne", "id", "polarity"}, "", c.extras);
  } else if (el.name == "binaryCond") {
    c.args = {required_token(el, "argOne"), required_token(el, "argTwo")};
    keep_unknown(el, {"pred", "argOne", "argTwo", "id", "polarity"}, "", c.extras);
  } else if (el.name == "ternaryCond") {
    c.args = {required_token(el, "argOne"), required_token(el, "argTwo"),
              required_token(el, "argThree")};
    keep_unknown(el, {"pred", "argOne", "argTwo", "argThree", "id", "polarity"}, "",
                 c.extras);
  } else if (el.name == "naryCond") {
    std::istringstream in(required(el, "args"));
    for (std::string arg; in >> arg;) {
      if (!is_token(arg)) fail(el, "<naryCond> argument is not a token: '" + arg + "'");
      c.args.push_back(arg);
    }
    if (c.args.empty()) fail(el, "<naryCond> has no arguments");
    keep_unknown(el, {"pred", "args", "id", "polarity"}, "", c.extras);
  } else {
    fail(el, "unknown condition element " + tag(el));
  }
  if (auto it = el.attributes.find("id"); it != el.attributes.end()) c.id = it->second;
  if (auto it = el.attributes.find("polarity"); it != el.attributes.end()) {
    if (it->second == "true") c.polarity = true;
    else if (it->second == "false") c.polarity = false;
    else fail(el, "polarity must be true or false");
  }
  return c;
}

SemanticContent read_content(const xml::Element& el) {
  SemanticContent content;
  if (auto it = el.attributes.find("id"); it != el.attributes.end()) content.id = it->second;
  keep_unknown(el, {"id"}, "", content.extras);
  if (!el.text.empty()) fail(el, "<semanticContent> has character data");
  if (el.children.empty()) return content;
  if (el.children.size() != 1 || el.children[0].name != "drs") {
    fail(el, "<semanticContent> must contain exactly one <drs>");
  }
  const xml::Element& drs = el.children[0];
  if (!drs.text.empty()) fail(drs, "<drs> has character data");
  if (auto it = drs.attributes.find("id"); it != drs.attributes.end()) content.drs_id = it->second;
  keep_unknown(drs, {"id"}, "drs.", content.extras);
  for (const auto& cond : drs.children) content.conditions.push_back(read_condition(cond));
  return content;
}

DialogueAct read_act(const xml::Element& el) {
  DialogueAct act;
  act.id = required_token(el, "id");
  keep_unknown(el, {"id", "emphasis", "track"}, "", act.extras);
  if (!el.text.empty()) fail(el, "<dialogueAct> has character data");
  if (auto it = el.attributes.find("emphasis"); it != el.attributes.end()) {
    if (it->second == "true") act.emphasis = true;
    else if (it->second != "false") fail(el, "emphasis must be true or false");
  }
  const xml::Element* domain = nullptr;
  const xml::Element* speaker = nullptr;
  const xml::Element* addressee = nullptr;
  const xml::Element* content = nullptr;
  const xml::Element* reaction = nullptr;
  for (const auto& child : el.children) {
    if (child.name == "domainSpecificAttr") domain = single_child(el, child, domain);
    else if (child.name == "speaker") speaker = single_child(el, child, speaker);
    else if (child.name == "addressee") addressee = single_child(el, child, addressee);
    else if (child.name == "semanticContent") content = single_child(el, child, content);
    else if (child.name == "reactionTo") reaction = single_child(el, child, reaction);
    else act.payload.push_back(child);
  }
  auto missing = [&](const char* what) {
    fail(el, "<dialogueAct id=\"" + act.id + "\"> lacks <" + what + ">");
  };
  if (!domain) missing("domainSpecificAttr type=...");
  if (!speaker) missing("speaker");
  if (!addressee) missing("addressee");

  require_leaf(*domain);
  std::string type = required(*domain, "type");
  auto parsed = parse_act_type(type);
  if (!parsed) fail(*domain, "unknown act type '" + type + "'");
  act.type = *parsed;
  keep_unknown(*domain, {"type"}, "domainSpecificAttr.", act.extras);

  require_leaf(*speaker);
  require_leaf(*addressee);
  act.speaker = required_token(*speaker, "id");
  act.addressee = required_token(*addressee, "id");
  if (content) act.content = read_content(*content);
  if (reaction) {
    require_leaf(*reaction);
    act.reaction_to = required_token(*reaction, "id");
  }

  bool metacommunication =
      act.type == ActType::clarify_request || act.type == ActType::confirm;
  act.track = metacommunication ? Track::track2 : Track::track1;
  if (auto it = el.attributes.find("track"); it != el.attributes.end()) {
    auto track = parse_track(it->second);
    if (!track) fail(el, "unknown track '" + it->second + "'");
    act.track = *track;
  }
  return act;
}

AdjacencyPair read_pair(const xml::Element& el) {
  require_leaf(el);
  AdjacencyPair pair;
  pair.id = required_token(el, "id");
  pair.first = required_token(el, "first");
  pair.second = required_token(el, "second");
  pair.dimension = required_token(el, "dimension");
  keep_unknown(el, {"id", "first", "second", "dimension", "origin", "subdialogues"}, "",
               pair.extras);
  if (auto it = el.attributes.find("origin"); it != el.attributes.end()) {
    auto origin = parse_pair_origin(it->second);
    if (!origin) fail(el, "unknown pair origin '" + it->second + "'");
    pair.origin = *origin;
  }
  pair.subdialogues = pair.origin == PairOrigin::inserted ? 1 : 0;
  if (auto it = el.attributes.find("subdialogues"); it != el.attributes.end()) {
    int n = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size() || n < 0) {
      fail(el, "subdialogues must be a non-negative integer");
    }
    pair.subdialogues = n;
  }
  return pair;
}

DialoguePlan read_plan(const xml::Element& root) {
  if (root.name != "dialogueScript") {
    fail(root, "root element must be <dialogueScript>, found " + tag(root));
  }
  if (!root.text.empty()) fail(root, "<dialogueScript> has character data");

  DialoguePlan plan;
  keep_unknown(root, {}, "", plan.extras);

  std::size_t next = 0;
  for (const auto& section : root.children) {
    auto known = std::find(std::begin(kSections), std::end(kSections), section.name);
    if (known == std::end(kSections)) {
      fail(section, "unknown top-level element " + tag(section));
    }
    auto index = static_cast<std::size_t>(known - std::begin(kSections));
    if (index < next) fail(section, tag(section) + " duplicated or out of order");
    if (index > next) {
      fail(section, "missing <" + std::string(kSections[next]) + "> before " + tag(section));
    }
    ++next;
    require_no_attributes(section);
    if (!section.text.empty()) fail(section, tag(section) + " has character data");
  }
  if (next < std::size(kSections)) {
    fail(root, "missing <" + std::string(kSections[next]) + "> section");
  }

  const auto& ground = root.children[0];
  const auto& people = root.children[1];
  const auto& acts = root.children[2];
  const auto& ordering = root.children[3];

  plan.common_ground = ground.children;

  std::set<std::string> participant_ids;
  for (const auto& el : people.children) {
    if (el.name != "person") fail(el, "unexpected " + tag(el) + " in <participants>");
    Participant p = read_person(el);
    if (!participant_ids.insert(p.id).second) fail(el, "duplicate participant id '" + p.id + "'");
    plan.participants.push_back(std::move(p));
  }

  std::unordered_map<std::string, const xml::Element*> act_elements;
  std::vector<const xml::Element*> pair_elements;
  std::set<std::string> pair_ids;
  for (const auto& el : acts.children) {
    if (el.name == "dialogueAct") {
      DialogueAct act = read_act(el);
      if (!act_elements.emplace(act.id, &el).second) {
        fail(el, "duplicate act id '" + act.id + "'");
      }
      plan.acts.push_back(std::move(act));
    } else if (el.name == "adjacencyPair") {
      AdjacencyPair pair = read_pair(el);
      if (!pair_ids.insert(pair.id).second) fail(el, "duplicate pair id '" + pair.id + "'");
      pair_elements.push_back(&el);
      plan.pairs.push_back(std::move(pair));
    } else {
      fail(el, "unexpected " + tag(el) + " in <dialogueActs>");
    }
  }

  for (const auto& act : plan.acts) {
    const auto& el = *act_elements.at(act.id);
    for (const auto* who : {&act.speaker, &act.addressee}) {
      if (!participant_ids.count(*who)) {
        fail(el, "act '" + act.id + "' names undeclared participant '" + *who + "'");
      }
    }
    if (act.reaction_to && !act_elements.count(*act.reaction_to)) {
      fail(el, "act '" + act.id + "' reacts to undeclared act '" + *act.reaction_to + "'");
    }
  }
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const auto& pair = plan.pairs[i];
    for (const auto* part : {&pair.first, &pair.second}) {
      if (!act_elements.count(*part)) {
        fail(*pair_elements[i],
             "pair '" + pair.id + "' names undeclared act '" + *part + "'");
      }
    }
  }

  if (ordering.children.size() != 1 || ordering.children[0].name != "sequence") {
    fail(ordering, "<temporalOrdering> must contain exactly one <sequence>");
  }
  const auto& sequence = ordering.children[0];
  require_no_attributes(sequence);
  if (!sequence.text.empty()) fail(sequence, "<sequence> has character data");
  std::set<std::string> ordered;
  for (const auto& el : sequence.children) {
    if (el.name != "act") fail(el, "unexpected " + tag(el) + " in <sequence>");
    require_leaf(el);
    std::string id = required_token(el, "id");
    if (el.attributes.size() != 1) fail(el, "<act> takes only an id attribute");
    if (!act_elements.count(id)) {
      fail(el, "temporalOrdering references undeclared act '" + id + "'");
    }
    if (!ordered.insert(id).second) fail(el, "act '" + id + "' ordered twice");
    plan.ordering.push_back(id);
  }

  std::stable_sort(plan.pairs.begin(), plan.pairs.end(),
                   [&](const AdjacencyPair& a, const AdjacencyPair& b) {
                     auto pa = plan.position(a.first).value_or(plan.ordering.size());
                     auto pb = plan.position(b.first).value_or(plan.ordering.size());
                     return pa < pb;
                   });
  for (const auto& pair : plan.pairs) plan.inserted_count += pair.subdialogues;

  if (auto violations = validate(plan); !violations.empty()) {
    throw InvalidPlanError(std::move(violations));
  }
  return plan;
}

// Splits extras into own attributes and per-child attribute maps.
void route_extras(const Extras& extras, std::map<std::string, std::string>& own,
                  std::map<std::string, std::map<std::string, std::string>>& children) {
  for (const auto& [key, value] : extras) {
    auto dot = key.find('.');
    if (dot == std::string::npos) {
      own[key] = value;
    } else {
      children[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
  }
}

xml::Element leaf(std::string name, std::map<std::string, std::string> attributes) {
  xml::Element el;
  el.name = std::move(name);
  el.attributes = std::move(attributes);
  return el;
}

xml::Element write_person(const Participant& p) {
  xml::Element el;
  el.name = "person";
  std::map<std::string, std::map<std::string, std::string>> child_attrs;
  route_extras(p.extras, el.attributes, child_attrs);
  el.attributes["id"] = p.id;

  auto realname = child_attrs["realname"];
  if (!p.name.empty()) realname["firstname"] = p.name;
  if (!realname.empty()) el.children.push_back(leaf("realname", realname));
  for (const auto& payload : p.payload) el.children.push_back(payload);
  auto personality = child_attrs["personality"];
  for (const auto& [trait, value] : p.traits) personality[trait] = format_number(value);
  if (!personality.empty()) el.children.push_back(leaf("personality", personality));
  auto domain = child_attrs["domainSpecificAttr"];
  domain["role"] = std::string(to_string(p.role));
  el.children.push_back(leaf("domainSpecificAttr", domain));
  return el;
}

xml::Element write_condition(const Condition& c) {
  xml::Element el;
  el.attributes = c.extras;
  static constexpr const char* kArgNames[] = {"argOne", "argTwo", "argThree"};
  static constexpr const char* kElementNames[] = {"unaryCond", "binaryCond", "ternaryCond"};
  if (c.args.size() >= 1 && c.args.size() <= 3) {
    el.name = kElementNames[c.args.size() - 1];
    for (std::size_t i = 0; i < c.args.size(); ++i) el.attributes[kArgNames[i]] = c.args[i];
  } else {
    el.name = "naryCond";
    std::string joined;
    for (const auto& arg : c.args) {
      if (!joined.empty()) joined += ' ';
      joined += arg;
    }
    el.attributes["args"] = joined;
  }
  el.attributes["pred"] = c.predicate;
  if (!c.id.empty()) el.attributes["id"] = c.id;
  if (!c.polarity) el.attributes["polarity"] = "false";
  return el;
}

xml::Element write_content(const SemanticContent& content) {
  xml::Element el;
  el.name = "semanticContent";
  std::map<std::string, std::map<std::string, std::string>> child_attrs;
  route_extras(content.extras, el.attributes, child_attrs);
  if (!content.id.empty()) el.attributes["id"] = content.id;
  auto drs_attrs = child_attrs["drs"];
  if (!content.drs_id.empty()) drs_attrs["id"] = content.drs_id;
  if (!drs_attrs.empty() || !content.conditions.empty()) {
    xml::Element drs = leaf("drs", drs_attrs);
    for (const auto& c : content.conditions) drs.children.push_back(write_condition(c));
    el.children.push_back(std::move(drs));
  }
  return el;
}

xml::Element write_act(const DialogueAct& act) {
  xml::Element el;
  el.name = "dialogueAct";
  std::map<std::string, std::map<std::string, std::string>> child_attrs;
  route_extras(act.extras, el.attributes, child_attrs);
  el.attributes["id"] = act.id;
  if (act.emphasis) el.attributes["emphasis"] = "true";
  bool metacommunication =
      act.type == ActType::clarify_request || act.type == ActType::confirm;
  Track default_track = metacommunication ? Track::track2 : Track::track1;
  if (act.track != default_track) el.attributes["track"] = std::string(to_string(act.track));

  auto domain = child_attrs["domainSpecificAttr"];
  domain["type"] = std::string(to_string(act.type));
  el.children.push_back(leaf("domainSpecificAttr", domain));
  el.children.push_back(leaf("speaker", {{"id", act.speaker}}));
  el.children.push_back(leaf("addressee", {{"id", act.addressee}}));
  if (act.content) el.children.push_back(write_content(*act.content));
  if (act.reaction_to) el.children.push_back(leaf("reactionTo", {{"id", *act.reaction_to}}));
  for (const auto& payload : act.payload) el.children.push_back(payload);
  return el;
}

xml::Element write_pair(const AdjacencyPair& pair) {
  xml::Element el = leaf("adjacencyPair", pair.extras);
  el.attributes["id"] = pair.id;
  el.attributes["first"] = pair.first;
  el.attributes["second"] = pair.second;
  el.attributes["dimension"] = pair.dimension;
  el.attributes["origin"] = std::string(to_string(pair.origin));
  if (pair.origin == PairOrigin::aggregated && pair.subdialogues > 0) {
    el.attributes["subdialogues"] = std::to_string(pair.subdialogues);
  }
  return el;
}

}  // namespace

DialoguePlan parse(std::string_view input) {
  xml::Element root;
  try {
    root = xml::parse_document(input);
  } catch (const xml::ParseError& e) {
    throw RrlError(e.line(), e.column(), e.message());
  }
  return read_plan(root);
}

std::string serialize(const DialoguePlan& plan) {
  if (auto violations = validate(plan); !violations.empty()) {
    throw InvalidPlanError(std::move(violations));
  }
  xml::Element root = leaf("dialogueScript", plan.extras);

  xml::Element ground = leaf("commonGround", {});
  ground.children = plan.common_ground;
  root.children.push_back(std::move(ground));

  xml::Element people = leaf("participants", {});
  for (const auto& p : plan.participants) people.children.push_back(write_person(p));
  root.children.push_back(std::move(people));

  xml::Element acts = leaf("dialogueActs", {});
  for (const DialogueAct* act : plan.acts_in_order()) acts.children.push_back(write_act(*act));
  for (const auto& pair : plan.pairs) acts.children.push_back(write_pair(pair));
  root.children.push_back(std::move(acts));

  xml::Element sequence = leaf("sequence", {});
  for (const auto& id : plan.ordering) sequence.children.push_back(leaf("act", {{"id", id}}));
  xml::Element ordering = leaf("temporalOrdering", {});
  ordering.children.push_back(std::move(sequence));
  root.children.push_back(std::move(ordering));

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml::write_element(out, root, 0);
  return out;
}

DialoguePlan read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RrlError(0, 0, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const InvalidPlanError&) {
    throw;
  } catch (const RrlError& e) {
    throw RrlError(e.line(), e.column(), path.string() + ": " + e.message());
  }
}

void write_file(const std::filesystem::path& path, const DialoguePlan& plan) {
  std::string text = serialize(plan);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RrlError(0, 0, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace scriptrev::rrl
