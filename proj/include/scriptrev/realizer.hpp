#pragma once

// Template realization of a dialogue plan as a plain-text transcript, one
// "LABEL: sentence" line per act.
//
// Lexicon files hold one `key<TAB>phrase` entry per line ('#' starts a
// comment line). Keys:
//   <token>                     phrase for a condition's feature token
//   <act_type>:<token>          phrase used only by acts of that type
//   frame:<kind>:<predicate>    sentence frame; "{}" is replaced by the phrases
//   frame:<act_type>            sentence for an act without content
//   label:<participant>         speaker label (defaults to the participant's name)
// A frame kind is an act type, or "answer" for an inform that answers a
// question about the same facts.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scriptrev/plan.hpp"

namespace scriptrev {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Realization needed a lexicon key that is absent.
class LexiconGap : public std::runtime_error {
 public:
  explicit LexiconGap(std::string key);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class Lexicon {
 public:
  static Lexicon parse(std::string_view text);
  static Lexicon read_file(const std::filesystem::path& path);

  void set(std::string key, std::string phrase);
  std::optional<std::string> find(const std::string& key) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Token a condition is realized by: its second argument when it has one
// (the first is the entity variable), otherwise its only argument.
const std::string& feature_token(const Condition& condition);

std::string realize(const DialoguePlan& plan, const Lexicon& lexicon);

// The plan without track-2 acts and their pairs.
DialoguePlan strip_track2(const DialoguePlan& plan);

}  // namespace scriptrev
