#pragma once

// Reading and writing dialogue plans in the RRL-subset interchange format
// (`.rrl.xml`). The grammar is documented in README.md.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptrev/plan.hpp"

namespace scriptrev::rrl {

class RrlError : public std::runtime_error {
 public:
  // line/column are 0 when the error is not tied to a source position.
  RrlError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // Message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Thrown when a document is well formed but the plan it describes breaks a
// plan invariant, or when serializing an invalid plan.
class InvalidPlanError : public RrlError {
 public:
  explicit InvalidPlanError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

DialoguePlan parse(std::string_view input);

// Canonical text: four sections, alphabetical attributes, two-space indent,
// acts in temporal order followed by the adjacency pairs.
std::string serialize(const DialoguePlan& plan);

DialoguePlan read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const DialoguePlan& plan);

}  // namespace scriptrev::rrl
