#pragma once

// The `scriptrev` command: parse a start plan, enumerate its revisions,
// score and arbitrate, then write the chosen plan(s), a score report and
// optionally a transcript.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "scriptrev/arbitration.hpp"
#include "scriptrev/plan.hpp"
#include "scriptrev/search.hpp"

namespace scriptrev::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kCeiling = 3,
  kLexiconGap = 4,
};

struct RunConfig {
  std::filesystem::path input_path;
  ConstraintSetting setting;
  ArbitrationKind plan = ArbitrationKind::nash;
  std::optional<std::filesystem::path> output_plan_path;
  std::optional<std::filesystem::path> report_path;
  std::optional<std::filesystem::path> transcript_path;
  std::optional<std::filesystem::path> lexicon_path;
  std::size_t member_ceiling = kDefaultMemberCeiling;
  bool dump_space = false;  // edge list to the error stream
};

// Where the i-th winner goes when several are emitted: "out.rrl.xml" becomes
// "out.<index>.rrl.xml", other names get ".<index>" before their extension.
std::filesystem::path indexed_path(const std::filesystem::path& base, std::size_t index);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, then calls run().
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scriptrev::cli
