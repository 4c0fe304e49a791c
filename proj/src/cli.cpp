#include "scriptrev/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "scriptrev/realizer.hpp"
#include "scriptrev/rrl.hpp"

namespace scriptrev::cli {

std::filesystem::path indexed_path(const std::filesystem::path& base, std::size_t index) {
  std::string name = base.filename().string();
  const std::string suffix = "." + std::to_string(index);
  constexpr std::string_view kRrl = ".rrl.xml";
  if (name.size() > kRrl.size() && name.ends_with(kRrl)) {
    name.insert(name.size() - kRrl.size(), suffix);
  } else if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) {
    name.insert(dot, suffix);
  } else {
    name += suffix;
  }
  return base.parent_path() / name;
}

namespace {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw OutputError("cannot write '" + path.string() + "'");
  file << text;
  if (!file.flush()) throw OutputError("failed writing '" + path.string() + "'");
}

std::string format_winner(const PlanSpace& space, const ScoredSpace& scored, std::size_t i) {
  const ScoreTuple& s = scored.scores[i];
  char buf[160];
  std::snprintf(buf, sizeof buf, "\tindex=%zu\traw_turns=%d\traw_emph=%d\ts_t=%.6f\ts_e=%.6f\n",
                i, s.raw_turns, s.raw_emph, s.s_t, s.s_e);
  return "winner\t" + short_key(space.keys[i]) + buf;
}

Selection sequential_selection(const PlanSpace& space, const DialoguePlan& start,
                               ConstraintSetting setting, PhaseOrder order) {
  SequentialResult result = sequential_revise(start, setting, order);
  auto index = space.index_of(canonical_form(result.plan));
  if (!index) throw std::logic_error("sequential result lies outside the enumerated space");
  Selection sel;
  sel.winners = {*index};
  sel.first = *index;
  return sel;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  DialoguePlan start;
  try {
    start = rrl::read_file(config.input_path);
  } catch (const rrl::InvalidPlanError& e) {
    err << config.input_path.string() << ": " << e.message() << '\n';
    return kInputError;
  } catch (const rrl::RrlError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  std::optional<Lexicon> lexicon;
  if (config.lexicon_path) {
    try {
      lexicon = Lexicon::read_file(*config.lexicon_path);
    } catch (const LexiconError& e) {
      err << config.lexicon_path->string() << ": " << e.what() << '\n';
      return kInputError;
    }
  }

  PlanSpace space;
  try {
    space = enumerate_closure(start, config.member_ceiling);
  } catch (const CeilingExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCeiling;
  }
  if (config.dump_space) err << dump_edges(space);

  ScoredSpace scored = score_space(space, config.setting);
  Selection selection;
  switch (config.plan) {
    case ArbitrationKind::nash: selection = nash_select(scored.scores); break;
    case ArbitrationKind::sum: selection = sum_select(scored.scores); break;
    case ArbitrationKind::pareto_all:
      selection.winners = scored.front;
      selection.first = scored.front.front();
      break;
    case ArbitrationKind::sequential_insert_first:
      selection = sequential_selection(space, start, config.setting, PhaseOrder::insert_first);
      break;
    case ArbitrationKind::sequential_aggr_first:
      selection = sequential_selection(space, start, config.setting, PhaseOrder::aggr_first);
      break;
  }

  const bool many = config.plan == ArbitrationKind::pareto_all;
  const std::vector<std::size_t> emitted =
      many ? selection.winners : std::vector<std::size_t>{selection.first};

  std::map<std::size_t, std::string> transcripts;
  if (config.transcript_path) {
    if (!lexicon) {
      err << "error: --transcript requires --lexicon\n";
      return kUsage;
    }
    try {
      for (std::size_t i : emitted) transcripts[i] = realize(space.members[i], *lexicon);
    } catch (const LexiconGap& e) {
      err << "error: " << e.what() << '\n';
      return kLexiconGap;
    }
  }

  try {
    for (std::size_t i : emitted) {
      if (config.output_plan_path) {
        auto path = many ? indexed_path(*config.output_plan_path, i) : *config.output_plan_path;
        write_text(path, rrl::serialize(space.members[i]));
      }
      if (config.transcript_path) {
        auto path = many ? indexed_path(*config.transcript_path, i) : *config.transcript_path;
        write_text(path, transcripts[i]);
      }
    }
    if (config.report_path) {
      write_text(*config.report_path,
                 score_report(space, scored, config.setting, config.plan, selection));
    }
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  out << "members\t" << space.members.size() << '\n';
  for (std::size_t i : emitted) out << format_winner(space, scored, i);
  return kOk;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Revise a dialogue plan under TURN/EMPH constraints", "scriptrev"};
  const std::map<std::string, Polarity> polarities{{"max", Polarity::max},
                                                   {"min", Polarity::min}};
  const std::map<std::string, ArbitrationKind> kinds{
      {"nash", ArbitrationKind::nash},
      {"sum", ArbitrationKind::sum},
      {"pareto", ArbitrationKind::pareto_all},
      {"seq-insert-first", ArbitrationKind::sequential_insert_first},
      {"seq-aggr-first", ArbitrationKind::sequential_aggr_first}};

  std::string input;
  std::string turn = "max", emph = "max", plan = "nash";
  std::string out_path, report_path, transcript_path, lexicon_path;
  app.add_option("input", input, "Start plan (.rrl.xml)")->required();
  app.add_option("--turn", turn, "TURN constraint")
      ->check(CLI::IsMember(polarities))
      ->capture_default_str();
  app.add_option("--emph", emph, "EMPH constraint")
      ->check(CLI::IsMember(polarities))
      ->capture_default_str();
  app.add_option("--plan", plan, "Arbitration plan")
      ->check(CLI::IsMember(kinds))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the winning plan here");
  app.add_option("--report", report_path, "Write the score report here");
  app.add_option("--transcript", transcript_path, "Write the winner's transcript here");
  app.add_option("--lexicon", lexicon_path, "Lexicon for --transcript");
  app.add_option("--ceiling", config.member_ceiling, "Maximum number of plans to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--dump-space", config.dump_space, "Print the revision graph to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  config.input_path = input;
  config.setting = {polarities.at(turn), polarities.at(emph)};
  config.plan = kinds.at(plan);
  if (!out_path.empty()) config.output_plan_path = out_path;
  if (!report_path.empty()) config.report_path = report_path;
  if (!transcript_path.empty()) config.transcript_path = transcript_path;
  if (!lexicon_path.empty()) config.lexicon_path = lexicon_path;
  return run(config, out, err);
}

}  // namespace scriptrev::cli
