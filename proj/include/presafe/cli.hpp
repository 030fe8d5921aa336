#pragma once

#include "presafe/synthesis.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace presafe::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum Exit : int { kOk = 0, kViolation = 1, kBudget = 2, kInputError = 3 };

struct RunConfig {
  std::string command;  // verify, synthesize, enumerate, dump-automata
  std::string input;
  std::size_t k_start = 2;
  std::size_t k_max = 8;
  std::size_t budget_tuples = 1000000;
  double timeout_s = 0;
  int unroll = 1;
  std::string domain = "0..1";
  int iterations = 20;
  std::string emit_automata;  // path prefix for automata dumps
  std::string report;         // report path; empty = none
  std::string out;            // program or listing path; empty = stdout
  // enumerate
  std::string mode = "np";         // np or p
  std::string level = "abstract";  // abstract or concrete
  std::size_t max_steps = 1000;
  std::size_t max_states = 100000;

  synthesis::Config synthesis_config() const;
  std::string check() const;  // empty when consistent
};

struct CommandResult {
  int exit_code = kOk;
  Json report;
  std::string output;  // patched program, listing or automaton dump
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_synthesize(const RunConfig& cfg);
CommandResult cmd_enumerate(const RunConfig& cfg);
CommandResult cmd_dump_automata(const RunConfig& cfg);

// dispatches, writes --report/--out files, prints to out/err; returns the exit code
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

Json timings_json(const synthesis::Timings& t, double parse_ms);
Json iteration_json(const synthesis::Iteration& it);
Json fix_json(const synthesis::Fix& f);
// report with every "timings" member removed, for byte comparisons
Json without_timings(Json j);

}  // namespace presafe::cli
