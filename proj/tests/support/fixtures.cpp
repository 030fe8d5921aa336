#include "fixtures.hpp"

#include "oracles.hpp"

#include <stdexcept>

namespace fixtures {

using presafe::synthesis::Outcome;

std::string corpus_path(const std::string& name) { return std::string(PRESAFE_CORPUS_DIR) + "/" + name + ".w"; }

presafe::wlang::Program load(const std::string& name) {
  auto p = presafe::wlang::parse_file(corpus_path(name));
  presafe::wlang::validate(p);
  return p;
}

const std::vector<CorpusCase>& corpus() {
  static const std::vector<CorpusCase> cases = {
      {"running_example", "single-sided atomicity", Outcome::Synthesized, "lock"},
      {"fig1a", "double-sided atomicity", Outcome::Synthesized, "lock2"},
      {"check_then_act", "single-sided atomicity", Outcome::Synthesized, "lock"},
      {"counter", "double-sided atomicity", Outcome::Synthesized, "lock2"},
      {"snapshot", "double-sided atomicity", Outcome::Synthesized, "lock2"},
      {"publish", "double-sided atomicity", Outcome::Synthesized, "lock2"},
      {"signal_early", "ordering", Outcome::Synthesized, "reorder"},
      {"irq_status", "ordering", Outcome::Synthesized, "reorder"},
      {"independent", "already safe", Outcome::Safe, "none"},
      {"running_example_locked", "already safe", Outcome::Safe, "none"},
      {"cycle3", "no pattern", Outcome::PatternFailure, "none"},
  };
  return cases;
}

std::vector<presafe::AbstractObservable> driver_race() {
  using presafe::Access;
  auto A = [](int t) { return presafe::AbstractObservable{t, Access::Read, "open", {t, "2"}}; };
  auto B = [](int t) { return presafe::AbstractObservable{t, Access::Write, presafe::dev_variable("dev"), {t, "3"}}; };
  auto C = [](int t) { return presafe::AbstractObservable{t, Access::Read, "open", {t, "5"}}; };
  auto D = [](int t) { return presafe::AbstractObservable{t, Access::Write, "open", {t, "5"}}; };
  return {A(1), A(2), B(1), C(1), D(1), B(2), C(2), D(2)};
}

std::string DriverAnalysis::name(int event) const {
  const auto& e = cex.events[event];
  std::string letter = e.location.label == "2" ? "A" : e.location.label == "3" ? "B" : e.access == presafe::Access::Read ? "C" : "D";
  return "T" + std::to_string(e.tid) + "." + letter;
}

std::string DriverAnalysis::render(const presafe::synthesis::Trace& t) const {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ";" : "") + name(t[i]);
  return s;
}

int DriverAnalysis::index(const std::string& n) const {
  for (std::size_t i = 0; i < cex.events.size(); ++i)
    if (name(static_cast<int>(i)) == n) return static_cast<int>(i);
  throw std::out_of_range(n);
}

DriverAnalysis driver_analysis() {
  using namespace presafe;
  DriverAnalysis d;
  d.program = load("running_example");
  d.symbols = std::make_shared<automata::SymbolTable>();
  d.np = automata::build_abstract_automaton(d.program, Scheduling::NonPreemptive, 1, d.symbols);
  d.p = automata::build_abstract_automaton(d.program, Scheduling::Preemptive, 1, d.symbols);
  auto tracked = [](const AbstractObservable& o) { return o.variable == "open" || o.variable == dev_variable("dev"); };
  auto word = oracle::word_with_projection(*d.p, *d.symbols, tracked, driver_race());
  if (!word) throw std::runtime_error("driver race not realizable");
  d.cex = synthesis::analyze_counterexample(*word, *d.symbols);
  d.nhood = synthesis::neighborhood(d.cex.events);
  d.cls = synthesis::classify_traces(d.nhood, d.cex, *d.np, *d.p);
  return d;
}

presafe::automata::ExplicitNfa example_b() {
  presafe::automata::ExplicitNfa b;
  auto s0 = b.add_state(true, false);
  auto s1 = b.add_state();
  auto s2 = b.add_state(false, true);
  b.add_edge(s0, 0, s1);
  b.add_edge(s1, 1, s2);
  b.add_edge(s0, 1, s2);
  return b;
}

}  // namespace fixtures
