#pragma once

#include "presafe/synthesis.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fixtures {

std::string corpus_path(const std::string& name);  // name without extension
presafe::wlang::Program load(const std::string& name);

struct CorpusCase {
  std::string name;
  std::string bug_class;
  presafe::synthesis::Outcome outcome;
  std::string fix_type;  // kind of the first inferred fix, or "none"
};

// every synthesis subject in corpus/
const std::vector<CorpusCase>& corpus();

// the running example's two-caller race: T1.A;T2.A;T1.B;T1.C;T1.D;T2.B;T2.C;T2.D
std::vector<presafe::AbstractObservable> driver_race();
// the driver race replayed through the running example's automata and analysed
struct DriverAnalysis {
  presafe::wlang::Program program;
  std::shared_ptr<presafe::automata::SymbolTable> symbols;
  std::shared_ptr<presafe::automata::ProgramAutomaton> np, p;
  presafe::synthesis::Counterexample cex;
  std::vector<presafe::synthesis::Trace> nhood;
  presafe::synthesis::Classification cls;
  // short names T<tid>.<A|B|C|D> of the projected events
  std::string name(int event) const;
  std::string render(const presafe::synthesis::Trace& t) const;
  int index(const std::string& name) const;
};
DriverAnalysis driver_analysis();

// two-word example: alphabet {alpha=0, beta=1}, L(B) = {alpha beta, beta}
presafe::automata::ExplicitNfa example_b();

}  // namespace fixtures
