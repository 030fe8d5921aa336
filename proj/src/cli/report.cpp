#include "presafe/cli.hpp"

#include <cmath>

namespace presafe::cli {

namespace {
double round3(double ms) { return std::round(ms * 1000.0) / 1000.0; }
}  // namespace

Json timings_json(const synthesis::Timings& t, double parse_ms) {
  Json j;
  j["parse"] = round3(parse_ms);
  j["automata"] = round3(t.automata_ms);
  j["inclusion"] = round3(t.inclusion_ms);
  j["synthesis"] = round3(t.synthesis_ms);
  return j;
}

Json fix_json(const synthesis::Fix& f) {
  Json j;
  j["kind"] = synthesis::fix_kind_name(f.kind);
  j["fix"] = f.str();
  return j;
}

Json iteration_json(const synthesis::Iteration& it) {
  Json j;
  j["index"] = it.index;
  j["verdict"] = inclusion::verdict_name(it.verdict);
  j["k"] = it.k;
  j["rounds"] = it.rounds;
  j["tuples"] = it.tuples;
  j["counterexample"] = it.counterexample;
  j["events"] = it.events;
  j["neighborhood"] = it.nhood;
  j["np_feasible"] = it.np_feasible;
  j["bad"] = it.bad;
  j["rho_g"] = it.rho_g;
  j["fixes"] = it.fixes;
  j["timings"] = timings_json(it.timings, 0);
  return j;
}

Json without_timings(Json j) {
  if (j.is_object()) {
    j.erase("timings");
    for (auto& [k, v] : j.items()) v = without_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timings(v);
  }
  return j;
}

}  // namespace presafe::cli
