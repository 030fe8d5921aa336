#include "presafe/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace presafe::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Loaded {
  std::string text;
  wlang::Program program;
  double parse_ms = 0;
};

Loaded load(const std::string& path) {
  auto t0 = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Loaded l;
  l.text = ss.str();
  l.program = wlang::parse_program(l.text);
  wlang::validate(l.program);
  l.parse_ms = ms_since(t0);
  return l;
}

Json base(const RunConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = cfg.command;
  j["input"] = cfg.input;
  return j;
}

CommandResult input_error(const RunConfig& cfg, const std::string& msg) {
  CommandResult r;
  r.exit_code = kInputError;
  r.report = base(cfg);
  r.report["verdict"] = "error";
  r.report["error"] = msg;
  return r;
}

template <class F>
CommandResult guarded(const RunConfig& cfg, F body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return input_error(cfg, std::string("parse error: ") + e.what());
  } catch (const SemanticError& e) {
    return input_error(cfg, std::string("invalid program: ") + e.what());
  } catch (const std::runtime_error& e) {
    return input_error(cfg, e.what());
  }
}

std::string dump_pair(const wlang::Program& p, int unroll) {
  auto symbols = std::make_shared<automata::SymbolTable>();
  auto np = automata::build_abstract_automaton(p, Scheduling::NonPreemptive, unroll, symbols);
  auto pa = automata::build_abstract_automaton(p, Scheduling::Preemptive, unroll, symbols);
  auto name = [&](automata::SymbolId s) { return symbols->name(s); };
  std::ostringstream out;
  out << "## np\n";
  automata::dump_automaton(*np, name, out);
  out << "## p\n";
  automata::dump_automaton(*pa, name, out);
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace

synthesis::Config RunConfig::synthesis_config() const {
  synthesis::Config c;
  c.unroll = unroll;
  c.k_start = k_start;
  c.k_max = k_max;
  c.budget.max_tuples = budget_tuples;
  c.budget.timeout_s = timeout_s;
  c.max_iterations = iterations;
  return c;
}

std::string RunConfig::check() const {
  if (k_start < 1) return "--k-start must be at least 1";
  if (k_start > k_max) return "--k-start must not exceed --k-max";
  if (budget_tuples == 0) return "--budget-tuples must be positive";
  if (timeout_s < 0) return "--timeout-s must not be negative";
  if (unroll < 0) return "--unroll must not be negative";
  if (iterations < 1) return "--iterations must be positive";
  if (mode != "np" && mode != "p") return "--mode must be np or p";
  if (level != "abstract" && level != "concrete") return "--level must be abstract or concrete";
  return "";
}

CommandResult cmd_verify(const RunConfig& cfg) {
  return guarded(cfg, [&] {
    Loaded in = load(cfg.input);
    auto v = synthesis::verify(in.program, in.program, cfg.synthesis_config());
    CommandResult r;
    r.report = base(cfg);
    r.report["verdict"] = inclusion::verdict_name(v.result.verdict);
    r.report["k_max_reached"] = v.result.k;
    if (!v.result.reason.empty()) r.report["reason"] = v.result.reason;
    synthesis::Iteration it;
    it.index = 1;
    it.verdict = v.result.verdict;
    it.k = v.result.k;
    it.rounds = v.result.rounds;
    it.tuples = v.result.tuples;
    it.counterexample = v.counterexample;
    it.timings = v.timings;
    r.report["iterations"] = Json::array({iteration_json(it)});
    r.report["fixes"] = Json::array();
    r.report["timings"] = timings_json(v.timings, in.parse_ms);
    if (!cfg.emit_automata.empty()) write_file(cfg.emit_automata, dump_pair(in.program, cfg.unroll));
    switch (v.result.verdict) {
      case inclusion::Verdict::Holds: r.exit_code = kOk; break;
      case inclusion::Verdict::Counterexample: r.exit_code = kViolation; break;
      default: r.exit_code = kBudget; break;
    }
    return r;
  });
}

CommandResult cmd_synthesize(const RunConfig& cfg) {
  return guarded(cfg, [&] {
    Loaded in = load(cfg.input);
    auto res = synthesis::synthesize(in.program, cfg.synthesis_config());
    const auto& rep = res.report;
    CommandResult r;
    r.report = base(cfg);
    r.report["verdict"] = synthesis::outcome_name(rep.outcome);
    r.report["k_max_reached"] = rep.k_max_reached;
    Json its = Json::array();
    for (const auto& it : rep.iterations) its.push_back(iteration_json(it));
    r.report["iterations"] = its;
    Json fixes = Json::array();
    for (const auto& f : rep.fixes) fixes.push_back(fix_json(f));
    r.report["fixes"] = fixes;
    r.report["diagnostics"] = rep.diagnostics;
    if (rep.success()) {
      r.output = rep.fixes.empty() ? in.text : wlang::pretty_print(res.program);
      r.report["program"] = r.output;
      auto dl = synthesis::detect_deadlocks(res.program, cfg.unroll);
      r.report["deadlock_warnings"] = dl.warnings();
    }
    r.report["timings"] = timings_json(rep.timings, in.parse_ms);
    if (!cfg.emit_automata.empty()) write_file(cfg.emit_automata, dump_pair(res.program, cfg.unroll));
    switch (rep.outcome) {
      case synthesis::Outcome::Safe:
      case synthesis::Outcome::Synthesized: r.exit_code = kOk; break;
      case synthesis::Outcome::Budget:
      case synthesis::Outcome::IterationCap: r.exit_code = kBudget; break;
      default: r.exit_code = kViolation; break;
    }
    return r;
  });
}

CommandResult cmd_enumerate(const RunConfig& cfg) {
  return guarded(cfg, [&] {
    Loaded in = load(cfg.input);
    semantics::EnumerationConfig ec;
    ec.scheduling = cfg.mode == "p" ? Scheduling::Preemptive : Scheduling::NonPreemptive;
    ec.level = cfg.level == "concrete" ? semantics::Level::Concrete : semantics::Level::Abstract;
    ec.unroll = cfg.unroll;
    ec.max_steps = cfg.max_steps;
    ec.max_states = cfg.max_states;
    ec.domain = semantics::parse_domain(cfg.domain);
    auto t0 = Clock::now();
    CommandResult r;
    std::ostringstream listing;
    auto fill = [&](const auto& res) {
      for (const auto& seq : res.sequences) {
        for (std::size_t i = 0; i < seq.size(); ++i) listing << (i ? " " : "") << seq[i].str();
        listing << "\n";
      }
      r.report["sequences"] = res.sequences.size();
      r.report["states"] = res.states;
      r.report["deadlocks"] = res.deadlocks;
      r.report["unlock_violations"] = res.unlock_violations;
      r.report["budget_exceeded"] = res.budget_exceeded;
      if (res.budget_exceeded) r.report["reason"] = res.budget_reason;
      r.exit_code = res.budget_exceeded ? kBudget : kOk;
    };
    r.report = base(cfg);
    r.report["mode"] = cfg.mode;
    r.report["level"] = cfg.level;
    if (ec.level == semantics::Level::Abstract)
      fill(semantics::enumerate_abstract(in.program, ec));
    else
      fill(semantics::enumerate_concrete(in.program, ec));
    r.report["verdict"] = r.exit_code == kOk ? "complete" : "budget-exceeded";
    synthesis::Timings t;
    t.automata_ms = ms_since(t0);
    r.report["timings"] = timings_json(t, in.parse_ms);
    r.output = listing.str();
    return r;
  });
}

CommandResult cmd_dump_automata(const RunConfig& cfg) {
  return guarded(cfg, [&] {
    Loaded in = load(cfg.input);
    auto t0 = Clock::now();
    CommandResult r;
    r.output = dump_pair(in.program, cfg.unroll);
    r.report = base(cfg);
    r.report["verdict"] = "complete";
    synthesis::Timings t;
    t.automata_ms = ms_since(t0);
    r.report["timings"] = timings_json(t, in.parse_ms);
    return r;
  });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (auto msg = cfg.check(); !msg.empty()) {
    err << "presafe: " << msg << "\n";
    return kInputError;
  }
  CommandResult r;
  if (cfg.command == "verify")
    r = cmd_verify(cfg);
  else if (cfg.command == "synthesize")
    r = cmd_synthesize(cfg);
  else if (cfg.command == "enumerate")
    r = cmd_enumerate(cfg);
  else if (cfg.command == "dump-automata")
    r = cmd_dump_automata(cfg);
  else {
    err << "presafe: unknown command " << cfg.command << "\n";
    return kInputError;
  }
  if (r.exit_code == kInputError) err << "presafe: " << r.report.value("error", std::string("error")) << "\n";
  try {
    const std::string report = r.report.dump(2) + "\n";
    const bool listing = cfg.command == "enumerate" || cfg.command == "dump-automata";
    if (!cfg.report.empty())
      write_file(cfg.report, report);
    else if (!listing)
      out << report;
    if (!cfg.out.empty()) {
      if (!r.output.empty() || listing) write_file(cfg.out, r.output);
    } else if (listing) {
      out << r.output;
    }
  } catch (const std::runtime_error& e) {
    err << "presafe: " << e.what() << "\n";
    return kInputError;
  }
  return r.exit_code;
}

}  // namespace presafe::cli
