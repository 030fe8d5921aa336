#include "presafe/synthesis.hpp"

#include <algorithm>
#include <chrono>

namespace presafe::synthesis {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Query {
  std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
  std::shared_ptr<automata::ProgramAutomaton> np, p;
  std::unique_ptr<automata::ClosureAutomaton> closure;
  inclusion::InclusionResult result;
};

void run_query(Query& q, const wlang::Program& reference, const wlang::Program& candidate, const Config& cfg,
               Timings& t) {
  auto t0 = Clock::now();
  q.np = automata::build_abstract_automaton(reference, Scheduling::NonPreemptive, cfg.unroll, q.symbols);
  q.p = automata::build_abstract_automaton(candidate, Scheduling::Preemptive, cfg.unroll, q.symbols);
  q.closure = std::make_unique<automata::ClosureAutomaton>(*q.np, q.symbols->independence(), cfg.k_start);
  t.automata_ms += ms_since(t0);
  auto t1 = Clock::now();
  auto symbols = q.symbols;
  q.result = inclusion::inclusion_iterative(
      *q.p, *q.closure, [symbols](automata::SymbolId a, automata::SymbolId b) { return symbols->less(a, b); },
      cfg.k_start, cfg.k_max, cfg.budget);
  t.inclusion_ms += ms_since(t1);
}

std::vector<std::string> names(const Word& w, const SymbolTable& symbols) {
  std::vector<std::string> out;
  for (auto s : w) out.push_back(symbols.name(s));
  return out;
}

int preference(Fix::Kind k) {
  switch (k) {
    case Fix::Kind::Lock: return 0;
    case Fix::Kind::Lock2: return 1;
    case Fix::Kind::Reorder: return 2;
  }
  return 3;
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Safe: return "safe";
    case Outcome::Synthesized: return "synthesized";
    case Outcome::PatternFailure: return "pattern-failure";
    case Outcome::PlacementFailure: return "placement-failure";
    case Outcome::NoProgress: return "no-progress";
    case Outcome::IterationCap: return "iteration-cap";
    case Outcome::Budget: return "budget-exceeded";
  }
  return "?";
}

VerifyResult verify(const wlang::Program& reference, const wlang::Program& candidate, const Config& cfg) {
  VerifyResult out;
  Query q;
  run_query(q, reference, candidate, cfg, out.timings);
  out.result = q.result;
  out.counterexample = names(q.result.word, *q.symbols);
  return out;
}

SynthesisResult synthesize(const wlang::Program& program, const Config& cfg) {
  SynthesisResult res;
  auto& rep = res.report;
  res.program = program;
  Plan plan;
  bool finished = false;

  for (int it = 1; it <= cfg.max_iterations && !finished; ++it) {
    Iteration rec;
    rec.index = it;
    Query q;
    run_query(q, program, res.program, cfg, rec.timings);
    rec.verdict = q.result.verdict;
    rec.k = q.result.k;
    rec.tuples = q.result.tuples;
    rec.rounds = q.result.rounds;
    rep.k_max_reached = std::max(rep.k_max_reached, q.result.k);

    if (q.result.verdict == inclusion::Verdict::Holds) {
      rep.outcome = plan.fixes.empty() ? Outcome::Safe : Outcome::Synthesized;
      rep.iterations.push_back(std::move(rec));
      finished = true;
      break;
    }
    if (q.result.verdict != inclusion::Verdict::Counterexample) {
      rep.outcome = Outcome::Budget;
      rep.diagnostics.push_back(std::string(inclusion::verdict_name(q.result.verdict)) + ": " + q.result.reason);
      rep.iterations.push_back(std::move(rec));
      finished = true;
      break;
    }

    auto t0 = Clock::now();
    rec.counterexample = names(q.result.word, *q.symbols);
    Counterexample cex = analyze_counterexample(q.result.word, *q.symbols);
    for (const auto& e : cex.events) rec.events.push_back(e.str());
    std::vector<Trace> nhood;
    try {
      nhood = neighborhood(cex.events, cfg.nhood_cap);
    } catch (const BudgetError& e) {
      rep.outcome = Outcome::Budget;
      rep.diagnostics.push_back(e.what());
      rec.timings.synthesis_ms += ms_since(t0);
      rep.iterations.push_back(std::move(rec));
      finished = true;
      break;
    }
    Classification cls = classify_traces(nhood, cex, *q.np, *q.p);
    rec.nhood = nhood.size();
    rec.np_feasible = cls.np_indices().size();
    auto bad = cls.bad_indices();
    rec.bad = bad.size();

    const Trace cex_trace = identity_trace(cex.events.size());
    auto cex_pos = std::find(nhood.begin(), nhood.end(), cex_trace) - nhood.begin();
    if (cls.cls[cex_pos] != TraceClass::Bad)
      rep.diagnostics.push_back("iteration " + std::to_string(it) + ": counterexample not classified as bad");
    std::stable_partition(bad.begin(), bad.end(), [&](std::size_t i) { return static_cast<std::ptrdiff_t>(i) == cex_pos; });

    std::vector<Constraint> covered;
    std::vector<std::string> unmatched;
    bool any_fix = false, progress = false;
    for (std::size_t i : bad) {
      auto pos = positions(nhood[i]);
      if (std::any_of(covered.begin(), covered.end(), [&](const Constraint& c) { return c.eval(pos); })) continue;
      Constraint rho = generalize(cex.events, nhood[i], nhood, cls);
      covered.push_back(rho);
      rec.rho_g.push_back(rho.str(cex.events));
      auto fixes = infer_fixes(rho, cex.events, res.program);
      if (fixes.empty()) {
        unmatched.push_back(rho.str(cex.events));
        continue;
      }
      int best = 3;
      for (const auto& f : fixes) best = std::min(best, preference(f.kind));
      for (const auto& f : fixes) {
        if (preference(f.kind) != best) continue;
        any_fix = true;
        if (plan.add(f)) {
          progress = true;
          rec.fixes.push_back(f.str());
        }
      }
    }
    rec.timings.synthesis_ms += ms_since(t0);

    if (!any_fix) {
      rep.outcome = Outcome::PatternFailure;
      for (const auto& u : unmatched) rep.diagnostics.push_back("no fix pattern matches " + u);
      rep.iterations.push_back(std::move(rec));
      finished = true;
      break;
    }
    if (!progress) {
      rep.outcome = Outcome::NoProgress;
      rep.diagnostics.push_back("every inferred fix is already applied");
      for (const auto& u : unmatched) rep.diagnostics.push_back("no fix pattern matches " + u);
      rep.iterations.push_back(std::move(rec));
      finished = true;
      break;
    }
    auto t1 = Clock::now();
    Placement placed = render_plan(program, plan);
    rec.timings.synthesis_ms += ms_since(t1);
    res.program = placed.program;
    rep.iterations.push_back(std::move(rec));
    if (!placed.ok()) {
      rep.outcome = Outcome::PlacementFailure;
      rep.diagnostics = placed.errors;
      finished = true;
    }
  }
  if (!finished) {
    rep.outcome = Outcome::IterationCap;
    rep.diagnostics.push_back("no safe program within " + std::to_string(cfg.max_iterations) + " iterations");
  }
  rep.fixes = plan.fixes;
  for (const auto& r : rep.iterations) {
    rep.timings.automata_ms += r.timings.automata_ms;
    rep.timings.inclusion_ms += r.timings.inclusion_ms;
    rep.timings.synthesis_ms += r.timings.synthesis_ms;
  }
  return res;
}

}  // namespace presafe::synthesis
