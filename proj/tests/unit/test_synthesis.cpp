#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace presafe;
using namespace presafe::synthesis;

namespace {

EventId ev(int tid, Access a, const std::string& var, const std::string& label, int occ = 0) {
  return {tid, a, var, {tid, label}, occ};
}

// the race events in counterexample order: T1.A T2.A T1.B T1.C T1.D T2.B T2.C T2.D
std::vector<EventId> race_events() {
  std::vector<EventId> out;
  for (const auto& o : fixtures::driver_race()) out.push_back({o.tid, o.access, o.variable, o.location, 0});
  return out;
}

const fixtures::DriverAnalysis& driver() {
  static const auto d = fixtures::driver_analysis();
  return d;
}

Constraint atoms(std::vector<Atom> a) { return Constraint::conj(a); }

// NP languages of a and b agree modulo independence, both directions
bool np_equivalent(const wlang::Program& a, const wlang::Program& b) {
  auto sym = std::make_shared<automata::SymbolTable>();
  auto na = automata::build_abstract_automaton(a, Scheduling::NonPreemptive, 1, sym);
  auto nb = automata::build_abstract_automaton(b, Scheduling::NonPreemptive, 1, sym);
  auto order = [&](automata::SymbolId x, automata::SymbolId y) { return sym->less(x, y); };
  automata::ClosureAutomaton ca(*na, sym->independence(), 2), cb(*nb, sym->independence(), 2);
  return inclusion::inclusion_iterative(*nb, ca, order).verdict == inclusion::Verdict::Holds &&
         inclusion::inclusion_iterative(*na, cb, order).verdict == inclusion::Verdict::Holds;
}

bool np_included(const wlang::Program& candidate, const wlang::Program& reference) {
  auto sym = std::make_shared<automata::SymbolTable>();
  auto nr = automata::build_abstract_automaton(reference, Scheduling::NonPreemptive, 1, sym);
  auto nc = automata::build_abstract_automaton(candidate, Scheduling::NonPreemptive, 1, sym);
  automata::ClosureAutomaton cr(*nr, sym->independence(), 2);
  auto order = [&](automata::SymbolId x, automata::SymbolId y) { return sym->less(x, y); };
  return inclusion::inclusion_iterative(*nc, cr, order).verdict == inclusion::Verdict::Holds;
}

const wlang::Statement& top(const wlang::Program& p, int tid, std::size_t i) { return p.threads[tid - 1].body[i]; }

}  // namespace

TEST_CASE("neighborhood sizes") {
  std::vector<EventId> three{ev(1, Access::Write, "x", "a"), ev(1, Access::Write, "y", "b"), ev(2, Access::Read, "x", "c")};
  CHECK(neighborhood(three).size() == 3);
  CHECK(neighborhood(race_events()).size() == 70);
  std::vector<EventId> single{ev(1, Access::Write, "x", "a"), ev(1, Access::Read, "x", "b")};
  CHECK(neighborhood(single) == std::vector<Trace>{identity_trace(2)});
  CHECK_THROWS_AS(neighborhood(race_events(), 10), BudgetError);
}

TEST_CASE("neighborhood traces are distinct and keep per-thread order") {
  std::vector<EventId> e{ev(1, Access::Write, "x", "a"), ev(2, Access::Read, "x", "b"), ev(1, Access::Read, "y", "c"),
                         ev(3, Access::Write, "y", "d"), ev(2, Access::Write, "y", "e"), ev(3, Access::Read, "x", "f")};
  auto n = neighborhood(e);
  CHECK(n.size() == 90);  // 6! / (2! 2! 2!)
  CHECK(std::set<Trace>(n.begin(), n.end()).size() == n.size());
  CHECK(std::is_sorted(n.begin(), n.end(), [&](const Trace& a, const Trace& b) {
    std::vector<int> ta, tb;
    for (auto i : a) ta.push_back(e[i].tid);
    for (auto i : b) tb.push_back(e[i].tid);
    return ta < tb;
  }));
  for (const auto& t : n) {
    auto pos = positions(t);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (e[i].tid == e[j].tid) CHECK(pos[i] < pos[j]);
  }
}

TEST_CASE("driver race projects onto the eight racing events") {
  const auto& d = driver();
  REQUIRE(d.cex.events.size() == 8);
  CHECK(d.render(identity_trace(8)) == "T1.A;T2.A;T1.B;T1.C;T1.D;T2.B;T2.C;T2.D");
  CHECK(d.nhood.size() == 70);
}

TEST_CASE("driver race neighborhood has exactly the two serial runs feasible") {
  const auto& d = driver();
  std::set<std::string> np;
  for (auto i : d.cls.np_indices()) np.insert(d.render(d.nhood[i]));
  CHECK(np == std::set<std::string>{"T1.A;T1.B;T1.C;T1.D;T2.A;T2.B;T2.C;T2.D", "T2.A;T2.B;T2.C;T2.D;T1.A;T1.B;T1.C;T1.D"});
  auto cex_pos = std::find(d.nhood.begin(), d.nhood.end(), identity_trace(8)) - d.nhood.begin();
  CHECK(d.cls.cls[cex_pos] == TraceClass::Bad);
}

TEST_CASE("bad traces have no nonpreemptive equivalent") {
  const auto& d = driver();
  std::set<std::string> good_keys;
  for (auto i : d.cls.np_indices()) good_keys.insert(semantics::abstract_key(observations(d.cex.events, d.nhood[i])));
  for (auto i : d.cls.bad_indices()) {
    CHECK(d.cls.p_feasible[i]);
    CHECK(good_keys.count(semantics::abstract_key(observations(d.cex.events, d.nhood[i]))) == 0);
  }
  for (std::size_t i = 0; i < d.nhood.size(); ++i)
    if (d.cls.np_feasible[i]) CHECK(d.cls.cls[i] == TraceClass::Good);
}

TEST_CASE("ordering constraint of the first serial run") {
  const auto& d = driver();
  Trace pi1;
  for (const char* n : {"T1.A", "T1.B", "T1.C", "T1.D", "T2.A", "T2.B", "T2.C", "T2.D"})
    pi1.push_back(static_cast<std::uint16_t>(d.index(n)));
  auto phi = phi_of_trace(d.cex.events, pi1);
  std::set<std::string> got;
  for (const auto& a : phi.atoms()) got.insert(d.name(a.before) + "<" + d.name(a.after));
  // {T1.A, T1.C, T1.D} < T2.D, T1.D < {T2.A, T2.C, T2.D}, T1.B < T2.B
  CHECK(got == std::set<std::string>{"T1.A<T2.D", "T1.C<T2.D", "T1.D<T2.D", "T1.D<T2.A", "T1.D<T2.C", "T1.B<T2.B"});
  CHECK(phi.eval_trace(pi1));

  Trace pi2;
  for (const char* n : {"T2.A", "T2.B", "T2.C", "T2.D", "T1.A", "T1.B", "T1.C", "T1.D"})
    pi2.push_back(static_cast<std::uint16_t>(d.index(n)));
  std::set<std::string> mirrored;
  for (const auto& a : phi_of_trace(d.cex.events, pi2).atoms()) mirrored.insert(d.name(a.before) + "<" + d.name(a.after));
  CHECK(mirrored == std::set<std::string>{"T2.A<T1.D", "T2.C<T1.D", "T2.D<T1.D", "T2.D<T1.A", "T2.D<T1.C", "T2.B<T1.B"});
}

TEST_CASE("independent events give the true constraint") {
  std::vector<EventId> e{ev(1, Access::Write, "x", "a"), ev(2, Access::Write, "y", "b"), ev(2, Access::Read, "x", "c", 0)};
  e[2].tid = 1;
  e[2].location.thread = 1;
  CHECK(phi_of_trace(e, identity_trace(3)).kind == Constraint::Kind::True);
  CHECK(phi_of_trace(e, identity_trace(3)).eval_trace({2, 1, 0}));
}

TEST_CASE("generalization of the driver race") {
  const auto& d = driver();
  auto rho = generalize(d.cex.events, identity_trace(8), d.nhood, d.cls);
  std::vector<std::string> got;
  for (const auto& a : rho.atoms()) got.push_back(d.name(a.before) + "<" + d.name(a.after));
  CHECK(got == std::vector<std::string>{"T2.A<T1.D", "T1.D<T2.D"});
  CHECK(constraint_valid(rho, d.nhood, d.cls));
}

TEST_CASE("generalized constraints are valid and minimal on the corpus") {
  for (const auto& name : {"running_example", "counter", "check_then_act", "snapshot", "publish", "signal_early",
                           "irq_status", "cycle3"}) {
    INFO(name);
    auto p = fixtures::load(name);
    auto v = verify(p, p, {});
    REQUIRE(v.result.verdict == inclusion::Verdict::Counterexample);
    auto sym = std::make_shared<automata::SymbolTable>();
    auto np = automata::build_abstract_automaton(p, Scheduling::NonPreemptive, 1, sym);
    auto pa = automata::build_abstract_automaton(p, Scheduling::Preemptive, 1, sym);
    // re-intern the counterexample in the fresh table
    automata::Word word;
    {
      auto sym0 = std::make_shared<automata::SymbolTable>();
      auto np0 = automata::build_abstract_automaton(p, Scheduling::NonPreemptive, 1, sym0);
      auto pa0 = automata::build_abstract_automaton(p, Scheduling::Preemptive, 1, sym0);
      automata::ClosureAutomaton b(*np0, sym0->independence(), 2);
      auto r = inclusion::inclusion_iterative(*pa0, b, [&](auto x, auto y) { return sym0->less(x, y); });
      for (auto s : r.word) word.push_back(sym->intern(sym0->get(s)));
    }
    auto cex = analyze_counterexample(word, *sym);
    auto nhood = neighborhood(cex.events);
    auto cls = classify_traces(nhood, cex, *np, *pa);
    auto serial = classify_traces_serial(nhood, cex, *np, *pa);
    CHECK(cls.cls == serial.cls);
    CHECK(cls.np_feasible == serial.np_feasible);
    CHECK(cls.p_feasible == serial.p_feasible);
    auto bad = cls.bad_indices();
    REQUIRE(!bad.empty());
    for (auto i : bad) {
      auto rho = generalize(cex.events, nhood[i], nhood, cls);
      CHECK(rho.str(cex.events) == generalize_serial(cex.events, nhood[i], nhood, cls).str(cex.events));
      CHECK(rho.eval_trace(nhood[i]));
      for (std::size_t j = 0; j < nhood.size(); ++j)
        if (rho.eval_trace(nhood[j])) CHECK(cls.cls[j] != TraceClass::Good);
      auto a = rho.atoms();
      for (std::size_t drop = 0; drop < a.size(); ++drop) {
        auto fewer = a;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(!constraint_valid(Constraint::conj(fewer), nhood, cls));
      }
      auto phi = phi_of_trace(cex.events, nhood[i]).atoms();
      for (const auto& x : a) CHECK(std::find(phi.begin(), phi.end(), x) != phi.end());
    }
  }
}

TEST_CASE("a single bad trace is characterized by its full ordering constraint") {
  // two threads: the only bad trace is the one in which each write lands between the other's accesses
  std::vector<EventId> e{ev(1, Access::Read, "x", "1"), ev(1, Access::Write, "x", "2"), ev(2, Access::Read, "x", "3"),
                         ev(2, Access::Write, "x", "4")};
  auto n = neighborhood(e);
  Classification c;
  c.np_feasible.assign(n.size(), 0);
  c.p_feasible.assign(n.size(), 1);
  c.cls.assign(n.size(), TraceClass::Good);
  // the bad set is the swap class of r1 r2 w1 w2
  Trace target{0, 2, 1, 3};
  auto phi = phi_of_trace(e, target);
  std::vector<char> in_class(n.size());
  for (std::size_t j = 0; j < n.size(); ++j) {
    in_class[j] = phi_of_trace(e, n[j]).atoms() == phi.atoms();
    if (in_class[j]) c.cls[j] = TraceClass::Bad;
  }
  CHECK(std::count(in_class.begin(), in_class.end(), 1) == 2);
  auto rho = generalize(e, target, n, c);
  std::set<Atom> must(phi.atoms().begin(), phi.atoms().end());
  for (std::size_t j = 0; j < n.size(); ++j) CHECK(rho.eval_trace(n[j]) == static_cast<bool>(in_class[j]));
  for (const auto& a : rho.atoms()) CHECK(must.count(a) == 1);
}

TEST_CASE("a single-thread counterexample has no bad traces") {
  auto p = wlang::parse_program("var x; thread t { 1: x = x + 1; 2: output(o, x); }");
  auto sym = std::make_shared<automata::SymbolTable>();
  auto np = automata::build_abstract_automaton(p, Scheduling::NonPreemptive, 1, sym);
  auto pa = automata::build_abstract_automaton(p, Scheduling::Preemptive, 1, sym);
  automata::Word w{sym->intern({1, Access::Read, "x", {1, "1"}}), sym->intern({1, Access::Write, "x", {1, "1"}}),
                   sym->intern({1, Access::Read, "x", {1, "2"}}), sym->intern({1, Access::Write, "dev:o", {1, "2"}})};
  auto cex = unprojected_counterexample(w, *sym);
  auto n = neighborhood(cex.events);
  CHECK(n.size() == 1);
  auto c = classify_traces(n, cex, *np, *pa);
  CHECK(c.bad_indices().empty());
  CHECK(c.np_indices().size() == 1);
}

TEST_CASE("lock pattern for the generalized driver race") {
  auto e = race_events();
  auto p = fixtures::load("running_example");
  // T2.A < T1.D and T1.D < T2.D
  auto fixes = infer_fixes(atoms({{1, 4}, {4, 7}}), e, p);
  REQUIRE(fixes.size() == 1);
  CHECK(fixes[0].kind == Fix::Kind::Lock);
  CHECK(fixes[0].str() == "lock(T2.[2:5], T1.[5:5])");
}

TEST_CASE("a single atom without signal context matches nothing") {
  auto e = race_events();
  CHECK(infer_fixes(atoms({{1, 4}}), e, fixtures::load("running_example")).empty());
  CHECK(infer_fixes(Constraint::truth(), e, fixtures::load("running_example")).empty());
}

TEST_CASE("symmetric atomicity pair gives the double-sided lock") {
  // T1: a1 reads x, a2 writes x; T2: b1 writes x, b2 reads x; rho = a1 < b1 and b2 < a2
  std::vector<EventId> e{ev(1, Access::Read, "x", "a1"), ev(2, Access::Write, "x", "b1"), ev(2, Access::Read, "x", "b2"),
                         ev(1, Access::Write, "x", "a2")};
  auto p = wlang::parse_program(
      "var x; thread t { a1: x = x; a2: x = 1; } thread u { b1: x = 2; b2: output(o, x); }");
  auto fixes = infer_fixes(atoms({{0, 1}, {2, 3}}), e, p);
  REQUIRE(!fixes.empty());
  CHECK(fixes[0].kind == Fix::Kind::Lock2);
  CHECK(fixes[0].str() == "lock(T1.[a1:a2], T2.[b1:b2])");
}

TEST_CASE("double-sided fix removes the violation on re-check") {
  auto p = fixtures::load("counter");
  auto r = synthesize(p);
  REQUIRE(!r.report.fixes.empty());
  CHECK(r.report.fixes[0].kind == Fix::Kind::Lock2);
  CHECK(r.report.outcome == Outcome::Synthesized);
  CHECK(verify(p, r.program, {}).result.verdict == inclusion::Verdict::Holds);
}

TEST_CASE("reorder pattern moves the signal after the write it guards") {
  auto p = fixtures::load("signal_early");
  // producer: s1 signal, s2 data = 1; consumer: t1 await, t2 got = data
  std::vector<EventId> e{ev(2, Access::Read, "data", "t2"), ev(1, Access::Write, "data", "s2")};
  auto fixes = infer_fixes(atoms({{0, 1}}), e, p);
  REQUIRE(fixes.size() == 1);
  CHECK(fixes[0].kind == Fix::Kind::Reorder);
  CHECK(fixes[0].str() == "reorder(T1.s1, T1.s2)");
}

TEST_CASE("driver fix places one lock around the check and the increment") {
  auto p = fixtures::load("running_example");
  Fix f{Fix::Kind::Lock, {{2, "2", "5"}, {1, "5", "5"}}, 0, "", ""};
  auto placed = place_locks(p, f);
  REQUIRE(placed.ok());
  REQUIRE(placed.locks == std::vector<std::string>{"synth_lock_0"});
  for (int t : {1, 2}) {
    const auto& loop = top(placed.program, t, 0).body;
    REQUIRE(loop.size() == 6);
    CHECK(loop[0].kind == wlang::StmtKind::Lock);
    CHECK(loop[0].target == "synth_lock_0");
    CHECK(loop[1].label == "2");
    CHECK(loop[3].label == "5");
    CHECK(loop[4].kind == wlang::StmtKind::Unlock);
    CHECK(loop[5].label == "6");
  }
  CHECK(placed.program.threads[2] == p.threads[2]);
  CHECK(placed.program.find_decl("synth_lock_0")->kind == wlang::VarKind::Lock);
  auto text = wlang::pretty_print(placed.program);
  CHECK(text.find("lock(synth_lock_0);") != std::string::npos);
  CHECK(text.find("unlock(synth_lock_0);") != std::string::npos);
  CHECK(wlang::parse_program(text) == placed.program);
}

TEST_CASE("single-statement range is wrapped directly") {
  auto p = wlang::parse_program("var x; thread t { 1: x = 1; 2: x = x + 1; 3: yield; } thread u { 4: x = 0; }");
  auto placed = place_locks(p, {Fix::Kind::Lock, {{1, "2", "2"}}, 0, "", ""});
  REQUIRE(placed.ok());
  const auto& b = placed.program.threads[0].body;
  REQUIRE(b.size() == 5);
  CHECK(b[1].kind == wlang::StmtKind::Lock);
  CHECK(b[2].label == "2");
  CHECK(b[3].kind == wlang::StmtKind::Unlock);
}

TEST_CASE("overlapping fixes share one lock") {
  auto p = wlang::parse_program(
      "var x; var y; thread t { 1: x = 1; 2: y = 1; 3: x = y; 4: yield; } thread u { 5: x = 0; 6: y = 0; }");
  Plan plan;
  plan.add({Fix::Kind::Lock, {{1, "1", "2"}, {2, "5", "5"}}, 0, "", ""});
  plan.add({Fix::Kind::Lock, {{1, "2", "3"}, {2, "5", "6"}}, 0, "", ""});
  auto placed = render_plan(p, plan);
  REQUIRE(placed.ok());
  CHECK(placed.locks.size() == 1);
  const auto& b = placed.program.threads[0].body;
  REQUIRE(b.size() == 6);
  CHECK(b[0].kind == wlang::StmtKind::Lock);
  CHECK(b[4].kind == wlang::StmtKind::Unlock);
  const auto& u = placed.program.threads[1].body;
  REQUIRE(u.size() == 4);
  CHECK(u[0].kind == wlang::StmtKind::Lock);
  CHECK(u[3].kind == wlang::StmtKind::Unlock);
}

TEST_CASE("disjoint fixes get separate locks") {
  auto p = wlang::parse_program(
      "var x; var y; thread t { 1: x = 1; 2: yield; 3: y = 1; } thread u { 5: x = 0; 6: y = 0; }");
  Plan plan;
  plan.add({Fix::Kind::Lock, {{1, "1", "1"}, {2, "5", "5"}}, 0, "", ""});
  plan.add({Fix::Kind::Lock, {{1, "3", "3"}}, 0, "", ""});
  auto placed = render_plan(p, plan);
  REQUIRE(placed.ok());
  CHECK(placed.locks == std::vector<std::string>{"synth_lock_0", "synth_lock_1"});
}

TEST_CASE("a span across a yield is split around it") {
  auto p = wlang::parse_program("var x; thread t { 1: x = 1; 2: yield; 3: x = 2; } thread u { 4: x = 0; }");
  auto placed = place_locks(p, {Fix::Kind::Lock, {{1, "1", "3"}}, 0, "", ""});
  REQUIRE(placed.ok());
  const auto& b = placed.program.threads[0].body;
  std::vector<wlang::StmtKind> kinds;
  for (const auto& s : b) kinds.push_back(s.kind);
  using K = wlang::StmtKind;
  CHECK(kinds == std::vector<K>{K::Lock, K::Assign, K::Unlock, K::Yield, K::Lock, K::Assign, K::Unlock});
}

TEST_CASE("a span over a nested preemption point is a placement failure") {
  auto p = wlang::parse_program(
      "var x; thread t { 1: x = 1; 2: if (x) { 3: yield; } 4: x = 2; } thread u { 5: x = 0; }");
  auto placed = place_locks(p, {Fix::Kind::Lock, {{1, "1", "4"}}, 0, "", ""});
  CHECK(!placed.ok());
}

TEST_CASE("reorder keeps the nonpreemptive language") {
  auto p = fixtures::load("signal_early");
  auto moved = apply_reorder(p, {Fix::Kind::Reorder, {}, 1, "s1", "s2"});
  REQUIRE(moved.ok());
  const auto& b = moved.program.threads[0].body;
  CHECK(b[0].label == "s2");
  CHECK(b[1].label == "s1");
  CHECK(np_equivalent(p, moved.program));
}

TEST_CASE("reorder to the current position is the identity") {
  auto p = fixtures::load("signal_early");
  auto same = apply_reorder(p, {Fix::Kind::Reorder, {}, 1, "s1", "s1"});
  REQUIRE(same.ok());
  CHECK(same.program == p);
}

TEST_CASE("reorder across an await is rejected") {
  auto p = wlang::parse_program(
      "var x; cond c; cond d; thread t { 1: signal(c); 2: await(d); 3: x = 1; } thread u { 4: await(c); 5: signal(d); }");
  auto moved = apply_reorder(p, {Fix::Kind::Reorder, {}, 1, "1", "3"});
  CHECK(!moved.ok());
}

TEST_CASE("opposite lock orders are reported as a cycle") {
  auto r = detect_deadlocks(fixtures::load("deadlock_abba"));
  REQUIRE(r.cycles.size() == 1);
  CHECK(r.cycles[0].find("a -> b") != std::string::npos);
  CHECK(r.stuck_count > 0);
  CHECK(!r.warnings().empty());
}

TEST_CASE("lock-free program has no deadlock warnings") {
  CHECK(detect_deadlocks(fixtures::load("independent")).warnings().empty());
  CHECK(detect_deadlocks(fixtures::load("running_example")).warnings().empty());
}

TEST_CASE("driver example synthesis") {
  auto p = fixtures::load("running_example");
  auto r = synthesize(p);
  const auto& rep = r.report;
  CHECK(rep.outcome == Outcome::Synthesized);
  REQUIRE(rep.iterations.size() >= 2);
  REQUIRE(!rep.iterations[0].fixes.empty());
  CHECK(rep.iterations[0].fixes[0] == "lock(T2.[2:5], T1.[5:5])");
  CHECK(rep.iterations.back().verdict == inclusion::Verdict::Holds);
  CHECK(verify(p, r.program, {}).result.verdict == inclusion::Verdict::Holds);
  CHECK(detect_deadlocks(r.program).warnings().empty());
  CHECK(np_included(r.program, p));
  // one synthesized lock spanning labels 2 to 5 of open_dev
  const auto& loop = top(r.program, 1, 0).body;
  REQUIRE(loop.size() >= 5);
  CHECK(loop[0].kind == wlang::StmtKind::Lock);
  CHECK(loop[1].label == "2");
  CHECK(loop[3].label == "5");
  CHECK(loop[4].kind == wlang::StmtKind::Unlock);
}

TEST_CASE("already safe program needs no fixes") {
  auto p = fixtures::load("running_example_locked");
  auto r = synthesize(p);
  CHECK(r.report.outcome == Outcome::Safe);
  CHECK(r.report.fixes.empty());
  CHECK(r.report.iterations.size() == 1);
  CHECK(r.program == p);
}

TEST_CASE("ordering cycle outside the patterns reports its constraint") {
  auto r = synthesize(fixtures::load("cycle3"));
  CHECK(r.report.outcome == Outcome::PatternFailure);
  REQUIRE(!r.report.iterations.empty());
  CHECK(!r.report.iterations.back().rho_g.empty());
  CHECK(!r.report.diagnostics.empty());
}

TEST_CASE("corpus outcomes and fix types") {
  for (const auto& c : fixtures::corpus()) {
    INFO(c.name);
    auto p = fixtures::load(c.name);
    auto r = synthesize(p);
    CHECK(r.report.outcome == c.outcome);
    std::string kind = r.report.fixes.empty() ? "none" : fix_kind_name(r.report.fixes[0].kind);
    CHECK(kind == c.fix_type);
    if (r.report.success()) {
      CHECK(verify(p, r.program, {}).result.verdict == inclusion::Verdict::Holds);
      bool has_reorder = std::any_of(r.report.fixes.begin(), r.report.fixes.end(),
                                     [](const Fix& f) { return f.kind == Fix::Kind::Reorder; });
      bool has_lock = std::any_of(r.report.fixes.begin(), r.report.fixes.end(),
                                  [](const Fix& f) { return f.kind != Fix::Kind::Reorder; });
      if (has_reorder && !has_lock) CHECK(np_equivalent(p, r.program));
      if (has_lock && !has_reorder) CHECK(np_included(r.program, p));
    }
  }
}

TEST_CASE("iteration cap is reported") {
  Config cfg;
  cfg.max_iterations = 1;
  auto r = synthesize(fixtures::load("running_example"), cfg);
  CHECK(r.report.outcome == Outcome::IterationCap);
}

TEST_CASE("neighborhood cap is reported as a budget outcome") {
  Config cfg;
  cfg.nhood_cap = 5;
  auto r = synthesize(fixtures::load("running_example"), cfg);
  CHECK(r.report.outcome == Outcome::Budget);
}
