#include "presafe/semantics.hpp"

#include <boost/container_hash/hash.hpp>

#include <sstream>

namespace presafe::semantics {

using wlang::StmtKind;

namespace {

void normalize(const CompiledProgram& p, ThreadCtl& c) {
  while (!c.stack.empty() && p.node(c.stack.back().node).kind == StmtKind::Skip) c.stack.pop_back();
}

void push_block(ThreadCtl& c, const std::vector<NodeId>& b) {
  for (auto it = b.rbegin(); it != b.rend(); ++it) c.stack.push_back({*it, 0});
}

ThreadCtl completed(const CompiledProgram& p, const ThreadCtl& ctl) {
  ThreadCtl c = ctl;
  c.stack.pop_back();
  c.micro = 0;
  normalize(p, c);
  return c;
}

ThreadCtl enter(const CompiledProgram& p, const ThreadCtl& ctl, const std::vector<NodeId>& block, bool keep_top) {
  ThreadCtl c = ctl;
  c.micro = 0;
  if (keep_top)
    ++c.stack.back().iter;
  else
    c.stack.pop_back();
  push_block(c, block);
  normalize(p, c);
  return c;
}

bool may_iterate(const CompiledProgram& p, const Frame& f) {
  return p.unroll() == 0 || f.iter < static_cast<std::uint32_t>(p.unroll());
}

int get_sync(const CompiledProgram& p, const AbstractState& s, int var) { return s.sync[p.vars()[var].sync_slot]; }
void set_sync(const CompiledProgram& p, AbstractState& s, int var, int v) { s.sync[p.vars()[var].sync_slot] = v; }
int get_sync(const CompiledProgram&, const ConcreteState& s, int var) { return static_cast<int>(s.vals[var]); }
void set_sync(const CompiledProgram&, ConcreteState& s, int var, int v) { s.vals[var] = v; }

template <class State, class Obs, class Sequential>
StepResult<State, Obs> program_step(const CompiledProgram& p, const State& s, Scheduling mode, Sequential&& sequential) {
  StepResult<State, Obs> r;
  const int n = p.threads();
  auto switch_all = [&](const State& base) {
    for (int j = 1; j <= n; ++j) {
      State t = base;
      t.ctid = j;
      r.succ.push_back({std::move(t), std::nullopt});
    }
  };
  auto pop = [&](State& t, int i) { t.threads[i - 1] = completed(p, t.threads[i - 1]); };
  const int i = s.ctid;
  if (i == 0) {
    switch_all(s);  // ScheduleStart
    return r;
  }
  const ThreadCtl& c = s.threads[i - 1];
  if (c.done()) {
    switch_all(s);  // DescheduleSkip
  } else if (c.micro > 0) {
    sequential(i, s, r);
  } else {
    const Node& nd = p.node(c.stack.back().node);
    State t = s;
    switch (nd.kind) {
      case StmtKind::Lock: {
        int v = get_sync(p, s, nd.var);
        if (v == 0 || v == i) {
          set_sync(p, t, nd.var, i);
          pop(t, i);
          r.succ.push_back({std::move(t), std::nullopt});
        } else {
          switch_all(s);  // LockYield
        }
        break;
      }
      case StmtKind::Unlock:
        if (get_sync(p, s, nd.var) == i) {
          set_sync(p, t, nd.var, 0);
          pop(t, i);
          r.succ.push_back({std::move(t), std::nullopt});
        } else {
          r.unlock_violation = true;
        }
        break;
      case StmtKind::Await:
        if (get_sync(p, s, nd.var) == 1) {
          pop(t, i);
          r.succ.push_back({std::move(t), std::nullopt});
        } else {
          switch_all(s);  // AwaitYield, switching like LockYield
        }
        break;
      case StmtKind::Signal:
      case StmtKind::Reset:
        set_sync(p, t, nd.var, nd.kind == StmtKind::Signal ? 1 : 0);
        pop(t, i);
        r.succ.push_back({std::move(t), std::nullopt});
        break;
      case StmtKind::Yield:
        pop(t, i);
        switch_all(t);
        break;
      default: sequential(i, s, r);
    }
  }
  if (mode == Scheduling::Preemptive) switch_all(s);  // DeschedulePreempt
  return r;
}

template <class State>
bool blocked_impl(const CompiledProgram& p, const State& s) {
  bool any = false;
  for (int j = 1; j <= p.threads(); ++j) {
    const ThreadCtl& c = s.threads[j - 1];
    if (c.done()) continue;
    any = true;
    if (c.micro > 0) return false;
    const Node& nd = p.node(c.stack.back().node);
    int v = nd.var >= 0 && p.vars()[nd.var].kind != wlang::VarKind::Std ? get_sync(p, s, nd.var) : 0;
    bool stuck = (nd.kind == StmtKind::Lock && v != 0 && v != j) || (nd.kind == StmtKind::Await && v != 1) ||
                 (nd.kind == StmtKind::Unlock && v != j);
    if (!stuck) return false;
  }
  return any;
}

}  // namespace

ThreadCtl initial_thread(const CompiledProgram& p, int tid) {
  ThreadCtl c;
  push_block(c, p.roots(tid));
  normalize(p, c);
  return c;
}

AbstractState initial_abstract_state(const CompiledProgram& p) {
  AbstractState s;
  s.sync.assign(p.sync_count(), 0);
  for (const auto& v : p.vars())
    if (v.sync_slot >= 0) s.sync[v.sync_slot] = static_cast<int>(v.init);
  for (int t = 1; t <= p.threads(); ++t) s.threads.push_back(initial_thread(p, t));
  return s;
}

ConcreteState initial_concrete_state(const CompiledProgram& p) {
  ConcreteState s;
  for (const auto& v : p.vars()) s.vals.push_back(v.init);
  for (int t = 1; t <= p.threads(); ++t) s.threads.push_back(initial_thread(p, t));
  return s;
}

template <class State>
static bool all_done(const State& s) {
  for (const auto& t : s.threads)
    if (!t.done()) return false;
  return true;
}
bool is_final(const AbstractState& s) { return all_done(s); }
bool is_final(const ConcreteState& s) { return all_done(s); }

Integer eval(const CExpr& e, const std::vector<Integer>& vals) {
  switch (e.kind) {
    case CExpr::Kind::Var: return vals[e.var];
    case CExpr::Kind::Const: return e.value;
    case CExpr::Kind::Op: break;
  }
  auto truth = [](bool b) { return Integer(b ? 1 : 0); };
  if (e.op == Op::Not) return truth(eval(e.args[0], vals) == 0);
  if (e.op == Op::Neg) return -eval(e.args[0], vals);
  // && and || still evaluate both operands, matching the read sequence
  Integer a = eval(e.args[0], vals), b = eval(e.args[1], vals);
  switch (e.op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Eq: return truth(a == b);
    case Op::Ne: return truth(a != b);
    case Op::Lt: return truth(a < b);
    case Op::Le: return truth(a <= b);
    case Op::Gt: return truth(a > b);
    case Op::Ge: return truth(a >= b);
    case Op::And: return truth(a != 0 && b != 0);
    case Op::Or: return truth(a != 0 || b != 0);
    default: return 0;
  }
}

std::vector<AbstractObservable> reads_of_expression(int tid, const wlang::Expr& e, const Location& l) {
  std::vector<AbstractObservable> out;
  for (auto& v : wlang::variable_occurrences(e)) out.push_back({tid, Access::Read, v, l});
  return out;
}

std::vector<SingleConcreteStep> step_concrete_single(const CompiledProgram& p, int tid,
                                                     const std::vector<Integer>& vals, const ThreadCtl& ctl,
                                                     const Domain& domain) {
  std::vector<SingleConcreteStep> out;
  const Frame& f = ctl.stack.back();
  const Node& n = p.node(f.node);
  switch (n.kind) {
    case StmtKind::Assign: {
      auto v = vals;
      v[n.var] = eval(*n.expr, vals);
      out.push_back({std::move(v), completed(p, ctl), std::nullopt});
      break;
    }
    case StmtKind::Havoc:
    case StmtKind::Input:
      for (const auto& k : domain) {
        auto v = vals;
        v[n.var] = k;
        ConcreteObservable o{tid, n.kind == StmtKind::Havoc ? IoKind::Havoc : IoKind::Input, k,
                             n.kind == StmtKind::Havoc ? p.vars()[n.var].name : p.tags()[n.tag]};
        out.push_back({std::move(v), completed(p, ctl), std::move(o)});
      }
      break;
    case StmtKind::Output:
      out.push_back({vals, completed(p, ctl), ConcreteObservable{tid, IoKind::Output, eval(*n.expr, vals), p.tags()[n.tag]}});
      break;
    case StmtKind::If: {
      bool c = eval(*n.expr, vals) != 0;
      out.push_back({vals, enter(p, ctl, c ? n.body : n.else_body, false), std::nullopt});
      break;
    }
    case StmtKind::While: {
      bool c = eval(*n.expr, vals) != 0;
      if (!c)
        out.push_back({vals, completed(p, ctl), std::nullopt});
      else if (may_iterate(p, f))
        out.push_back({vals, enter(p, ctl, n.body, true), std::nullopt});
      break;
    }
    default: break;
  }
  return out;
}

std::vector<MicroStep> abstract_micro_steps(const CompiledProgram& p, int tid, const ThreadCtl& ctl) {
  std::vector<MicroStep> out;
  const Frame& f = ctl.stack.back();
  const Node& n = p.node(f.node);
  auto obs = [&](Access a, const std::string& v) { return AbstractObservable{tid, a, v, n.loc}; };
  auto read_next = [&]() {
    ThreadCtl c = ctl;
    ++c.micro;
    out.push_back({std::move(c), obs(Access::Read, p.vars()[n.reads[ctl.micro]].name)});
  };
  const bool reading = ctl.micro < n.reads.size();
  switch (n.kind) {
    case StmtKind::Assign:
      if (reading)
        read_next();
      else
        out.push_back({completed(p, ctl), obs(Access::Write, p.vars()[n.var].name)});
      break;
    case StmtKind::Havoc: out.push_back({completed(p, ctl), obs(Access::Write, p.vars()[n.var].name)}); break;
    case StmtKind::Input:
      if (ctl.micro == 0) {
        ThreadCtl c = ctl;
        c.micro = 1;
        out.push_back({std::move(c), obs(Access::Write, dev_variable(p.tags()[n.tag]))});
      } else {
        out.push_back({completed(p, ctl), obs(Access::Write, p.vars()[n.var].name)});
      }
      break;
    case StmtKind::Output:
      if (reading)
        read_next();
      else
        out.push_back({completed(p, ctl), obs(Access::Write, dev_variable(p.tags()[n.tag]))});
      break;
    case StmtKind::If:
      if (reading) {
        read_next();
      } else {
        out.push_back({enter(p, ctl, n.body, false), obs(Access::Then, "")});
        out.push_back({enter(p, ctl, n.else_body, false), obs(Access::Else, "")});
      }
      break;
    case StmtKind::While:
      if (reading) {
        read_next();
      } else {
        out.push_back({completed(p, ctl), obs(Access::Exit, "")});
        if (may_iterate(p, f)) out.push_back({enter(p, ctl, n.body, true), obs(Access::Loop, "")});
      }
      break;
    default: break;
  }
  return out;
}

std::vector<SingleAbstractStep> step_abstract_single(const CompiledProgram& p, int tid, const ThreadCtl& ctl) {
  std::vector<SingleAbstractStep> out;
  std::vector<SingleAbstractStep> work{{ctl, {}}};
  while (!work.empty()) {
    SingleAbstractStep cur = std::move(work.back());
    work.pop_back();
    for (auto& m : abstract_micro_steps(p, tid, cur.ctl)) {
      SingleAbstractStep next{std::move(m.ctl), cur.obs};
      next.obs.push_back(std::move(m.obs));
      if (next.ctl.micro == 0)
        out.push_back(std::move(next));
      else
        work.push_back(std::move(next));
    }
  }
  return out;
}

ConcreteStep step_concrete(const CompiledProgram& p, const ConcreteState& s, const Domain& domain, Scheduling mode) {
  return program_step<ConcreteState, ConcreteObservable>(
      p, s, mode, [&](int i, const ConcreteState& st, ConcreteStep& r) {
        for (auto& one : step_concrete_single(p, i, st.vals, st.threads[i - 1], domain)) {
          ConcreteState t;
          t.ctid = st.ctid;
          t.vals = std::move(one.vals);
          t.threads = st.threads;
          t.threads[i - 1] = std::move(one.ctl);
          r.succ.push_back({std::move(t), std::move(one.obs)});
        }
      });
}

ConcreteStep step_nonpreemptive(const CompiledProgram& p, const ConcreteState& s, const Domain& domain) {
  return step_concrete(p, s, domain, Scheduling::NonPreemptive);
}

ConcreteStep step_preemptive(const CompiledProgram& p, const ConcreteState& s, const Domain& domain) {
  return step_concrete(p, s, domain, Scheduling::Preemptive);
}

AbstractStep step_abstract(const CompiledProgram& p, const AbstractState& s, Scheduling mode) {
  return program_step<AbstractState, AbstractObservable>(
      p, s, mode, [&](int i, const AbstractState& st, AbstractStep& r) {
        for (auto& m : abstract_micro_steps(p, i, st.threads[i - 1])) {
          AbstractState t = st;
          t.threads[i - 1] = std::move(m.ctl);
          r.succ.push_back({std::move(t), std::move(m.obs)});
        }
      });
}

bool is_blocked(const CompiledProgram& p, const AbstractState& s) { return blocked_impl(p, s); }
bool is_blocked(const CompiledProgram& p, const ConcreteState& s) { return blocked_impl(p, s); }

namespace {
std::size_t hash_threads(std::size_t h, const std::vector<ThreadCtl>& ts) {
  for (const auto& t : ts) {
    boost::hash_combine(h, t.micro);
    boost::hash_combine(h, t.stack.size());
    for (const auto& f : t.stack) {
      boost::hash_combine(h, f.node);
      boost::hash_combine(h, f.iter);
    }
  }
  return h;
}
}  // namespace

std::size_t StateHash::operator()(const AbstractState& s) const {
  std::size_t h = static_cast<std::size_t>(s.ctid);
  for (int v : s.sync) boost::hash_combine(h, v);
  return hash_threads(h, s.threads);
}

std::size_t StateHash::operator()(const ConcreteState& s) const {
  std::size_t h = static_cast<std::size_t>(s.ctid);
  for (const auto& v : s.vals) boost::hash_combine(h, boost::multiprecision::hash_value(v));
  return hash_threads(h, s.threads);
}

std::string describe(const CompiledProgram& p, const AbstractState& s) {
  std::ostringstream out;
  out << "ctid=" << s.ctid;
  for (const auto& v : p.vars())
    if (v.sync_slot >= 0) out << " " << v.name << "=" << s.sync[v.sync_slot];
  for (int j = 1; j <= p.threads(); ++j) {
    const ThreadCtl& c = s.threads[j - 1];
    out << " T" << j << "@";
    if (c.done()) {
      out << "done";
    } else {
      out << p.node(c.stack.back().node).loc.label;
      if (c.micro) out << "+" << c.micro;
    }
  }
  return out.str();
}

}  // namespace presafe::semantics
