#include "presafe/semantics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace presafe {

const char* access_name(Access a) {
  switch (a) {
    case Access::Read: return "read";
    case Access::Write: return "write";
    case Access::Exit: return "exit";
    case Access::Loop: return "loop";
    case Access::Then: return "then";
    case Access::Else: return "else";
  }
  return "?";
}

std::string AbstractObservable::str() const {
  std::string s = "T" + std::to_string(tid) + "." + location.label + ":" + access_name(access);
  if (!variable.empty()) s += "(" + variable + ")";
  return s;
}

std::string ConcreteObservable::str() const {
  static const char* names[] = {"havoc", "input", "output"};
  return "(" + std::to_string(tid) + "," + names[static_cast<int>(kind)] + "," + value.str() + "," + subject + ")";
}

bool operator<(const ConcreteObservable& a, const ConcreteObservable& b) {
  if (a.tid != b.tid) return a.tid < b.tid;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.value != b.value) return a.value < b.value;
  return a.subject < b.subject;
}

std::string dev_variable(const std::string& tag) { return "dev:" + tag; }

namespace semantics {

using wlang::StmtKind;

CompiledProgram::CompiledProgram(const wlang::Program& p, int unroll) : src_(p), unroll_(unroll) {
  for (const auto& d : p.decls) {
    VarInfo v{d.name, d.kind, d.init};
    if (d.kind != wlang::VarKind::Std) v.sync_slot = sync_count_++;
    vars_.push_back(std::move(v));
  }
  tags_ = p.tags();
  for (int tid = 1; tid <= static_cast<int>(p.threads.size()); ++tid)
    roots_.push_back(compile_block(p.threads[tid - 1].body, tid));
}

int CompiledProgram::var_id(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

CExpr CompiledProgram::compile_expr(const wlang::Expr& e) const {
  CExpr c;
  switch (e.kind) {
    case wlang::Expr::Kind::Var: {
      c.kind = CExpr::Kind::Var;
      c.var = var_id(e.name);
      if (c.var < 0) throw SemanticError("undeclared variable '" + e.name + "'");
      break;
    }
    case wlang::Expr::Kind::Const:
      c.kind = CExpr::Kind::Const;
      c.value = e.value;
      break;
    case wlang::Expr::Kind::Op: {
      static const std::map<std::string, Op> ops = {
          {"+", Op::Add}, {"-", Op::Sub}, {"*", Op::Mul}, {"==", Op::Eq}, {"!=", Op::Ne},
          {"<", Op::Lt},  {"<=", Op::Le}, {">", Op::Gt},  {">=", Op::Ge}, {"&&", Op::And},
          {"||", Op::Or}, {"!", Op::Not}, {"neg", Op::Neg}};
      c.kind = CExpr::Kind::Op;
      c.op = ops.at(e.name);
      for (const auto& a : e.args) c.args.push_back(compile_expr(a));
      break;
    }
  }
  return c;
}

void CompiledProgram::collect_reads(const CExpr& e, std::vector<int>& out) const {
  if (e.kind == CExpr::Kind::Var) out.push_back(e.var);
  for (const auto& a : e.args) collect_reads(a, out);
}

std::vector<NodeId> CompiledProgram::compile_block(const wlang::Block& b, int tid) {
  std::vector<NodeId> out;
  for (const auto& s : b) {
    if (s.kind == StmtKind::While && !s.expr) {
      // b = havoc(); while (b) { ...; b = havoc(); }
      VarInfo hidden{"$" + std::to_string(tid) + "." + s.label, wlang::VarKind::Std, 0};
      int hv = static_cast<int>(vars_.size());
      vars_.push_back(hidden);
      Location loc{tid, s.label};
      Node pre;
      pre.kind = StmtKind::Havoc;
      pre.loc = loc;
      pre.var = hv;
      nodes_.push_back(pre);
      out.push_back(static_cast<NodeId>(nodes_.size() - 1));

      Node loop;
      loop.kind = StmtKind::While;
      loop.loc = loc;
      CExpr cond;
      cond.kind = CExpr::Kind::Var;
      cond.var = hv;
      loop.expr = cond;
      loop.reads = {hv};
      loop.body = compile_block(s.body, tid);
      nodes_.push_back(pre);  // trailing havoc, same shape as the first
      loop.body.push_back(static_cast<NodeId>(nodes_.size() - 1));
      nodes_.push_back(std::move(loop));
      out.push_back(static_cast<NodeId>(nodes_.size() - 1));
      continue;
    }
    out.push_back(compile(s, tid));
  }
  return out;
}

NodeId CompiledProgram::compile(const wlang::Statement& s, int tid) {
  Node n;
  n.kind = s.kind;
  n.loc = Location{tid, s.label};
  if (!s.target.empty()) {
    n.var = var_id(s.target);
    if (n.var < 0) throw SemanticError("undeclared variable '" + s.target + "'");
  }
  if (!s.tag.empty())
    n.tag = static_cast<int>(std::lower_bound(tags_.begin(), tags_.end(), s.tag) - tags_.begin());
  if (s.expr) {
    n.expr = compile_expr(*s.expr);
    collect_reads(*n.expr, n.reads);
  }
  if (s.kind == StmtKind::If || s.kind == StmtKind::While) {
    n.body = compile_block(s.body, tid);
    n.else_body = compile_block(s.else_body, tid);
  }
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

Domain default_domain() { return {0, 1}; }

Domain parse_domain(const std::string& spec) {
  Domain d;
  auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      long lo = std::stol(spec.substr(0, dots)), hi = std::stol(spec.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty range");
      for (long v = lo; v <= hi; ++v) d.emplace_back(v);
    } else {
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ',')) d.emplace_back(std::stol(item));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad domain '" + spec + "'");
  }
  if (d.empty()) throw std::invalid_argument("bad domain '" + spec + "'");
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

}  // namespace semantics
}  // namespace presafe
