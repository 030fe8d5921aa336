#include "presafe/wlang.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace presafe::wlang {

Expr Expr::var(std::string n) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  return e;
}

Expr Expr::constant(Integer v) {
  Expr e;
  e.kind = Kind::Const;
  e.value = std::move(v);
  return e;
}

Expr Expr::op(std::string o, std::vector<Expr> a) {
  Expr e;
  e.kind = Kind::Op;
  e.name = std::move(o);
  e.args = std::move(a);
  return e;
}

int arity(const std::string& op) {
  if (op == "!" || op == "neg") return 1;
  static const std::set<std::string> binary = {"+", "-", "*", "==", "!=", "<", "<=", ">", ">=", "&&", "||"};
  return binary.count(op) ? 2 : -1;
}

bool Thread::is_skip() const {
  return std::all_of(body.begin(), body.end(), [](const Statement& s) { return s.kind == StmtKind::Skip; });
}

const Declaration* Program::find_decl(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

void collect_tags(const Block& b, std::set<std::string>& out) {
  for (const auto& s : b) {
    if (s.kind == StmtKind::Input || s.kind == StmtKind::Output) out.insert(s.tag);
    collect_tags(s.body, out);
    collect_tags(s.else_body, out);
  }
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Var: out.push_back(e.name); break;
    case Expr::Kind::Const: break;
    case Expr::Kind::Op:
      for (const auto& a : e.args) collect_vars(a, out);
      break;
  }
}

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Std: return "var";
    case VarKind::Lock: return "lock";
    case VarKind::Cond: return "cond";
  }
  return "?";
}

struct Validator {
  const Program& p;
  int thread = 0;
  std::set<std::string> labels;

  [[noreturn]] void fail(const Statement& s, const std::string& msg) {
    throw SemanticError("thread " + std::to_string(thread) + " label " + s.label + ": " + msg);
  }

  void need(const Statement& s, const std::string& name, VarKind kind) {
    const Declaration* d = p.find_decl(name);
    if (!d) fail(s, "undeclared variable '" + name + "'");
    if (d->kind != kind)
      fail(s, "'" + name + "' is declared " + kind_name(d->kind) + " but used as " + kind_name(kind));
  }

  void expr(const Statement& s, const Expr& e) {
    if (e.kind == Expr::Kind::Op && arity(e.name) != static_cast<int>(e.args.size()))
      fail(s, "bad operator arity for '" + e.name + "'");
    for (const auto& a : e.args) expr(s, a);
    if (e.kind == Expr::Kind::Var) need(s, e.name, VarKind::Std);
  }

  void block(const Block& b) {
    for (const auto& s : b) stmt(s);
  }

  void stmt(const Statement& s) {
    if (s.label.empty()) fail(s, "empty label");
    if (!labels.insert(s.label).second) fail(s, "duplicate label");
    switch (s.kind) {
      case StmtKind::Skip:
      case StmtKind::Yield: break;
      case StmtKind::Assign:
        need(s, s.target, VarKind::Std);
        expr(s, *s.expr);
        break;
      case StmtKind::Havoc:
      case StmtKind::Input: need(s, s.target, VarKind::Std); break;
      case StmtKind::Output: expr(s, *s.expr); break;
      case StmtKind::If:
        expr(s, *s.expr);
        block(s.body);
        block(s.else_body);
        break;
      case StmtKind::While:
        if (s.expr) expr(s, *s.expr);
        block(s.body);
        break;
      case StmtKind::Lock:
      case StmtKind::Unlock: need(s, s.target, VarKind::Lock); break;
      case StmtKind::Signal:
      case StmtKind::Await:
      case StmtKind::Reset: need(s, s.target, VarKind::Cond); break;
    }
  }
};

const Statement* find_in(const Block& b, const std::string& label) {
  for (const auto& s : b) {
    if (s.label == label) return &s;
    if (auto* r = find_in(s.body, label)) return r;
    if (auto* r = find_in(s.else_body, label)) return r;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> Program::tags() const {
  std::set<std::string> out;
  for (const auto& t : threads) collect_tags(t.body, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> variable_occurrences(const Expr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  return out;
}

void validate(const Program& p) {
  if (p.threads.empty()) throw SemanticError("program has no threads");
  std::set<std::string> names;
  for (const auto& d : p.decls) {
    if (!names.insert(d.name).second) throw SemanticError("duplicate declaration of '" + d.name + "'");
    if (d.kind == VarKind::Cond && d.init != 0 && d.init != 1)
      throw SemanticError("condition variable '" + d.name + "' must start at 0 or 1");
    if (d.kind == VarKind::Lock && (d.init < 0 || d.init > static_cast<long>(p.threads.size())))
      throw SemanticError("lock '" + d.name + "' must start at 0..n");
  }
  for (const auto& t : p.tags())
    if (names.count(t)) throw SemanticError("tag '" + t + "' clashes with a variable name");
  Validator v{p, 0, {}};
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    v.thread = static_cast<int>(i) + 1;
    v.labels.clear();
    v.block(p.threads[i].body);
  }
}

const Statement* find_statement(const Program& p, int thread, const std::string& label) {
  if (thread < 1 || thread > static_cast<int>(p.threads.size())) return nullptr;
  return find_in(p.threads[thread - 1].body, label);
}

Program parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

}  // namespace presafe::wlang
