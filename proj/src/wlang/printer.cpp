#include "presafe/wlang.hpp"

#include <sstream>

namespace presafe::wlang {
namespace {

int prec_of(const Expr& e) {
  if (e.kind != Expr::Kind::Op) return 8;
  const std::string& op = e.name;
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  if (op == "*") return 6;
  return 7;  // unary
}

std::string wrap(const Expr& e, bool paren) {
  std::string s = print_expr(e);
  return paren ? "(" + s + ")" : s;
}

void print_block(std::ostringstream& out, const Block& b, int depth);

void print_stmt(std::ostringstream& out, const Statement& s, int depth) {
  std::string pad(2 * depth, ' ');
  out << pad << s.label << ": " << print_statement_head(s);
  switch (s.kind) {
    case StmtKind::If:
      out << " {\n";
      print_block(out, s.body, depth + 1);
      out << pad << "}";
      if (s.has_else) {
        out << " else {\n";
        print_block(out, s.else_body, depth + 1);
        out << pad << "}";
      }
      out << "\n";
      break;
    case StmtKind::While:
      out << " {\n";
      print_block(out, s.body, depth + 1);
      out << pad << "}\n";
      break;
    default: out << "\n";
  }
}

void print_block(std::ostringstream& out, const Block& b, int depth) {
  for (const auto& s : b) print_stmt(out, s, depth);
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Const: return e.value < 0 ? "(" + e.value.str() + ")" : e.value.str();
    case Expr::Kind::Op: break;
  }
  int p = prec_of(e);
  if (e.args.size() == 1) {
    std::string sym = e.name == "neg" ? "-" : e.name;
    return sym + wrap(e.args[0], prec_of(e.args[0]) < 7);
  }
  return wrap(e.args[0], prec_of(e.args[0]) < p) + " " + e.name + " " + wrap(e.args[1], prec_of(e.args[1]) <= p);
}

std::string print_statement_head(const Statement& s) {
  switch (s.kind) {
    case StmtKind::Skip: return "skip;";
    case StmtKind::Yield: return "yield;";
    case StmtKind::Assign: return s.target + " = " + print_expr(*s.expr) + ";";
    case StmtKind::Havoc: return s.target + " = havoc();";
    case StmtKind::Input: return s.target + " = input(" + s.tag + ");";
    case StmtKind::Output: return "output(" + s.tag + ", " + print_expr(*s.expr) + ");";
    case StmtKind::If: return "if (" + print_expr(*s.expr) + ")";
    case StmtKind::While: return "while (" + (s.expr ? print_expr(*s.expr) : std::string("*")) + ")";
    case StmtKind::Lock: return "lock(" + s.target + ");";
    case StmtKind::Unlock: return "unlock(" + s.target + ");";
    case StmtKind::Signal: return "signal(" + s.target + ");";
    case StmtKind::Await: return "await(" + s.target + ");";
    case StmtKind::Reset: return "reset(" + s.target + ");";
  }
  return "";
}

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  for (const auto& d : p.decls) {
    out << (d.kind == VarKind::Std ? "var " : d.kind == VarKind::Lock ? "lock " : "cond ") << d.name;
    if (d.init != 0) out << " = " << d.init.str();
    out << ";\n";
  }
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    if (i > 0 || !p.decls.empty()) out << "\n";
    const Thread& t = p.threads[i];
    if (t.body.empty()) {
      out << "thread " << t.name << " {}\n";
      continue;
    }
    out << "thread " << t.name << " {\n";
    print_block(out, t.body, 1);
    out << "}\n";
  }
  return out.str();
}

}  // namespace presafe::wlang
