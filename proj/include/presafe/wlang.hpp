#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace presafe {

using Integer = boost::multiprecision::cpp_int;

// thread index is 1-based, label is unique within the thread
struct Location {
  int thread = 0;
  std::string label;

  std::string str() const { return std::to_string(thread) + "." + label; }
  auto operator<=>(const Location&) const = default;
  bool operator==(const Location&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace wlang {

enum class VarKind { Std, Lock, Cond };

struct Declaration {
  std::string name;
  VarKind kind = VarKind::Std;
  Integer init = 0;
  bool operator==(const Declaration&) const = default;
};

struct Expr {
  enum class Kind { Var, Const, Op };
  Kind kind = Kind::Const;
  std::string name;  // variable name or operator symbol
  Integer value = 0;
  std::vector<Expr> args;

  static Expr var(std::string n);
  static Expr constant(Integer v);
  static Expr op(std::string o, std::vector<Expr> a);
  bool operator==(const Expr&) const = default;
};

// unary operators are "!" and "neg"
int arity(const std::string& op);

enum class StmtKind { Skip, Assign, Havoc, If, While, Input, Output, Lock, Unlock, Signal, Await, Reset, Yield };

struct Statement;
using Block = std::vector<Statement>;  // an empty block is skip

struct Statement {
  StmtKind kind = StmtKind::Skip;
  std::string label;
  std::string target;       // assigned variable, or lock/cond operand
  std::string tag;          // input/output channel
  std::optional<Expr> expr; // while(*) has no condition
  Block body;               // then-branch or loop body
  Block else_body;
  bool has_else = false;

  bool operator==(const Statement&) const = default;
};

struct Thread {
  std::string name;
  Block body;
  bool is_skip() const;
  bool operator==(const Thread&) const = default;
};

struct Program {
  std::vector<Declaration> decls;
  std::vector<Thread> threads;

  const Declaration* find_decl(const std::string& name) const;
  std::vector<std::string> tags() const;  // sorted, unique
  bool operator==(const Program&) const = default;
};

Program parse_program(const std::string& source);
Program parse_file(const std::string& path);
std::string pretty_print(const Program& p);
std::string print_expr(const Expr& e);
std::string print_statement_head(const Statement& s);  // one line, no label, no nested blocks

// checks kinds, declarations and label uniqueness; throws SemanticError
void validate(const Program& p);

// statement lookup by label within one thread (1-based)
const Statement* find_statement(const Program& p, int thread, const std::string& label);

// every variable occurrence, left to right, duplicates kept
std::vector<std::string> variable_occurrences(const Expr& e);

}  // namespace wlang
}  // namespace presafe
