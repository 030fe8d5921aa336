#include "presafe/wlang.hpp"

#include <cctype>
#include <set>

namespace presafe::wlang {
namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Punct, "", line, col};
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) advance(1);
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      t.kind = Tok::Int;
    } else {
      bool matched = false;
      for (const char* op : two) {
        if (src.compare(i, 2, op) == 0) {
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string("{}();,=<>+-*!:").find(c) == std::string::npos)
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        advance(1);
      }
    }
    t.text = src.substr(start, i - start);
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

const std::set<std::string> kKeywords = {"var",   "lock",   "cond",  "thread", "skip",   "havoc", "if",
                                         "else",  "while",  "input", "output", "unlock", "signal",
                                         "await", "reset",  "yield"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program program() {
    Program p;
    while (is("var") || is("lock") || is("cond")) p.decls.push_back(decl());
    if (!is("thread")) fail("'thread' or a declaration");
    while (is("thread")) {
      p.threads.push_back(thread(static_cast<int>(p.threads.size()) + 1));
    }
    if (peek().kind != Tok::End) fail("'thread' or end of input");
    return p;
  }

 private:
  std::vector<Token> t_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
  bool is(const char* text, std::size_t ahead = 0) const {
    const Token& k = peek(ahead);
    return k.kind != Tok::End && k.text == text;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& k = peek();
    throw ParseError(k.line, k.col, "expected " + expected + ", found '" + k.text + "'");
  }
  Token take() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
  void expect(const char* text) {
    if (!is(text)) fail(std::string("'") + text + "'");
    take();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail("identifier");
    return take().text;
  }
  Integer integer() {
    bool neg = false;
    if (is("-")) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::Int) fail("integer");
    Integer v(take().text);
    return neg ? Integer(-v) : v;
  }

  Declaration decl() {
    Declaration d;
    std::string kw = take().text;
    d.kind = kw == "var" ? VarKind::Std : kw == "lock" ? VarKind::Lock : VarKind::Cond;
    d.name = ident();
    if (is("=")) {
      take();
      d.init = integer();
    }
    expect(";");
    return d;
  }

  Thread thread(int) {
    expect("thread");
    Thread th;
    th.name = ident();
    th.body = block();
    return th;
  }

  Block block() {
    expect("{");
    Block b;
    while (!is("}")) {
      if (peek().kind == Tok::End) fail("'}'");
      b.push_back(lstmt());
    }
    take();
    return b;
  }

  std::optional<std::string> label() {
    const Token& first = peek();
    bool labelish = first.kind == Tok::Int || (first.kind == Tok::Ident && !kKeywords.count(first.text));
    if (!labelish || !is(":", 1)) return std::nullopt;
    std::string text = take().text;
    // compound labels such as 3:7 come from printed auto labels
    while (is(":") && peek(1).kind == Tok::Int && is(":", 2)) {
      take();
      text += ":" + take().text;
    }
    expect(":");
    return text;
  }

  Statement lstmt() {
    const Token& at = peek();
    std::string auto_label = std::to_string(at.line) + ":" + std::to_string(at.col);
    auto explicit_label = label();
    Statement s = stmt();
    s.label = explicit_label ? *explicit_label : auto_label;
    return s;
  }

  Statement stmt() {
    Statement s;
    if (is("skip")) {
      take();
      expect(";");
      s.kind = StmtKind::Skip;
    } else if (is("yield")) {
      take();
      expect(";");
      s.kind = StmtKind::Yield;
    } else if (is("if")) {
      take();
      expect("(");
      s.kind = StmtKind::If;
      s.expr = expr();
      expect(")");
      s.body = block();
      if (is("else")) {
        take();
        s.has_else = true;
        s.else_body = block();
      }
    } else if (is("while")) {
      take();
      expect("(");
      s.kind = StmtKind::While;
      if (is("*") && is(")", 1)) {
        take();
      } else {
        s.expr = expr();
      }
      expect(")");
      s.body = block();
    } else if (is("output")) {
      take();
      expect("(");
      s.kind = StmtKind::Output;
      s.tag = ident();
      expect(",");
      s.expr = expr();
      expect(")");
      expect(";");
    } else if (is("lock") || is("unlock") || is("signal") || is("await") || is("reset")) {
      std::string kw = take().text;
      s.kind = kw == "lock"     ? StmtKind::Lock
               : kw == "unlock" ? StmtKind::Unlock
               : kw == "signal" ? StmtKind::Signal
               : kw == "await"  ? StmtKind::Await
                                : StmtKind::Reset;
      expect("(");
      s.target = ident();
      expect(")");
      expect(";");
    } else if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) {
      s.target = take().text;
      expect("=");
      if (is("havoc") && is("(", 1)) {
        take();
        take();
        expect(")");
        s.kind = StmtKind::Havoc;
      } else if (is("input") && is("(", 1)) {
        take();
        take();
        s.tag = ident();
        expect(")");
        s.kind = StmtKind::Input;
      } else {
        s.kind = StmtKind::Assign;
        s.expr = expr();
      }
      expect(";");
    } else {
      fail("statement");
    }
    return s;
  }

  // precedence climbing, all binary operators left associative
  static int prec(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*") return 6;
    return 0;
  }

  Expr expr(int min_prec = 1) {
    Expr lhs = unary();
    for (;;) {
      const Token& k = peek();
      int p = k.kind == Tok::Punct ? prec(k.text) : 0;
      if (p < min_prec || p == 0) break;
      std::string op = take().text;
      Expr rhs = expr(p + 1);
      lhs = Expr::op(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr unary() {
    if (is("!")) {
      take();
      return Expr::op("!", {unary()});
    }
    if (is("-")) {
      take();
      return Expr::op("neg", {unary()});
    }
    return primary();
  }

  Expr primary() {
    if (is("(")) {
      take();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (peek().kind == Tok::Int) return Expr::constant(Integer(take().text));
    if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) return Expr::var(take().text);
    fail("expression");
  }
};

}  // namespace

Program parse_program(const std::string& source) {
  Parser parser(lex(source));
  Program p = parser.program();
  validate(p);
  return p;
}

}  // namespace presafe::wlang
