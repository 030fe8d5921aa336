#pragma once

#include "presafe/wlang.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace presafe::synthesis::ast {

using wlang::Block;
using wlang::Statement;
using wlang::StmtKind;

// child index within a block, then which sub-block of that child to enter
// (0 = body, 1 = else); the last step of a statement path has branch -1
struct Step {
  int index = 0;
  int branch = -1;
  auto operator<=>(const Step&) const = default;
};
using Path = std::vector<Step>;

inline void preorder(const Block& b, std::vector<const Statement*>& out) {
  for (const auto& s : b) {
    out.push_back(&s);
    preorder(s.body, out);
    preorder(s.else_body, out);
  }
}

inline std::vector<const Statement*> preorder(const Block& b) {
  std::vector<const Statement*> out;
  preorder(b, out);
  return out;
}

// position of label in preorder, -1 when absent
inline int preorder_index(const Block& b, const std::string& label) {
  auto all = preorder(b);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i]->label == label) return static_cast<int>(i);
  return -1;
}

inline std::optional<Path> find_path(const Block& b, const std::string& label) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Statement& s = b[i];
    if (s.label == label) return Path{{static_cast<int>(i), -1}};
    for (int br = 0; br < 2; ++br)
      if (auto sub = find_path(br == 0 ? s.body : s.else_body, label)) {
        Path p{{static_cast<int>(i), br}};
        p.insert(p.end(), sub->begin(), sub->end());
        return p;
      }
  }
  return std::nullopt;
}

// block reached by following every step of prefix
inline Block& block_at(Block& root, const Path& prefix) {
  Block* b = &root;
  for (const Step& st : prefix) {
    Statement& s = (*b)[st.index];
    b = st.branch == 0 ? &s.body : &s.else_body;
  }
  return *b;
}

inline bool any_statement(const Statement& s, const std::function<bool(const Statement&)>& pred) {
  if (pred(s)) return true;
  for (const auto& c : s.body)
    if (any_statement(c, pred)) return true;
  for (const auto& c : s.else_body)
    if (any_statement(c, pred)) return true;
  return false;
}

inline bool preemption_point(const Statement& s) {
  return s.kind == StmtKind::Yield || s.kind == StmtKind::Await || s.kind == StmtKind::Lock;
}

}  // namespace presafe::synthesis::ast
