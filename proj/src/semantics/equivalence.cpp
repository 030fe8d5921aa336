#include "presafe/semantics.hpp"

#include <algorithm>
#include <map>

namespace presafe::semantics {

std::string concrete_key(const ConcreteSequence& s) {
  std::string io;
  std::map<int, std::string> havocs;
  for (const auto& o : s) {
    if (o.kind == IoKind::Havoc)
      havocs[o.tid] += o.str();
    else
      io += o.str();
  }
  std::string key = io;
  for (const auto& [tid, h] : havocs) key += "|" + std::to_string(tid) + ":" + h;
  return key;
}

std::string abstract_key(const AbstractSequence& s) {
  std::map<int, std::string> per_tid;
  struct VarTrace {
    std::vector<std::string> pending;
    std::string text;
  };
  std::map<std::string, VarTrace> per_var;
  auto flush = [](VarTrace& v) {
    std::sort(v.pending.begin(), v.pending.end());
    v.text += "{";
    for (const auto& r : v.pending) v.text += r + ",";
    v.text += "}";
    v.pending.clear();
  };
  for (const auto& o : s) {
    std::string item = o.str() + "@" + std::to_string(o.location.thread);
    per_tid[o.tid] += item + ";";
    if (o.variable.empty()) continue;
    VarTrace& v = per_var[o.variable];
    if (o.access == Access::Write) {
      flush(v);
      v.text += item + ";";
    } else {
      v.pending.push_back(item);
    }
  }
  std::string key;
  for (const auto& [tid, t] : per_tid) key += std::to_string(tid) + ":" + t + "|";
  for (auto& [name, v] : per_var) {
    flush(v);
    key += name + ":" + v.text + "|";
  }
  return key;
}

bool equivalent_concrete(const ConcreteSequence& a, const ConcreteSequence& b) {
  return a.size() == b.size() && concrete_key(a) == concrete_key(b);
}

bool equivalent_abstract(const AbstractSequence& a, const AbstractSequence& b) {
  return a.size() == b.size() && abstract_key(a) == abstract_key(b);
}

}  // namespace presafe::semantics
