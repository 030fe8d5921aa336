#include "ast_util.hpp"
#include "presafe/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace presafe::synthesis {

namespace {

using ast::Path;
using wlang::Block;
using wlang::Statement;
using wlang::StmtKind;

std::string thread_name(int tid) { return "T" + std::to_string(tid); }

// threads with identical bodies form one procedure; fixes apply to all of them
std::vector<std::vector<int>> procedure_groups(const wlang::Program& p) {
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    bool placed = false;
    for (auto& g : groups)
      if (p.threads[g.front() - 1].body == p.threads[i].body) {
        g.push_back(static_cast<int>(i) + 1);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({static_cast<int>(i) + 1});
  }
  return groups;
}

const std::vector<int>& group_of(const std::vector<std::vector<int>>& groups, int tid) {
  for (const auto& g : groups)
    if (std::find(g.begin(), g.end(), tid) != g.end()) return g;
  static const std::vector<int> none;
  return none;
}

bool prefix_of(const Path& prefix, const Path& p) {
  return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

// moves the signal statement to just after the sibling that contains after
std::optional<std::string> move_signal(Block& body, const std::string& signal, const std::string& after) {
  auto ps = ast::find_path(body, signal);
  auto pa = ast::find_path(body, after);
  if (!ps || !pa) return "label not found";
  Path block(ps->begin(), ps->end() - 1);
  Block& b = ast::block_at(body, block);
  int i = ps->back().index;
  if (b[i].kind != StmtKind::Signal) return "statement " + signal + " is not a signal";
  if (pa->size() <= block.size() || !std::equal(block.begin(), block.end(), pa->begin()))
    return "target " + after + " is not in the block of " + signal;
  int j = (*pa)[block.size()].index;
  if (j == i || j == i - 1) return std::nullopt;
  if (j < i) return "target " + after + " precedes " + signal;
  for (int k = i + 1; k <= j; ++k)
    if (ast::any_statement(b[k], ast::preemption_point))
      return "moving " + signal + " would cross the preemption point in " + b[k].label;
  Statement s = b[i];
  b.erase(b.begin() + i);
  b.insert(b.begin() + j, std::move(s));
  return std::nullopt;
}

struct Span {
  int tid = 0;
  Path block;  // full steps to the enclosing block
  int lo = 0, hi = 0;
  auto operator<=>(const Span&) const = default;
};

std::optional<Span> span_of(const Block& body, int tid, const std::string& first, const std::string& last) {
  auto pf = ast::find_path(body, first);
  auto pl = ast::find_path(body, last);
  if (!pf || !pl) return std::nullopt;
  std::size_t d = 0;
  while (d + 1 < pf->size() && d + 1 < pl->size() && (*pf)[d] == (*pl)[d]) ++d;
  Span s;
  s.tid = tid;
  s.block.assign(pf->begin(), pf->begin() + static_cast<std::ptrdiff_t>(d));
  s.lo = std::min((*pf)[d].index, (*pl)[d].index);
  s.hi = std::max((*pf)[d].index, (*pl)[d].index);
  return s;
}

// 0: disjoint, 1: same block and intersecting, 2: b inside a, 3: a inside b
int relation(const Span& a, const Span& b) {
  if (a.tid != b.tid) return 0;
  if (a.block == b.block) return a.hi < b.lo || b.hi < a.lo ? 0 : 1;
  if (prefix_of(a.block, b.block)) {
    int idx = b.block[a.block.size()].index;
    return idx >= a.lo && idx <= a.hi ? 2 : 0;
  }
  if (prefix_of(b.block, a.block)) {
    int idx = a.block[b.block.size()].index;
    return idx >= b.lo && idx <= b.hi ? 3 : 0;
  }
  return 0;
}

bool absorb(std::vector<Span>& spans) {
  bool changed = false;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < spans.size() && !again; ++i)
      for (std::size_t j = i + 1; j < spans.size() && !again; ++j) {
        int r = relation(spans[i], spans[j]);
        if (r == 0) continue;
        if (r == 1) {
          spans[i].lo = std::min(spans[i].lo, spans[j].lo);
          spans[i].hi = std::max(spans[i].hi, spans[j].hi);
        } else if (r == 3) {
          spans[i] = spans[j];
        }
        spans.erase(spans.begin() + static_cast<std::ptrdiff_t>(j));
        again = changed = true;
      }
  }
  std::sort(spans.begin(), spans.end());
  return changed;
}

bool overlapping(const std::vector<Span>& a, const std::vector<Span>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (relation(x, y) != 0) return true;
  return false;
}

std::set<std::string> all_labels(const Block& b) {
  std::set<std::string> out;
  for (const auto* s : ast::preorder(b)) out.insert(s->label);
  return out;
}

std::string fresh_label(std::set<std::string>& used, const std::string& base) {
  std::string l = base;
  for (int n = 1; used.count(l); ++n) l = base + "_" + std::to_string(n);
  used.insert(l);
  return l;
}

Statement sync_statement(StmtKind kind, const std::string& lock, std::string label) {
  Statement s;
  s.kind = kind;
  s.target = lock;
  s.label = std::move(label);
  return s;
}

}  // namespace

Placement render_plan(const wlang::Program& original, const Plan& plan) {
  Placement out;
  out.program = original;
  auto& prog = out.program;
  auto groups = procedure_groups(original);
  const int nthreads = static_cast<int>(prog.threads.size());

  for (const Fix& f : plan.fixes) {
    if (f.kind != Fix::Kind::Reorder) continue;
    if (f.tid < 1 || f.tid > nthreads) {
      out.errors.push_back("reorder " + f.str() + ": no such thread");
      continue;
    }
    for (int tid : group_of(groups, f.tid))
      if (auto err = move_signal(prog.threads[tid - 1].body, f.signal, f.after)) {
        out.errors.push_back("reorder " + f.str() + " in " + thread_name(tid) + ": " + *err);
        break;
      }
  }

  std::vector<std::vector<Span>> locks;
  for (const Fix& f : plan.fixes) {
    if (f.kind == Fix::Kind::Reorder) continue;
    std::vector<Span> spans;
    for (const auto& r : f.ranges) {
      if (r.tid < 1 || r.tid > nthreads) {
        out.errors.push_back("lock " + f.str() + ": no such thread");
        continue;
      }
      auto s = span_of(prog.threads[r.tid - 1].body, r.tid, r.first, r.last);
      if (!s) {
        out.errors.push_back("lock " + f.str() + ": range endpoints not found in " + thread_name(r.tid));
        continue;
      }
      for (int member : group_of(groups, r.tid)) {
        Span m = *s;
        m.tid = member;
        spans.push_back(m);
      }
    }
    absorb(spans);
    if (!spans.empty()) locks.push_back(std::move(spans));
  }

  // union locks whose spans touch until nothing changes
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < locks.size() && !again; ++i)
      for (std::size_t j = i + 1; j < locks.size() && !again; ++j)
        if (overlapping(locks[i], locks[j])) {
          locks[i].insert(locks[i].end(), locks[j].begin(), locks[j].end());
          locks.erase(locks.begin() + static_cast<std::ptrdiff_t>(j));
          absorb(locks[i]);
          again = true;
        }
  }
  for (auto& l : locks) absorb(l);
  std::sort(locks.begin(), locks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::set<std::string> names;
  for (const auto& d : prog.decls) names.insert(d.name);
  std::vector<std::string> lock_names;
  for (std::size_t i = 0, n = 0; i < locks.size(); ++i) {
    std::string name;
    do name = "synth_lock_" + std::to_string(n++);
    while (names.count(name));
    names.insert(name);
    lock_names.push_back(name);
    prog.decls.push_back({name, wlang::VarKind::Lock, 0});
  }
  out.locks = lock_names;

  for (int tid = 1; tid <= nthreads; ++tid) {
    struct Item {
      Span span;
      std::size_t lock;
    };
    std::vector<Item> items;
    for (std::size_t l = 0; l < locks.size(); ++l)
      for (const auto& s : locks[l])
        if (s.tid == tid) items.push_back({s, l});
    if (items.empty()) continue;
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.span < b.span; });

    Block& body = prog.threads[tid - 1].body;
    auto used = all_labels(body);
    // segments between top-level preemption points, numbered in program order
    struct Segment {
      Path block;
      int lo, hi;
      std::string acq, rel, lock;
    };
    std::vector<Segment> segments;
    std::vector<int> counter(locks.size(), 0);
    for (const auto& it : items) {
      const Block& b = ast::block_at(body, it.span.block);
      const std::string& name = lock_names[it.lock];
      int start = -1;
      auto close = [&](int end) {
        if (start < 0) return;
        int j = counter[it.lock]++;
        segments.push_back({it.span.block, start, end, fresh_label(used, name + "_acq" + std::to_string(j)),
                            fresh_label(used, name + "_rel" + std::to_string(j)), name});
        start = -1;
      };
      for (int k = it.span.lo; k <= it.span.hi; ++k) {
        if (ast::preemption_point(b[k])) {
          close(k - 1);
          continue;
        }
        if (ast::any_statement(b[k], ast::preemption_point)) {
          out.errors.push_back("lock " + name + " in " + thread_name(tid) + " would span the preemption point inside statement " +
                               b[k].label);
          close(k - 1);
          continue;
        }
        if (start < 0) start = k;
      }
      close(it.span.hi);
    }
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
      Block& b = ast::block_at(body, it->block);
      b.insert(b.begin() + it->hi + 1, sync_statement(StmtKind::Unlock, it->lock, it->rel));
      b.insert(b.begin() + it->lo, sync_statement(StmtKind::Lock, it->lock, it->acq));
    }
  }
  return out;
}

Placement place_locks(const wlang::Program& program, const Fix& fix) {
  Plan p;
  p.add(fix);
  return render_plan(program, p);
}

Placement apply_reorder(const wlang::Program& program, const Fix& fix) {
  Plan p;
  p.add(fix);
  return render_plan(program, p);
}

}  // namespace presafe::synthesis
