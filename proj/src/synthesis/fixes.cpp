#include "ast_util.hpp"
#include "presafe/synthesis.hpp"

#include <algorithm>

namespace presafe::synthesis {

const char* fix_kind_name(Fix::Kind k) {
  switch (k) {
    case Fix::Kind::Lock: return "lock";
    case Fix::Kind::Lock2: return "lock2";
    case Fix::Kind::Reorder: return "reorder";
  }
  return "?";
}

std::string Fix::str() const {
  if (kind == Kind::Reorder) return "reorder(T" + std::to_string(tid) + "." + signal + ", T" + std::to_string(tid) + "." + after + ")";
  std::string s = "lock(";
  for (std::size_t i = 0; i < ranges.size(); ++i)
    s += (i ? ", T" : "T") + std::to_string(ranges[i].tid) + ".[" + ranges[i].first + ":" + ranges[i].last + "]";
  return s + ")";
}

namespace {

// orientation-free identity of a fix
Fix normalized(Fix f) {
  std::sort(f.ranges.begin(), f.ranges.end());
  if (f.kind == Fix::Kind::Lock2) f.kind = Fix::Kind::Lock;
  return f;
}

bool same_fix(const Fix& a, const Fix& b) { return normalized(a) == normalized(b); }

void add_unique(std::vector<Fix>& out, Fix f) {
  for (const auto& g : out)
    if (same_fix(g, f)) return;
  out.push_back(std::move(f));
}

}  // namespace

bool Plan::add(const Fix& f) {
  for (const auto& g : fixes)
    if (same_fix(g, f)) return false;
  fixes.push_back(f);
  return true;
}

std::vector<Fix> infer_fixes(const Constraint& rho, const std::vector<EventId>& events, const wlang::Program& program) {
  std::vector<Fix> out;
  auto atoms = rho.atoms();
  auto tid_of = [&](int e) { return events[e].tid; };
  auto label_of = [&](int e) { return events[e].location.label; };

  // a1 = p < q with p on t1, q on t2; a2 = r < s with r on t2, s on t1
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (i == j) continue;
      int p = atoms[i].before, q = atoms[i].after, r = atoms[j].before, s = atoms[j].after;
      if (tid_of(p) == tid_of(q) || tid_of(r) != tid_of(q) || tid_of(s) != tid_of(p)) continue;
      if (p > s) continue;  // event indices follow program order within a thread
      Fix f;
      f.kind = r <= q ? Fix::Kind::Lock : Fix::Kind::Lock2;
      f.ranges.push_back({tid_of(p), label_of(p), label_of(s)});
      if (r <= q)
        f.ranges.push_back({tid_of(q), label_of(r), label_of(q)});
      else
        f.ranges.push_back({tid_of(q), label_of(q), label_of(r)});
      add_unique(out, std::move(f));
    }

  // t1.l1' < t2.l2' where t1 awaits c before l1' and t2 signals c before l2'
  for (const Atom& a : atoms) {
    int t1 = tid_of(a.before), t2 = tid_of(a.after);
    if (t1 == t2 || t1 < 1 || t2 > static_cast<int>(program.threads.size())) continue;
    const auto& body1 = program.threads[t1 - 1].body;
    const auto& body2 = program.threads[t2 - 1].body;
    auto order1 = ast::preorder(body1);
    auto order2 = ast::preorder(body2);
    int l1 = ast::preorder_index(body1, label_of(a.before));
    int l2 = ast::preorder_index(body2, label_of(a.after));
    if (l1 < 0 || l2 < 0) continue;
    std::vector<std::string> awaited;
    for (int k = 0; k < l1; ++k)
      if (order1[k]->kind == wlang::StmtKind::Await) awaited.push_back(order1[k]->target);
    std::vector<std::string> conds;
    for (int k = l2 - 1; k >= 0; --k) {
      const auto* st = order2[k];
      if (st->kind != wlang::StmtKind::Signal || std::find(conds.begin(), conds.end(), st->target) != conds.end()) continue;
      conds.push_back(st->target);
      if (std::find(awaited.begin(), awaited.end(), st->target) == awaited.end()) continue;
      Fix f;
      f.kind = Fix::Kind::Reorder;
      f.tid = t2;
      f.signal = st->label;
      f.after = order2[l2]->label;
      add_unique(out, std::move(f));
    }
  }
  return out;
}

}  // namespace presafe::synthesis
