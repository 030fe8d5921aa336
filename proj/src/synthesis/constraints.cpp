#include "presafe/synthesis.hpp"

namespace presafe::synthesis {

namespace {

std::vector<std::vector<int>> good_positions(const std::vector<Trace>& nhood, const Classification& c) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < nhood.size(); ++i)
    if (c.cls[i] == TraceClass::Good) out.push_back(positions(nhood[i]));
  return out;
}

bool satisfies(const std::vector<Atom>& atoms, const std::vector<int>& pos) {
  for (const Atom& a : atoms)
    if (pos[a.before] >= pos[a.after]) return false;
  return true;
}

bool valid_parallel(const std::vector<Atom>& atoms, const std::vector<std::vector<int>>& good) {
  const auto n = static_cast<std::ptrdiff_t>(good.size());
  int hit = 0;
#pragma omp parallel for reduction(| : hit)
  for (std::ptrdiff_t i = 0; i < n; ++i) hit |= satisfies(atoms, good[i]) ? 1 : 0;
  return hit == 0;
}

bool valid_serial(const std::vector<Atom>& atoms, const std::vector<std::vector<int>>& good) {
  for (const auto& pos : good)
    if (satisfies(atoms, pos)) return false;
  return true;
}

template <class Valid>
Constraint eliminate(const std::vector<EventId>& events, const Trace& bad_trace, const std::vector<Trace>& nhood,
                     const Classification& c, Valid valid) {
  auto good = good_positions(nhood, c);
  std::vector<Atom> atoms = phi_of_trace(events, bad_trace).atoms();
  for (std::size_t i = 0; i < atoms.size();) {
    std::vector<Atom> trial = atoms;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (valid(trial, good))
      atoms = std::move(trial);
    else
      ++i;
  }
  return Constraint::conj(atoms);
}

}  // namespace

Constraint generalize(const std::vector<EventId>& events, const Trace& bad_trace, const std::vector<Trace>& nhood,
                      const Classification& c) {
  return eliminate(events, bad_trace, nhood, c, valid_parallel);
}

Constraint generalize_serial(const std::vector<EventId>& events, const Trace& bad_trace,
                             const std::vector<Trace>& nhood, const Classification& c) {
  return eliminate(events, bad_trace, nhood, c, valid_serial);
}

bool constraint_valid(const Constraint& rho, const std::vector<Trace>& nhood, const Classification& c) {
  for (std::size_t i = 0; i < nhood.size(); ++i)
    if (c.cls[i] == TraceClass::Good && rho.eval_trace(nhood[i])) return false;
  return true;
}

}  // namespace presafe::synthesis
