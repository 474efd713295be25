#include "csched/bounds.hpp"

#include <algorithm>
#include <bit>

namespace csched {

int ceil_log2(long long n) {
  if (n <= 1) return 0;
  return std::bit_width(static_cast<unsigned long long>(n - 1));
}

Schedule greedy_color(const ConflictGraph& g, const std::vector<int>& order) {
  const int n = g.n();
  if (static_cast<int>(order.size()) != n)
    throw InputError("greedy_color: order must list every vertex");
  std::vector<bool> seen(n, false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v])
      throw InputError("greedy_color: order must be a permutation of the vertices");
    seen[v] = true;
  }
  Schedule s(n);
  std::vector<bool> used;
  for (int v : order) {
    used.assign(n + 2, false);
    for (int u : g.neighbors(v))
      if (s.assigned(u) && s.at(u) <= n + 1) used[s.at(u)] = true;
    Time c = 1;
    while (used[c]) ++c;
    s.set(v, c);
  }
  return s;
}

bool is_greedy_coloring(const ConflictGraph& g, const Schedule& s) {
  if (s.size() != g.n() || !s.complete()) return false;
  for (auto [u, v] : g.edges())
    if (s.at(u) == s.at(v)) return false;
  for (int v = 0; v < g.n(); ++v) {
    for (Time c = 1; c < s.at(v); ++c) {
      bool present = false;
      for (int u : g.neighbors(v))
        if (s.at(u) == c) {
          present = true;
          break;
        }
      if (!present) return false;
    }
  }
  return true;
}

Schedule make_minimal(const Instance& inst, Schedule s) {
  FeasibilityReport rep = check_feasible(inst, s);
  if (!rep.feasible)
    throw InputError("make_minimal: input schedule is infeasible: " +
                     rep.violations.front().message);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j < inst.n(); ++j) {
      const Job& job = inst.jobs[j];
      for (Time t = job.r + job.p; t < s.at(j); ++t) {
        bool blocked = false;
        for (int u : inst.graph.neighbors(j))
          if (intervals_overlap(t, job.p, s.at(u), inst.jobs[u].p)) {
            blocked = true;
            break;
          }
        if (!blocked) {
          s.set(j, t);
          changed = true;
          break;
        }
      }
    }
  }
  return s;
}

std::string HorizonBound::describe() const {
  switch (provenance) {
    case Provenance::UnitGrundy: return "unit-grundy";
    case Provenance::TreedepthP: return "treedepth-p";
    case Provenance::ReleaseShifted: return "release-shifted";
    case Provenance::SafeSum: return "safe-sum";
    case Provenance::UserOverride: return "user-override";
  }
  return "?";
}

HorizonBound horizon(const Instance& inst, int width, std::optional<int> td_ub,
                     std::optional<Time> user_floor) {
  inst.validate();
  if (width < -1 || (inst.n() > 0 && width < 0))
    throw InputError("horizon: invalid width");

  HorizonBound out;
  const bool unit = inst.all_unit();
  const bool r0 = inst.all_zero_release();
  const Time wlog = checked_add(
      checked_mul(std::max(width, 0), ceil_log2(inst.n())), 1);

  if (unit && r0) {
    out.value = wlog;
    out.provenance = HorizonBound::Provenance::UnitGrundy;
  } else if (r0 && td_ub) {
    Time p_max = 0;
    for (const Job& j : inst.jobs) p_max = std::max(p_max, j.p);
    out.value = checked_mul(*td_ub + 1, p_max);
    out.provenance = HorizonBound::Provenance::TreedepthP;
  } else if (unit) {
    out.value = checked_add(inst.max_release(), wlog);
    out.provenance = HorizonBound::Provenance::ReleaseShifted;
  } else {
    out.value = checked_add(inst.max_release(), inst.sum_p());
    out.provenance = HorizonBound::Provenance::SafeSum;
  }

  out.value = std::max(out.value, inst.max_release_plus_p());
  if (user_floor && *user_floor > out.value) {
    out.value = *user_floor;
    out.provenance = HorizonBound::Provenance::UserOverride;
  }
  return out;
}

}  // namespace csched
