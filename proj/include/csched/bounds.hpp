#pragma once

// Horizon machinery: first-fit colorings (the unit-time scheduling view),
// schedule minimization, and the search-horizon selection rules with their
// provenance.

#include <optional>
#include <string>
#include <vector>

#include "csched/core.hpp"

namespace csched {

// Smallest t with 2^t >= n; 0 for n <= 1.
int ceil_log2(long long n);

// First-fit coloring along the given vertex order (a permutation of 0..n-1);
// the result is a unit schedule whose completion times are the colors.
Schedule greedy_color(const ConflictGraph& g, const std::vector<int>& order);

// Whether s is produced by first-fit along some order: proper on edges, and
// every color below a vertex's own appears on one of its neighbors.
bool is_greedy_coloring(const ConflictGraph& g, const Schedule& s);

// Round-robin single-step decrements (jobs in increasing id, at most one step
// per visit) until no completion can move; feasibility is preserved at every
// step and no regular objective ever increases. Input must be feasible.
Schedule make_minimal(const Instance& inst, Schedule s);

struct HorizonBound {
  enum class Provenance { UnitGrundy, TreedepthP, ReleaseShifted, SafeSum, UserOverride };
  Time value = 0;
  Provenance provenance = Provenance::SafeSum;

  std::string describe() const;
};

// Horizon selection:
//  - unit jobs, zero releases: width * ceil_log2(n) + 1
//  - zero releases with an elimination-tree height bound: (td_ub + 1) * p_max
//  - unit jobs with releases: r_max + width * ceil_log2(n) + 1
//  - otherwise: r_max + sum of processing times (safe for every instance)
// The result is clamped up to max_j(r_j + p_j) and never below user_floor.
HorizonBound horizon(const Instance& inst, int width, std::optional<int> td_ub,
                     std::optional<Time> user_floor);

}  // namespace csched
