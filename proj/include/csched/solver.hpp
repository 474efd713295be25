#pragma once

// Exact optimization over a nice tree decomposition: one dense table per node
// indexed by the bag's completion-time assignment (k^|bag| entries), combined
// bottom-up through leaf / introduce / forget / join transitions, with
// schedule reconstruction from the retained tables.

#include <cstdint>
#include <optional>

#include "csched/bounds.hpp"
#include "csched/core.hpp"
#include "csched/decomp.hpp"

namespace csched {

enum class SolveStatus { Optimal, Infeasible, ResourceLimit };

struct SolverOptions {
  std::uint64_t max_table_entries = 50'000'000;  // refused up front when exceeded
  int threads = 1;                               // level-parallel table computation
  bool value_only = false;  // frees child tables eagerly; no schedule out
};

struct SolveStats {
  std::uint64_t predicted_entries = 0;  // sum over nodes of k^|bag|
  std::uint64_t entries_allocated = 0;
  std::uint64_t peak_live_entries = 0;
  int width = -1;
  Time horizon = 0;
  double wall_seconds = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Value value = kInfinity;  // finite iff status == Optimal
  Schedule schedule;        // complete iff Optimal and not value_only
  SolveStats stats;
};

// Minimizes obj over feasible schedules with all completions in [1, horizon].
// Deterministic: among optima, ties at every forget node resolve to the
// smallest completion time, so the reconstructed schedule is unique.
SolveResult solve(const Instance& inst, const NiceTreeDecomposition& ntd,
                  Objective obj, Time horizon, const SolverOptions& opts = {});

// Decision for unit jobs with release dates: is there a feasible schedule
// with makespan at most k? Solved by reversing time (due date k - r_j, then
// maximum lateness <= 0 at horizon k) and mapping completions back through
// C'(j) = k - C(j) + 1; the mapped schedule is re-verified before returning.
struct ReleaseCmaxResult {
  SolveStatus status = SolveStatus::Infeasible;  // Optimal = decision reached
  bool yes = false;
  Schedule schedule;  // witness when yes
  SolveStats stats;
};

ReleaseCmaxResult solve_release_cmax(const Instance& inst, const NiceTreeDecomposition& ntd,
                                     Time k, const SolverOptions& opts = {});

// End-to-end pipeline: decompose (or adopt a given decomposition), pick the
// horizon, solve; for unit makespan with release dates, binary-search the
// smallest yes via solve_release_cmax instead.
struct OptimizeOptions {
  EliminationStrategy strategy = EliminationStrategy::MinDegree;
  std::optional<TreeDecomposition> decomposition;  // validated when present
  std::optional<Time> horizon_floor;               // user override, a floor
  std::optional<int> td_ub;                        // elimination-tree height override
  SolverOptions solver;
};

struct OptimizeResult {
  SolveResult result;
  HorizonBound bound;            // horizon actually used
  int width = -1;
  int td_height = 0;             // computed elimination-tree height
  bool release_reversal = false; // the binary-search path was taken
  bool horizon_escalated = false;  // upper bound had to be raised to r_max + n
};

OptimizeResult optimize(const Instance& inst, Objective obj, const OptimizeOptions& opts = {});

}  // namespace csched
