#pragma once

// Exhaustive references: plain backtracking optimization over all feasible
// schedules within a horizon, and enumeration of minimal schedules. Intended
// for cross-checking the decomposition solver on small instances; every search
// is budgeted and aborts with ResourceError rather than returning a wrong
// answer.

#include <cstdint>
#include <vector>

#include "csched/core.hpp"

namespace csched {

struct SearchBudget {
  std::uint64_t max_states = 100'000'000;  // candidate placements examined
};

struct OracleResult {
  bool feasible = false;
  Value value = kInfinity;
  Schedule schedule;
  std::uint64_t states = 0;
};

// Minimizes obj over all feasible schedules with completions in [1, horizon].
// Jobs are branched in earliest-due-date order with candidate times ascending;
// among optima the first schedule found wins, making results deterministic.
OracleResult brute_force(const Instance& inst, Objective obj, Time horizon,
                         const SearchBudget& budget = {});

// A feasible schedule is minimal when no single completion can be reduced by
// one without breaking feasibility.
bool is_minimal_schedule(const Instance& inst, const Schedule& s);

// All minimal schedules with completions in [1, horizon], in lexicographic
// order of the completion vector.
std::vector<Schedule> enumerate_minimal_schedules(const Instance& inst, Time horizon,
                                                  const SearchBudget& budget = {});

}  // namespace csched
