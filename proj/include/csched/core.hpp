#pragma once

// Core model: jobs with processing times and release dates, a conflict graph
// forbidding overlapping execution of adjacent jobs, schedules as completion
// times, and the eight regular min-sum / min-max objectives.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csched {

using Time = std::int64_t;
using Value = std::int64_t;

// Sentinel for "no feasible completion"; all arithmetic routes through the
// checked helpers below so it can never be produced by accident.
inline constexpr Value kInfinity = std::numeric_limits<Value>::max();

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Overflow is a hard error, never wraparound. A finite result that would
// collide with the infinity sentinel counts as overflow too.
Value checked_add(Value a, Value b);
Value checked_mul(Value a, Value b);
// Infinity-absorbing variants used by DP tables.
Value sat_add(Value a, Value b);
Value sat_max(Value a, Value b);
// a - b with a possibly infinite; b must be finite.
Value sat_sub(Value a, Value b);

struct Job {
  int id = 0;
  Time p = 1;  // processing time, >= 1
  Time r = 0;  // release date, >= 0
  Time d = 0;  // due date, >= 0
  Value w = 1; // weight, >= 0 (zero weights arise in degenerate weighted instances)
};

// Execution interval of a job completing at c: the half-open [c - p, c).
inline bool intervals_overlap(Time c1, Time p1, Time c2, Time p2) {
  return std::max(c1 - p1, c2 - p2) < std::min(c1, c2);
}

class ConflictGraph {
 public:
  ConflictGraph() = default;
  // Validates endpoints, rejects self-loops and duplicate edges.
  ConflictGraph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized (u < v), sorted
  std::vector<std::vector<int>> adj_;       // sorted neighbor lists
};

struct Instance {
  std::vector<Job> jobs;  // job ids are dense 0..n-1 and equal their index
  ConflictGraph graph;

  int n() const { return static_cast<int>(jobs.size()); }
  bool all_unit() const;
  bool all_zero_release() const;
  Time max_release() const;
  Time max_release_plus_p() const;  // max_j (r_j + p_j); 0 for empty
  Time sum_p() const;               // checked
  void validate() const;            // throws InputError on any broken invariant
};

// Completion-time vector; slot value 0 means "not scheduled yet".
class Schedule {
 public:
  static constexpr Time kUnset = 0;

  Schedule() = default;
  explicit Schedule(int n) : c_(n, kUnset) {}
  explicit Schedule(std::vector<Time> c) : c_(std::move(c)) {}

  int size() const { return static_cast<int>(c_.size()); }
  bool assigned(int j) const { return c_[j] != kUnset; }
  bool complete() const;
  Time at(int j) const { return c_[j]; }
  void set(int j, Time c) { c_[j] = c; }
  void unset(int j) { c_[j] = kUnset; }
  const std::vector<Time>& raw() const { return c_; }
  std::vector<Time>& raw() { return c_; }
  bool operator==(const Schedule& o) const { return c_ == o.c_; }

 private:
  std::vector<Time> c_;
};

enum class ObjectiveKind { Cmax, Lmax, WCmax, WLmax, SumC, SumT, SumWC, SumWT };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Cmax;

  Objective() = default;
  Objective(ObjectiveKind k) : kind(k) {}  // NOLINT: implicit by design

  // Max-kinds aggregate per-job terms with max, sum-kinds with +.
  bool max_kind() const;
  bool weighted() const;   // uses job weights
  bool due_based() const;  // uses job due dates
  // Per-job contribution at completion c: w_eff * (c - d_eff), clamped at 0
  // for sum-kinds (tardiness-style), signed for max-kinds (lateness-style).
  Value term(const Job& j, Time c) const;
  // Aggregation of two finite term values (max or checked +).
  Value combine(Value a, Value b) const;
  // Infinity-absorbing aggregation for DP tables.
  Value sat_combine(Value a, Value b) const;

  std::string name() const;  // canonical lowercase name, e.g. "sum_wt"
};

// Parses a canonical objective name ("cmax", "lmax", "wcmax", "wlmax",
// "sum_c", "sum_t", "sum_wc", "sum_wt"); throws InputError otherwise.
Objective parse_objective(const std::string& name);

struct Violation {
  enum class Kind { Release, Overlap };
  Kind kind;
  int job_a;       // offending job
  int job_b;       // second endpoint for overlaps, -1 otherwise
  std::string message;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Checks r_j + p_j <= C_j for every job and interval-disjointness across every
// conflict edge. The schedule must assign every job (else InputError).
FeasibilityReport check_feasible(const Instance& inst, const Schedule& s);

// Objective value of a complete schedule (feasibility is not checked here).
// Empty instances evaluate to 0.
Value evaluate(const Instance& inst, const Schedule& s, Objective obj);

// Threshold form used by the reductions: value <= bound.
inline bool decision(Value value, Value bound) { return value <= bound; }

// JSON wire format (documented in docs/formats.md).
Instance parse_instance_json(const std::string& text);
std::string format_instance_json(const Instance& inst);
Schedule parse_schedule_json(const std::string& text, int n);
std::string format_schedule_json(const Schedule& s);

}  // namespace csched
