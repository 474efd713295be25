#pragma once

// Precoloring-extension (PCE) reductions: generators that turn a partially
// colored graph into a scheduling instance whose threshold decision matches
// the PCE answer, witness builders for the yes direction, decomposition
// extension recipes with width guarantees, tree families witnessing horizon
// tightness, and an end-to-end verification harness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csched/core.hpp"
#include "csched/decomp.hpp"
#include "csched/oracle.hpp"
#include "csched/solver.hpp"

namespace csched {

struct PrecoloringInstance {
  ConflictGraph h;
  int k = 0;
  std::vector<int> chi;  // per vertex: 0 = uncolored, else a color in 1..k

  void validate() const;  // color range and properness on colored pairs
};

PrecoloringInstance parse_pce_json(const std::string& text);
std::string format_pce_json(const PrecoloringInstance& pce);

struct PceAnswer {
  bool yes = false;
  std::vector<int> coloring;  // a proper extension when yes
  std::uint64_t states = 0;
};

// Exhaustive extension search (backtracking, colors ascending, first found).
PceAnswer pce_exhaustive(const PrecoloringInstance& pce, const SearchBudget& budget = {});

enum class GadgetKind { Cmax, SumC, ReleaseLmax, ReleaseWCmax, ReleaseSumC };
enum class GadgetMode { Paper, Strict };

struct JobProvenance {
  enum class Role {
    Original,
    FrameStart,        // delimiter a: pinned to slot 1 or k
    FrameStartBlock,   // a'
    FrameEnd,          // delimiter b
    FrameEndBlock,     // b'
    PinLow,            // j(1): fills the slots below j's color
    PinHigh,           // j(2): fills the slots above j's color
    Primary,           // j(i) in the sum gadget
    Secondary,         // j(i, i0) hanging off a primary
    Lower,             // j*(i) forcing a colored job upward
    Upper,             // j(i, i0) released at i in the release sum gadget
  };
  int job = -1;
  Role role = Role::Original;
  int source = -1;  // original vertex this job belongs to, -1 for delimiters
  int index1 = -1;  // i for Primary/Secondary/Lower/Upper
  int index2 = -1;  // i0 for Secondary/Upper
};

std::string role_name(JobProvenance::Role role);

struct ReductionOutput {
  GadgetKind kind = GadgetKind::Cmax;
  GadgetMode mode = GadgetMode::Paper;
  Instance instance;
  Objective objective;
  Value threshold = 0;
  Time decision_horizon = 0;  // proven sufficient for the threshold decision
  Time x = 0;                 // block length for the sum gadgets
  int h_n = 0;
  int k = 0;
  std::vector<JobProvenance> provenance;  // indexed by job id
  std::vector<int> chi;
};

// Makespan gadget: four delimiter jobs frame the window [0, k), per colored
// vertex up to two filler jobs pin it to its color's slot. Needs k >= 2 and
// at least one edge in H. Width cost: +2 over a decomposition of H.
ReductionOutput pce_to_cmax(const PrecoloringInstance& pce);

// Total-completion-time gadget with block length X (default n*k + 1; any
// override must satisfy X >= max(k+2, n(k-1)+1)). Threshold
// K = sum_j [(1+u_j) X^2 + (l_j - 1) X] + n*k. Width cost: none.
ReductionOutput pce_to_sumcj(const PrecoloringInstance& pce,
                             std::optional<Time> x_override = {});

// Release-date variants on the unchanged graph H (unit jobs).
ReductionOutput pce_to_release_lmax(const PrecoloringInstance& pce, GadgetMode mode);
ReductionOutput pce_to_release_wcmax(const PrecoloringInstance& pce, GadgetMode mode);

// Release-date total-completion-time gadget: per vertex, X unit jobs released
// at each i in {u_j, ..., X-2}. Override floor: X >= max(k+2, n(k-1)+2).
// Threshold K = n*k + X * sum_j sum_i (i+1). Width cost: none.
ReductionOutput pce_to_release_sumcj(const PrecoloringInstance& pce,
                                     std::optional<Time> x_override = {});

// Extends a decomposition of H to one of the generated instance following the
// per-gadget recipe; the result validates and its width is td_h's width + 2
// for the makespan gadget and max(width, 1) otherwise.
TreeDecomposition extend_decomposition(const ReductionOutput& out,
                                       const TreeDecomposition& td_h);

// Yes-direction witness from a proper extension: a feasible schedule meeting
// the threshold, with completions matching the construction's intent.
Schedule reduction_witness(const ReductionOutput& out, const std::vector<int>& coloring);

// Trees probing how tight the log-horizon bound is; both have 2^(depth-1)
// unit jobs. The due-date family forces makespan == depth under Lmax <= 0 at
// every depth (each subtree root is individually capped by its due date). The
// weighted family forces it under WCmax <= weight only up to depth 3: from
// depth 4 on, a weight-1 inner root can park above its subtree's level, and
// schedules meeting the weight bound fit in fewer slots (the acceptance
// harness exhibits a makespan-3 schedule on gen_wcmax_tree(4, 4)).
Instance gen_wcmax_tree(int depth, Value weight);  // needs weight >= depth
Instance gen_lmax_tree(int depth);

struct VerifyOptions {
  SearchBudget pce_budget;
  SolverOptions solver;
  EliminationStrategy strategy = EliminationStrategy::MinDegree;
};

struct VerifyReport {
  bool decided = false;   // false when a budget refused either side
  bool pce_yes = false;
  bool sched_yes = false;
  bool agree = false;
  bool witness_checked = false;     // a yes-side schedule was mapped back
  bool witness_maps_back = false;   // ... and properly extends chi
  Value sched_value = kInfinity;
  Value threshold = 0;
  std::string detail;
};

// Runs both sides: exhaustive PCE search against the threshold decision of
// the decomposition solver on the generated instance (decomposed via the
// extension recipe). On a scheduling yes, maps the schedule back to a
// coloring and checks it extends chi.
VerifyReport verify_reduction(const PrecoloringInstance& pce, const ReductionOutput& out,
                              const VerifyOptions& opts = {});

}  // namespace csched
