#pragma once

// Tree decompositions: validation, elimination-ordering heuristics, conversion
// to nice form (leaf / introduce / forget / join with an empty root bag),
// elimination trees for depth bounds, and the PACE-style .td file format.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csched/core.hpp"

namespace csched {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;        // each bag sorted ascending
  std::vector<std::pair<int, int>> edges;    // tree edges between bag indices

  int width() const;  // max bag size - 1; -1 for no bags
};

struct DecompositionValidation {
  bool ok = true;
  std::string message;  // first violation, named; empty when ok
};

// Checks the three defining properties: every vertex covered, every graph edge
// inside some bag, and bags containing any fixed vertex forming a connected
// subtree. Also checks the bag edges form a tree (connected, acyclic) and all
// bag contents are vertices of g.
DecompositionValidation validate(const TreeDecomposition& td, const ConflictGraph& g);

enum class EliminationStrategy { MinDegree, MinFill };

EliminationStrategy parse_strategy(const std::string& name);  // "min-degree" | "min-fill"
std::string strategy_name(EliminationStrategy s);

// Heuristic decomposition from an elimination ordering: eliminating v emits
// the bag {v} ∪ N(v) and connects v's neighbors into a clique. Deterministic
// (ties break toward the smallest vertex id); disconnected graphs yield one
// tree with the component subtrees linked together.
TreeDecomposition heuristic_decompose(const ConflictGraph& g, EliminationStrategy s);

// Merges adjacent bags where one contains the other; the result has at most
// max(1, n) bags and never larger width.
TreeDecomposition simplify(const TreeDecomposition& td);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind;
  std::vector<int> bag;  // sorted
  int child0 = -1;
  int child1 = -1;       // second child for Join only
  int vertex = -1;       // the introduced/forgotten vertex; the leaf's vertex
  int source_bag = -1;   // index of the originating bag in the simplified input
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;  // children precede parents (topological order)
  int root = -1;                // a Forget node with empty bag

  int width() const;
};

// Simplifies and converts a valid decomposition of a nonempty graph to nice
// form: leaves are singleton bags, the root bag is empty, every edge of the
// tree becomes a chain of forgets and introduces, and shared bags join.
NiceTreeDecomposition to_nice(const TreeDecomposition& td);

// Structural re-validation of nice form plus the underlying decomposition
// properties with respect to g.
DecompositionValidation validate_nice(const NiceTreeDecomposition& ntd, const ConflictGraph& g);

struct EliminationTree {
  std::vector<int> parent;  // -1 at roots; forest when g is disconnected
  std::vector<int> roots;
  int height = 0;           // vertices on the longest root-to-leaf path
};

// Elimination tree built by centroid splitting of the decomposition tree: the
// centroid bag's vertices form a path at the top, components recurse below.
// Height is at most (width+1) * (ceil(log2(#bags)) + 1), and for every graph
// edge one endpoint is an ancestor of the other.
EliminationTree treedepth_upper_bound(const TreeDecomposition& td, const ConflictGraph& g);

// PACE-style .td exchange format (1-indexed on disk, 0-indexed in memory).
TreeDecomposition parse_td(std::istream& in, int expected_n = -1);
TreeDecomposition parse_td_text(const std::string& text, int expected_n = -1);
std::string format_td(const TreeDecomposition& td, int n);

}  // namespace csched
