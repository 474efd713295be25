#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "csched/bounds.hpp"
#include "csched/decomp.hpp"
#include "test_oracles.hpp"

using namespace csched;
namespace ts = csched::testsupport;

namespace {

TreeDecomposition td_of(std::vector<std::vector<int>> bags,
                        std::vector<std::pair<int, int>> edges) {
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.edges = std::move(edges);
  return td;
}

}  // namespace

TEST_CASE("decomposition validation catches each defining property") {
  const ConflictGraph p3(3, {{0, 1}, {1, 2}});

  SUBCASE("path bags over a path graph are valid") {
    TreeDecomposition td = td_of({{0, 1}, {1, 2}}, {{0, 1}});
    DecompositionValidation v = validate(td, p3);
    CHECK(v.ok);
    CHECK(td.width() == 1);
  }
  SUBCASE("a missing edge bag is an edge-coverage violation") {
    TreeDecomposition td = td_of({{0, 1}, {2}}, {{0, 1}});
    DecompositionValidation v = validate(td, p3);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("edge") != std::string::npos);
  }
  SUBCASE("split occurrence sets are a connectivity violation") {
    const ConflictGraph k2(2, {{0, 1}});
    TreeDecomposition td = td_of({{0, 1}, {1}, {0, 1}}, {{0, 1}, {1, 2}});
    DecompositionValidation v = validate(td, k2);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("connect") != std::string::npos);
  }
  SUBCASE("an uncovered vertex is a coverage violation") {
    TreeDecomposition td = td_of({{0, 1}}, {});
    CHECK_FALSE(validate(td, p3).ok);
  }
  SUBCASE("bag edges must form a tree") {
    TreeDecomposition td = td_of({{0, 1}, {1, 2}}, {});  // disconnected
    CHECK_FALSE(validate(td, p3).ok);
    TreeDecomposition cyc = td_of({{0, 1}, {1, 2}, {1}}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(validate(cyc, p3).ok);
  }
  SUBCASE("bag contents must be vertices") {
    TreeDecomposition td = td_of({{0, 1}, {1, 7}}, {{0, 1}});
    CHECK_FALSE(validate(td, p3).ok);
  }
}

TEST_CASE("heuristic decomposition matches exact treewidth on the classics") {
  SUBCASE("trees have width 1") {
    // a 7-vertex tree: star with two legs extended
    Instance tree = ts::make_instance(
        7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 6}});
    for (EliminationStrategy s : {EliminationStrategy::MinDegree, EliminationStrategy::MinFill}) {
      TreeDecomposition td = heuristic_decompose(tree.graph, s);
      CHECK(validate(td, tree.graph).ok);
      CHECK(td.width() == 1);
    }
    CHECK(ts::exact_treewidth(tree.graph) == 1);
  }
  SUBCASE("complete graph K4 has width 3") {
    ConflictGraph k4 = ts::complete_instance(4).graph;
    TreeDecomposition td = heuristic_decompose(k4, EliminationStrategy::MinDegree);
    CHECK(validate(td, k4).ok);
    CHECK(td.width() == 3);
    CHECK(ts::exact_treewidth(k4) == 3);
  }
  SUBCASE("cycle C5 has width 2") {
    ConflictGraph c5 = ts::cycle_instance(5).graph;
    for (EliminationStrategy s : {EliminationStrategy::MinDegree, EliminationStrategy::MinFill}) {
      TreeDecomposition td = heuristic_decompose(c5, s);
      CHECK(validate(td, c5).ok);
      CHECK(td.width() == 2);
    }
    CHECK(ts::exact_treewidth(c5) == 2);
  }
  SUBCASE("empty and edgeless graphs decompose") {
    ConflictGraph none(0, {});
    TreeDecomposition td0 = heuristic_decompose(none, EliminationStrategy::MinDegree);
    CHECK(validate(td0, none).ok);
    ConflictGraph iso(3, {});
    TreeDecomposition td3 = heuristic_decompose(iso, EliminationStrategy::MinFill);
    CHECK(validate(td3, iso).ok);
    CHECK(td3.width() == 0);
  }
}

TEST_CASE("heuristic decomposition validates on every small graph") {
  for (int n = 1; n <= 5; ++n) {
    for (const ConflictGraph& g : ts::all_graphs_up_to_iso(n)) {
      const int exact = ts::exact_treewidth(g);
      for (EliminationStrategy s :
           {EliminationStrategy::MinDegree, EliminationStrategy::MinFill}) {
        TreeDecomposition td = heuristic_decompose(g, s);
        CHECK(validate(td, g).ok);
        CHECK(td.width() >= exact);
      }
    }
  }
}

TEST_CASE("simplify merges nested bags without changing validity or width") {
  const ConflictGraph p3(3, {{0, 1}, {1, 2}});
  TreeDecomposition td = td_of({{0, 1}, {1}, {1, 2}, {2}}, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(validate(td, p3).ok);
  TreeDecomposition slim = simplify(td);
  CHECK(validate(slim, p3).ok);
  CHECK(slim.width() == td.width());
  CHECK(slim.bags.size() <= 3);
}

TEST_CASE("nice form: single bag becomes leaf plus forget chain to an empty root") {
  const ConflictGraph k1(1, {});
  TreeDecomposition td = td_of({{0}}, {});
  NiceTreeDecomposition ntd = to_nice(td);
  REQUIRE(ntd.nodes.size() == 2);
  CHECK(ntd.nodes[0].kind == NiceKind::Leaf);
  CHECK(ntd.nodes[0].bag == std::vector<int>{0});
  CHECK(ntd.nodes[1].kind == NiceKind::Forget);
  CHECK(ntd.nodes[1].bag.empty());
  CHECK(ntd.root == 1);
  CHECK(validate_nice(ntd, k1).ok);
}

TEST_CASE("nice form of a two-bag path re-validates") {
  const ConflictGraph p3(3, {{0, 1}, {1, 2}});
  NiceTreeDecomposition ntd = to_nice(td_of({{0, 1}, {1, 2}}, {{0, 1}}));
  DecompositionValidation v = validate_nice(ntd, p3);
  CHECK(v.ok);
  CHECK(ntd.width() == 1);
  CHECK(ntd.nodes[ntd.root].bag.empty());
}

TEST_CASE("nice form properties on every small graph") {
  for (int n = 1; n <= 5; ++n) {
    for (const ConflictGraph& g : ts::all_graphs_up_to_iso(n)) {
      TreeDecomposition td = heuristic_decompose(g, EliminationStrategy::MinDegree);
      NiceTreeDecomposition ntd = to_nice(td);
      DecompositionValidation v = validate_nice(ntd, g);
      CHECK(v.ok);
      if (!v.ok) MESSAGE(v.message);
      CHECK(ntd.width() <= td.width());
      const int w = ntd.width();
      CHECK(static_cast<int>(ntd.nodes.size()) <= 6 * (w + 1) * n + w + 2);
      // every vertex forgotten exactly once
      std::vector<int> forgotten(g.n(), 0);
      for (const NiceNode& node : ntd.nodes)
        if (node.kind == NiceKind::Forget) forgotten[node.vertex] += 1;
      for (int v2 = 0; v2 < g.n(); ++v2) CHECK(forgotten[v2] == 1);
    }
  }
}

TEST_CASE("validate_nice rejects malformed structures") {
  const ConflictGraph k2(2, {{0, 1}});
  NiceTreeDecomposition good = to_nice(td_of({{0, 1}}, {}));
  REQUIRE(validate_nice(good, k2).ok);

  SUBCASE("wrong root bag") {
    NiceTreeDecomposition bad = good;
    bad.nodes[bad.root].bag = {0};
    CHECK_FALSE(validate_nice(bad, k2).ok);
  }
  SUBCASE("introduce must add exactly its vertex") {
    NiceTreeDecomposition bad = good;
    for (NiceNode& node : bad.nodes)
      if (node.kind == NiceKind::Introduce) node.vertex = -1;
    CHECK_FALSE(validate_nice(bad, k2).ok);
  }
  SUBCASE("a cycle of children is rejected") {
    NiceTreeDecomposition bad = good;
    bad.nodes[0].child0 = static_cast<int>(bad.nodes.size()) - 1;
    CHECK_FALSE(validate_nice(bad, k2).ok);
  }
}

TEST_CASE("elimination trees: height bounds and ancestor property") {
  auto ancestor_ok = [](const EliminationTree& et, const ConflictGraph& g) {
    auto is_ancestor = [&](int a, int b) {  // a ancestor of b (or equal)
      for (int x = b; x != -1; x = et.parent[x])
        if (x == a) return true;
      return false;
    };
    for (auto [u, v] : g.edges())
      if (!is_ancestor(u, v) && !is_ancestor(v, u)) return false;
    return true;
  };

  SUBCASE("K4 in a single bag gives a path of height 4") {
    ConflictGraph k4 = ts::complete_instance(4).graph;
    TreeDecomposition td = td_of({{0, 1, 2, 3}}, {});
    EliminationTree et = treedepth_upper_bound(td, k4);
    CHECK(et.height == 4);
    CHECK(ancestor_ok(et, k4));
  }
  SUBCASE("P8 best decomposition lands between exact depth and the bound") {
    ConflictGraph p8 = ts::path_instance(8).graph;
    TreeDecomposition td = heuristic_decompose(p8, EliminationStrategy::MinDegree);
    REQUIRE(td.width() == 1);
    EliminationTree et = treedepth_upper_bound(td, p8);
    CHECK(ts::exact_treedepth(p8) == 4);
    CHECK(et.height >= 4);
    CHECK(et.height <= 8);
    CHECK(ancestor_ok(et, p8));
  }
  SUBCASE("star K_{1,5}") {
    ConflictGraph star = ts::star_instance(5).graph;
    TreeDecomposition td = heuristic_decompose(star, EliminationStrategy::MinDegree);
    EliminationTree et = treedepth_upper_bound(td, star);
    CHECK(ts::exact_treedepth(star) == 2);
    CHECK(et.height >= 2);
    CHECK(ancestor_ok(et, star));
  }
  SUBCASE("height bound (width+1)*(log2(bags)+1) on every small graph") {
    for (int n = 1; n <= 5; ++n) {
      for (const ConflictGraph& g : ts::all_graphs_up_to_iso(n)) {
        TreeDecomposition td = heuristic_decompose(g, EliminationStrategy::MinFill);
        TreeDecomposition slim = simplify(td);
        EliminationTree et = treedepth_upper_bound(td, g);
        CHECK(ancestor_ok(et, g));
        CHECK(et.height >=
              (g.n() == 0 ? 0 : ts::exact_treedepth(g)));
        const int bound = (td.width() + 1) *
                          (ceil_log2(static_cast<long long>(slim.bags.size())) + 1);
        CHECK(et.height <= bound);
      }
    }
  }
}

TEST_CASE("td file format round trip and golden output") {
  const ConflictGraph p3(3, {{0, 1}, {1, 2}});
  TreeDecomposition td = td_of({{0, 1}, {1, 2}}, {{0, 1}});
  const std::string text = format_td(td, 3);
  CHECK(text == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
  TreeDecomposition back = parse_td_text(text, 3);
  CHECK(back.bags == td.bags);
  CHECK(back.edges == td.edges);
  CHECK(validate(back, p3).ok);
}

TEST_CASE("td parsing accepts comments and rejects malformed input") {
  CHECK_NOTHROW(parse_td_text("c comment\ns td 1 1 1\nb 1 1\n"));
  // header missing
  CHECK_THROWS_AS(parse_td_text("b 1 1\n"), InputError);
  // duplicate bag id
  CHECK_THROWS_AS(parse_td_text("s td 2 1 1\nb 1 1\nb 1 1\n1 2\n"), InputError);
  // wrong number of tree edges
  CHECK_THROWS_AS(parse_td_text("s td 2 1 1\nb 1 1\nb 2 1\n"), InputError);
  // vertex beyond n
  CHECK_THROWS_AS(parse_td_text("s td 1 1 1\nb 1 2\n"), InputError);
  // n mismatch against the caller's expectation
  CHECK_THROWS_AS(parse_td_text("s td 1 1 1\nb 1 1\n", 5), InputError);
  // bag index out of range in an edge
  CHECK_THROWS_AS(parse_td_text("s td 2 1 2\nb 1 1\nb 2 2\n1 3\n"), InputError);
}

TEST_CASE("strategy parsing") {
  CHECK(parse_strategy("min-degree") == EliminationStrategy::MinDegree);
  CHECK(parse_strategy("min-fill") == EliminationStrategy::MinFill);
  CHECK_THROWS_AS(parse_strategy("random"), InputError);
  CHECK(strategy_name(EliminationStrategy::MinFill) == "min-fill");
}
