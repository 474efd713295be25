#include <random>
#include <vector>

#include "doctest.h"

#include "csched/bounds.hpp"
#include "csched/decomp.hpp"
#include "csched/oracle.hpp"
#include "test_oracles.hpp"

using namespace csched;
namespace ts = csched::testsupport;

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
}

TEST_CASE("first-fit coloring along an order") {
  SUBCASE("K3 uses all three colors in any order") {
    ConflictGraph k3 = ts::complete_instance(3).graph;
    Schedule s = greedy_color(k3, {2, 0, 1});
    std::vector<Time> sorted = s.raw();
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<Time>{1, 2, 3});
  }
  SUBCASE("path in id order alternates") {
    ConflictGraph p4 = ts::path_instance(4).graph;
    CHECK(greedy_color(p4, {0, 1, 2, 3}).raw() == std::vector<Time>{1, 2, 1, 2});
  }
  SUBCASE("path with both endpoints first") {
    ConflictGraph p4 = ts::path_instance(4).graph;
    CHECK(greedy_color(p4, {0, 3, 1, 2}).raw() == std::vector<Time>{1, 2, 3, 1});
  }
  SUBCASE("the order must be a permutation") {
    ConflictGraph p3 = ts::path_instance(3).graph;
    CHECK_THROWS_AS(greedy_color(p3, {0, 1}), InputError);
    CHECK_THROWS_AS(greedy_color(p3, {0, 1, 1}), InputError);
    CHECK_THROWS_AS(greedy_color(p3, {0, 1, 3}), InputError);
  }
}

TEST_CASE("first-fit recognition") {
  ConflictGraph p3 = ts::path_instance(3).graph;
  CHECK(is_greedy_coloring(p3, Schedule(std::vector<Time>{1, 2, 1})));
  CHECK_FALSE(is_greedy_coloring(p3, Schedule(std::vector<Time>{1, 3, 1})));
  CHECK_FALSE(is_greedy_coloring(p3, Schedule(std::vector<Time>{1, 1, 2})));  // improper
  ConflictGraph k2(2, {{0, 1}});
  CHECK(is_greedy_coloring(k2, Schedule(std::vector<Time>{2, 1})));
  CHECK_FALSE(is_greedy_coloring(k2, Schedule(std::vector<Time>{2, 2})));
}

TEST_CASE("every first-fit result is recognized, across random orders") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 5; ++n) {
    for (const ConflictGraph& g : ts::all_graphs_up_to_iso(n)) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (int trial = 0; trial < 6; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(is_greedy_coloring(g, greedy_color(g, order)));
      }
    }
  }
}

TEST_CASE("schedule minimization") {
  SUBCASE("two adjacent unit jobs shift to the first two slots") {
    Instance k2 = ts::make_instance(2, {{0, 1}});
    Schedule s = make_minimal(k2, Schedule(std::vector<Time>{3, 5}));
    CHECK(s.raw() == std::vector<Time>{1, 2});
  }
  SUBCASE("a released job stops at its release date") {
    Instance solo = ts::make_instance(1, {});
    solo.jobs[0].p = 2;
    solo.jobs[0].r = 1;
    CHECK(make_minimal(solo, Schedule(std::vector<Time>{9})).raw() ==
          std::vector<Time>{3});
  }
  SUBCASE("infeasible input is rejected") {
    Instance k2 = ts::make_instance(2, {{0, 1}});
    CHECK_THROWS_AS(make_minimal(k2, Schedule(std::vector<Time>{1, 1})), InputError);
  }
  SUBCASE("output is minimal, feasible, and no objective got worse") {
    std::mt19937 rng(20260822);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 5);
      ts::RandomInstanceSpec spec;
      spec.n_min = spec.n_max = n;
      spec.edge_prob = 0.5;
      Instance inst = ts::random_instance(rng, spec);
      // build a feasible schedule by stacking jobs one after another
      Schedule s(n);
      Time t = 0;
      for (int j = 0; j < n; ++j) {
        t = std::max(t, inst.jobs[j].r) + inst.jobs[j].p + static_cast<Time>(rng() % 2);
        s.set(j, t);
      }
      REQUIRE(check_feasible(inst, s).feasible);
      Schedule m = make_minimal(inst, s);
      CHECK(check_feasible(inst, m).feasible);
      CHECK(is_minimal_schedule(inst, m));
      CHECK(make_minimal(inst, m) == m);  // idempotent
      for (ObjectiveKind k :
           {ObjectiveKind::Cmax, ObjectiveKind::Lmax, ObjectiveKind::WCmax,
            ObjectiveKind::WLmax, ObjectiveKind::SumC, ObjectiveKind::SumT,
            ObjectiveKind::SumWC, ObjectiveKind::SumWT})
        CHECK(evaluate(inst, m, Objective(k)) <= evaluate(inst, s, Objective(k)));
    }
  }
  SUBCASE("unit zero-release minimization lands on a first-fit coloring") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 5);
      ts::RandomInstanceSpec spec;
      spec.n_min = spec.n_max = n;
      spec.unit = true;
      spec.zero_release = true;
      Instance inst = ts::random_instance(rng, spec);
      Schedule s(n);
      for (int j = 0; j < n; ++j) s.set(j, 1 + static_cast<Time>(rng() % n) + j);
      if (!check_feasible(inst, s).feasible) continue;
      CHECK(is_greedy_coloring(inst.graph, make_minimal(inst, s)));
    }
  }
}

TEST_CASE("horizon selection rules") {
  SUBCASE("unit zero-release: width * log2(n) + 1") {
    Instance tree = ts::make_instance(
        8, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {5, 7}});
    HorizonBound hb = horizon(tree, 1, std::nullopt, std::nullopt);
    CHECK(hb.value == 4);  // 1 * 3 + 1
    CHECK(hb.provenance == HorizonBound::Provenance::UnitGrundy);
    CHECK(hb.describe() == "unit-grundy");
  }
  SUBCASE("K4 unit zero-release at width 3") {
    Instance k4 = ts::complete_instance(4);
    HorizonBound hb = horizon(k4, 3, std::nullopt, std::nullopt);
    CHECK(hb.value == 7);  // 3 * 2 + 1, above the chromatic need of 4
  }
  SUBCASE("zero release with a depth bound: (td_ub + 1) * p_max") {
    Instance k2 = ts::make_instance(2, {{0, 1}});
    k2.jobs[0].p = 3;
    k2.jobs[1].p = 2;
    HorizonBound hb = horizon(k2, 1, 2, std::nullopt);
    CHECK(hb.value == 9);
    CHECK(hb.provenance == HorizonBound::Provenance::TreedepthP);
    OracleResult best = brute_force(k2, Objective(ObjectiveKind::Cmax), 9);
    REQUIRE(best.feasible);
    CHECK(best.value == 5);  // the bound safely covers the true optimum
  }
  SUBCASE("unit with releases: r_max + width * log2(n) + 1") {
    Instance p4 = ts::path_instance(4);
    p4.jobs[2].r = 3;
    HorizonBound hb = horizon(p4, 1, std::nullopt, std::nullopt);
    CHECK(hb.value == 3 + 1 * 2 + 1);
    CHECK(hb.provenance == HorizonBound::Provenance::ReleaseShifted);
  }
  SUBCASE("general case: r_max + total processing time") {
    Instance k2 = ts::make_instance(2, {{0, 1}});
    k2.jobs[0].p = 3;
    k2.jobs[1].r = 4;
    HorizonBound hb = horizon(k2, 1, std::nullopt, std::nullopt);
    CHECK(hb.value == 4 + 4);
    CHECK(hb.provenance == HorizonBound::Provenance::SafeSum);
    CHECK(hb.describe() == "safe-sum");
  }
  SUBCASE("clamped up to the largest release-plus-processing need") {
    Instance iso = ts::make_instance(2, {});
    iso.jobs[0].r = 9;  // unit with releases on an edgeless graph
    HorizonBound hb = horizon(iso, 0, std::nullopt, std::nullopt);
    CHECK(hb.value >= iso.max_release_plus_p());
  }
  SUBCASE("a user floor below the rule changes nothing") {
    Instance k4 = ts::complete_instance(4);
    HorizonBound hb = horizon(k4, 3, std::nullopt, Time{2});
    CHECK(hb.value == 7);
    CHECK(hb.provenance == HorizonBound::Provenance::UnitGrundy);
  }
  SUBCASE("a user floor above the rule wins and is labeled") {
    Instance k4 = ts::complete_instance(4);
    HorizonBound hb = horizon(k4, 3, std::nullopt, Time{50});
    CHECK(hb.value == 50);
    CHECK(hb.provenance == HorizonBound::Provenance::UserOverride);
    CHECK(hb.describe() == "user-override");
  }
}

TEST_CASE("first-fit colorings never exceed the width-times-log bound") {
  std::mt19937 rng(31);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      ts::RandomInstanceSpec spec;
      spec.n_min = spec.n_max = n;
      spec.edge_prob = 0.45;
      spec.unit = true;
      spec.zero_release = true;
      Instance inst = ts::random_instance(rng, spec);
      const int w = ts::exact_treewidth(inst.graph);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      Schedule s = greedy_color(inst.graph, order);
      Time max_color = 0;
      for (int j = 0; j < n; ++j) max_color = std::max(max_color, s.at(j));
      CHECK(max_color <= std::max(w, 0) * ceil_log2(n) + 1);
    }
  }
}

TEST_CASE("horizon is sufficient: optima stabilize at the selected bound") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    ts::RandomInstanceSpec spec;
    spec.n_min = 1;
    spec.n_max = 6;
    spec.unit = true;
    spec.zero_release = true;
    Instance inst = ts::random_instance(rng, spec);
    const int w = ts::exact_treewidth(inst.graph);
    HorizonBound hb = horizon(inst, std::max(w, 0), std::nullopt, std::nullopt);
    for (ObjectiveKind k : {ObjectiveKind::SumC, ObjectiveKind::Cmax, ObjectiveKind::SumWT}) {
      OracleResult at_bound = brute_force(inst, Objective(k), hb.value);
      OracleResult beyond = brute_force(inst, Objective(k), hb.value + 2);
      REQUIRE(at_bound.feasible);
      CHECK(at_bound.value == beyond.value);
    }
  }
}
