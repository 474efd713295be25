#include "test_oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace csched::testsupport {

Instance make_instance(int n, const std::vector<std::pair<int, int>>& edges) {
  Instance inst;
  inst.graph = ConflictGraph(n, edges);
  inst.jobs.resize(n);
  for (int j = 0; j < n; ++j) inst.jobs[j].id = j;
  inst.validate();
  return inst;
}

Instance path_instance(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return make_instance(n, edges);
}

Instance cycle_instance(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  if (n >= 3) edges.emplace_back(n - 1, 0);
  return make_instance(n, edges);
}

Instance complete_instance(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return make_instance(n, edges);
}

Instance star_instance(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return make_instance(leaves + 1, edges);
}

int exact_treewidth(const ConflictGraph& g) {
  const int n = g.n();
  if (n == 0) return -1;
  if (n > 9) throw std::invalid_argument("exact_treewidth: n too large");
  std::vector<std::uint32_t> base(n, 0);
  for (auto [u, v] : g.edges()) {
    base[u] |= 1u << v;
    base[v] |= 1u << u;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = n - 1;
  do {
    std::vector<std::uint32_t> adj = base;
    std::uint32_t eliminated = 0;
    int width = 0;
    for (int v : perm) {
      const std::uint32_t nb = adj[v] & ~eliminated;
      width = std::max(width, std::popcount(nb));
      if (width >= best) break;
      for (std::uint32_t rest = nb; rest;) {
        const int u = std::countr_zero(rest);
        rest &= rest - 1;
        adj[u] |= nb & ~(1u << u);
      }
      eliminated |= 1u << v;
    }
    best = std::min(best, width);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

int exact_treedepth(const ConflictGraph& g) {
  const int n = g.n();
  if (n == 0) return 0;
  if (n > 16) throw std::invalid_argument("exact_treedepth: n too large");
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= 1u << v;
    nb[v] |= 1u << u;
  }
  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> depth = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    std::vector<std::uint32_t> comps;
    for (std::uint32_t remaining = mask; remaining;) {
      std::uint32_t comp = remaining & (~remaining + 1);  // lowest set bit
      for (;;) {
        std::uint32_t grown = comp;
        for (std::uint32_t rest = comp; rest;) {
          const int v = std::countr_zero(rest);
          rest &= rest - 1;
          grown |= nb[v] & mask;
        }
        if (grown == comp) break;
        comp = grown;
      }
      comps.push_back(comp);
      remaining &= ~comp;
    }
    if (comps.size() > 1) {
      int worst = 0;
      for (std::uint32_t comp : comps) worst = std::max(worst, depth(comp));
      return worst;
    }
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int best = std::popcount(mask);  // removing vertices one by one always works
    for (std::uint32_t rest = mask; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      best = std::min(best, 1 + depth(mask & ~(1u << v)));
    }
    memo.emplace(mask, best);
    return best;
  };
  return depth((n == 32 ? ~0u : (1u << n) - 1));
}

std::vector<ConflictGraph> all_graphs_up_to_iso(int n) {
  if (n < 0 || n > 6) throw std::invalid_argument("all_graphs_up_to_iso: n out of range");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  const int m = static_cast<int>(pairs.size());
  int pair_index[6][6] = {};
  for (int i = 0; i < m; ++i)
    pair_index[pairs[i].first][pairs[i].second] =
        pair_index[pairs[i].second][pairs[i].first] = i;

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<ConflictGraph> result;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::uint32_t canon = mask;
    for (const std::vector<int>& perm : perms) {
      std::uint32_t mapped = 0;
      for (std::uint32_t rest = mask; rest;) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        mapped |= 1u << pair_index[perm[pairs[i].first]][perm[pairs[i].second]];
      }
      canon = std::min(canon, mapped);
      if (canon == 0) break;
    }
    if (canon != mask) continue;
    std::vector<std::pair<int, int>> edges;
    for (std::uint32_t rest = mask; rest;) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      edges.push_back(pairs[i]);
    }
    result.emplace_back(n, std::move(edges));
  }
  return result;
}

Instance random_instance(std::mt19937& rng, const RandomInstanceSpec& spec) {
  auto rint = [&](long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
  };
  const int n = static_cast<int>(rint(spec.n_min, spec.n_max));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() < spec.edge_prob * 4294967296.0) edges.emplace_back(u, v);
  Instance inst;
  inst.graph = ConflictGraph(n, std::move(edges));
  inst.jobs.resize(n);
  for (int j = 0; j < n; ++j) {
    inst.jobs[j].id = j;
    inst.jobs[j].p = spec.unit ? 1 : rint(1, spec.max_p);
    inst.jobs[j].r = spec.zero_release || spec.max_r == 0 ? 0 : rint(0, spec.max_r);
    inst.jobs[j].d = spec.max_d == 0 ? 0 : rint(0, spec.max_d);
    inst.jobs[j].w = rint(1, spec.max_w);
  }
  inst.validate();
  return inst;
}

}  // namespace csched::testsupport
