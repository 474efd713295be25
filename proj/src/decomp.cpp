#include "csched/decomp.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace csched {

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  // both sorted
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

DecompositionValidation validate(const TreeDecomposition& td, const ConflictGraph& g) {
  const int m = static_cast<int>(td.bags.size());
  auto fail = [](std::string msg) { return DecompositionValidation{false, std::move(msg)}; };

  for (const auto& b : td.bags)
    for (int v : b)
      if (v < 0 || v >= g.n())
        return fail("bag contains vertex " + std::to_string(v) + " outside the graph");

  // tree shape
  if (m == 0) {
    if (g.n() == 0 && td.edges.empty()) return {};
    return fail("decomposition has no bags");
  }
  if (static_cast<int>(td.edges.size()) != m - 1)
    return fail("bag edges do not form a tree (count mismatch)");
  std::vector<std::vector<int>> tadj(m);
  for (auto [a, b] : td.edges) {
    if (a < 0 || a >= m || b < 0 || b >= m || a == b)
      return fail("bag edge endpoints invalid");
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  {
    std::vector<bool> seen(m, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int cnt = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      ++cnt;
      for (int y : tadj[x])
        if (!seen[y]) {
          seen[y] = true;
          q.push(y);
        }
    }
    if (cnt != m) return fail("bag edges do not form a tree (disconnected)");
  }

  // vertex and edge coverage
  std::vector<std::vector<int>> sorted_bags(m);
  for (int i = 0; i < m; ++i) sorted_bags[i] = sorted_copy(td.bags[i]);
  std::vector<char> covered(g.n(), 0);
  for (const auto& b : sorted_bags)
    for (int v : b) covered[v] = 1;
  for (int v = 0; v < g.n(); ++v)
    if (!covered[v]) return fail("vertex " + std::to_string(v) + " not covered by any bag");
  for (auto [u, v] : g.edges()) {
    bool ok = false;
    for (const auto& b : sorted_bags)
      if (std::binary_search(b.begin(), b.end(), u) &&
          std::binary_search(b.begin(), b.end(), v)) {
        ok = true;
        break;
      }
    if (!ok)
      return fail("edge {" + std::to_string(u) + "," + std::to_string(v) +
                  "} not inside any bag");
  }

  // connectivity of occurrence sets
  for (int v = 0; v < g.n(); ++v) {
    int first = -1, total = 0;
    for (int i = 0; i < m; ++i)
      if (std::binary_search(sorted_bags[i].begin(), sorted_bags[i].end(), v)) {
        if (first < 0) first = i;
        ++total;
      }
    if (first < 0) continue;
    std::vector<bool> seen(m, false);
    std::queue<int> q;
    q.push(first);
    seen[first] = true;
    int cnt = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      ++cnt;
      for (int y : tadj[x])
        if (!seen[y] &&
            std::binary_search(sorted_bags[y].begin(), sorted_bags[y].end(), v)) {
          seen[y] = true;
          q.push(y);
        }
    }
    if (cnt != total)
      return fail("bags containing vertex " + std::to_string(v) + " are disconnected");
  }
  return {};
}

EliminationStrategy parse_strategy(const std::string& name) {
  if (name == "min-degree") return EliminationStrategy::MinDegree;
  if (name == "min-fill") return EliminationStrategy::MinFill;
  throw InputError("unknown elimination strategy: " + name);
}

std::string strategy_name(EliminationStrategy s) {
  return s == EliminationStrategy::MinDegree ? "min-degree" : "min-fill";
}

TreeDecomposition heuristic_decompose(const ConflictGraph& g, EliminationStrategy strat) {
  const int n = g.n();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }

  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> elim_pos(n, -1);
  std::vector<int> bag_of(n, -1);

  auto fill_count = [&](int v) {
    long long cnt = 0;
    for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
      for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
        if (!adj[*it].count(*jt)) ++cnt;
    return cnt;
  };

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_score = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long long score = (strat == EliminationStrategy::MinDegree)
                            ? static_cast<long long>(adj[v].size())
                            : fill_count(v);
      if (best < 0 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bag_of[best] = static_cast<int>(td.bags.size());
    td.bags.push_back(std::move(bag));
    elim_pos[best] = step;
    // connect remaining neighbors into a clique, then drop the vertex
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (int u : nb) adj[u].erase(best);
    gone[best] = true;
  }

  // parent of v's bag: the bag of the earliest-eliminated vertex in v's bag
  // other than v itself; bags without one are component roots, chained.
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[elim_pos[v]] = v;
  std::vector<int> roots;
  for (int step = 0; step < n; ++step) {
    const int v = order[step];
    int parent_vertex = -1;
    for (int u : td.bags[bag_of[v]]) {
      if (u == v) continue;
      if (parent_vertex < 0 || elim_pos[u] < elim_pos[parent_vertex]) parent_vertex = u;
    }
    if (parent_vertex < 0)
      roots.push_back(bag_of[v]);
    else
      td.edges.emplace_back(bag_of[v], bag_of[parent_vertex]);
  }
  for (size_t i = 1; i < roots.size(); ++i) td.edges.emplace_back(roots[i - 1], roots[i]);
  return td;
}

TreeDecomposition simplify(const TreeDecomposition& td) {
  const int m = static_cast<int>(td.bags.size());
  if (m == 0) return td;
  std::vector<std::vector<int>> bags(m);
  for (int i = 0; i < m; ++i) bags[i] = sorted_copy(td.bags[i]);
  std::vector<std::set<int>> tadj(m);
  for (auto [a, b] : td.edges) {
    tadj[a].insert(b);
    tadj[b].insert(a);
  }
  std::vector<bool> alive(m, true);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < m && !changed; ++a) {
      if (!alive[a]) continue;
      for (int b : tadj[a]) {
        if (!is_subset(bags[a], bags[b])) continue;
        // merge a into b
        for (int c : tadj[a]) {
          if (c == b) continue;
          tadj[c].erase(a);
          tadj[c].insert(b);
          tadj[b].insert(c);
        }
        tadj[b].erase(a);
        tadj[a].clear();
        alive[a] = false;
        changed = true;
        break;
      }
    }
  }

  TreeDecomposition out;
  std::vector<int> remap(m, -1);
  for (int i = 0; i < m; ++i)
    if (alive[i]) {
      remap[i] = static_cast<int>(out.bags.size());
      out.bags.push_back(bags[i]);
    }
  for (int i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    for (int j : tadj[i])
      if (i < j) out.edges.emplace_back(remap[i], remap[j]);
  }
  return out;
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
  return w;
}

NiceTreeDecomposition to_nice(const TreeDecomposition& input) {
  TreeDecomposition td = simplify(input);
  const int m = static_cast<int>(td.bags.size());
  if (m == 0 || (m == 1 && td.bags[0].empty()))
    throw InputError("to_nice: decomposition covers no vertices");

  std::vector<std::vector<int>> tadj(m);
  for (auto [a, b] : td.edges) {
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  for (auto& a : tadj) std::sort(a.begin(), a.end());

  NiceTreeDecomposition ntd;
  auto emit = [&](NiceNode nd) {
    ntd.nodes.push_back(std::move(nd));
    return static_cast<int>(ntd.nodes.size()) - 1;
  };
  auto set_minus = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };

  // Builds the chain turning bag `from` (already materialized at node `cur`)
  // into bag `to`: forget the extras, then introduce the missing vertices.
  auto transform = [&](int cur, std::vector<int> from, const std::vector<int>& to,
                       int source) {
    for (int x : set_minus(from, to)) {
      std::vector<int> nb;
      std::remove_copy(from.begin(), from.end(), std::back_inserter(nb), x);
      cur = emit({NiceKind::Forget, nb, cur, -1, x, source});
      from = std::move(nb);
    }
    for (int x : set_minus(to, from)) {
      std::vector<int> nb = from;
      nb.insert(std::lower_bound(nb.begin(), nb.end(), x), x);
      cur = emit({NiceKind::Introduce, nb, cur, -1, x, source});
      from = std::move(nb);
    }
    return cur;
  };

  std::function<int(int, int)> build = [&](int b, int parent) -> int {
    std::vector<int> kids;
    for (int c : tadj[b])
      if (c != parent) kids.push_back(c);
    const std::vector<int>& bag = td.bags[b];
    if (kids.empty()) {
      int cur = emit({NiceKind::Leaf, {bag[0]}, -1, -1, bag[0], b});
      std::vector<int> have = {bag[0]};
      return transform(cur, have, bag, b);
    }
    std::vector<int> parts;
    for (int c : kids) {
      int sub = build(c, b);
      parts.push_back(transform(sub, td.bags[c], bag, b));
    }
    int cur = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
      cur = emit({NiceKind::Join, bag, cur, parts[i], -1, b});
    return cur;
  };

  int top = build(0, -1);
  ntd.root = transform(top, td.bags[0], {}, 0);
  if (ntd.nodes[ntd.root].kind != NiceKind::Forget)
    throw std::logic_error("to_nice: root is not a forget node");
  return ntd;
}

DecompositionValidation validate_nice(const NiceTreeDecomposition& ntd,
                                      const ConflictGraph& g) {
  auto fail = [](std::string msg) { return DecompositionValidation{false, std::move(msg)}; };
  const int m = static_cast<int>(ntd.nodes.size());
  if (m == 0) return fail("nice decomposition has no nodes");
  if (ntd.root < 0 || ntd.root >= m) return fail("nice root index invalid");
  const NiceNode& root = ntd.nodes[ntd.root];
  if (root.kind != NiceKind::Forget || !root.bag.empty())
    return fail("nice root must be a forget node with an empty bag");

  std::vector<int> indeg(m, 0);
  for (int i = 0; i < m; ++i) {
    const NiceNode& nd = ntd.nodes[i];
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end()))
      return fail("nice bag not sorted");
    auto in_bag = [&](const std::vector<int>& bag, int v) {
      return std::binary_search(bag.begin(), bag.end(), v);
    };
    switch (nd.kind) {
      case NiceKind::Leaf:
        if (nd.child0 != -1 || nd.child1 != -1) return fail("leaf with children");
        if (nd.bag.size() != 1 || nd.bag[0] != nd.vertex)
          return fail("leaf bag must be the singleton of its vertex");
        break;
      case NiceKind::Introduce: {
        if (nd.child0 < 0 || nd.child0 >= i || nd.child1 != -1)
          return fail("introduce children malformed");
        const auto& cb = ntd.nodes[nd.child0].bag;
        if (in_bag(cb, nd.vertex) || !in_bag(nd.bag, nd.vertex) ||
            nd.bag.size() != cb.size() + 1 ||
            !std::includes(nd.bag.begin(), nd.bag.end(), cb.begin(), cb.end()))
          return fail("introduce bag must extend its child bag by the vertex");
        ++indeg[nd.child0];
        break;
      }
      case NiceKind::Forget: {
        if (nd.child0 < 0 || nd.child0 >= i || nd.child1 != -1)
          return fail("forget children malformed");
        const auto& cb = ntd.nodes[nd.child0].bag;
        if (in_bag(nd.bag, nd.vertex) || !in_bag(cb, nd.vertex) ||
            cb.size() != nd.bag.size() + 1 ||
            !std::includes(cb.begin(), cb.end(), nd.bag.begin(), nd.bag.end()))
          return fail("forget bag must shrink its child bag by the vertex");
        ++indeg[nd.child0];
        break;
      }
      case NiceKind::Join: {
        if (nd.child0 < 0 || nd.child0 >= i || nd.child1 < 0 || nd.child1 >= i)
          return fail("join children malformed");
        if (ntd.nodes[nd.child0].bag != nd.bag || ntd.nodes[nd.child1].bag != nd.bag)
          return fail("join children must share the join bag");
        ++indeg[nd.child0];
        ++indeg[nd.child1];
        break;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    const int expected = (i == ntd.root) ? 0 : 1;
    if (indeg[i] != expected) return fail("nice tree is not a rooted tree");
  }

  // underlying decomposition properties via the plain validator
  TreeDecomposition flat;
  flat.bags.reserve(m);
  for (const auto& nd : ntd.nodes) flat.bags.push_back(nd.bag);
  for (int i = 0; i < m; ++i) {
    const NiceNode& nd = ntd.nodes[i];
    if (nd.child0 >= 0) flat.edges.emplace_back(nd.child0, i);
    if (nd.child1 >= 0) flat.edges.emplace_back(nd.child1, i);
  }
  DecompositionValidation underlying = validate(flat, g);
  if (!underlying.ok) return underlying;
  return {};
}

namespace {

struct SubTd {
  std::vector<std::vector<int>> bags;  // filtered to unplaced vertices
  std::vector<std::vector<int>> adj;   // tree adjacency
};

void centroid_place(const SubTd& sub, int parent_vertex, int parent_depth,
                    std::vector<int>& parent, std::vector<int>& depth,
                    std::vector<int>& roots) {
  const int m = static_cast<int>(sub.bags.size());
  if (m == 0) return;

  // tree centroid on bag count
  std::vector<int> size(m, 1);
  std::vector<int> order, par(m, -1);
  order.reserve(m);
  order.push_back(0);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int x = order[qi];
    for (int y : sub.adj[x])
      if (y != par[x]) {
        par[y] = x;
        order.push_back(y);
      }
  }
  for (int i = m - 1; i > 0; --i) size[par[order[i]]] += size[order[i]];
  int centroid = 0, best = m + 1;
  for (int i = 0; i < m; ++i) {
    int worst = m - size[i];
    for (int y : sub.adj[i])
      if (y != par[i]) worst = std::max(worst, size[y]);
    if (worst < best) {
      best = worst;
      centroid = i;
    }
  }

  // chain the centroid bag's vertices below the current parent
  int attach = parent_vertex, d = parent_depth;
  for (int v : sub.bags[centroid]) {
    parent[v] = attach;
    depth[v] = d + 1;
    if (attach < 0) roots.push_back(v);
    attach = v;
    ++d;
  }

  // split at the centroid and recurse on each remaining component
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int s = 0; s < m; ++s) {
    if (s == centroid || comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : sub.adj[x])
        if (y != centroid && comp[y] < 0) {
          comp[y] = ncomp;
          q.push(y);
        }
    }
    ++ncomp;
  }
  const auto& placed = sub.bags[centroid];
  for (int c = 0; c < ncomp; ++c) {
    SubTd nxt;
    std::vector<int> remap(m, -1);
    for (int i = 0; i < m; ++i)
      if (comp[i] == c) {
        remap[i] = static_cast<int>(nxt.bags.size());
        std::vector<int> filtered;
        for (int v : sub.bags[i])
          if (!std::binary_search(placed.begin(), placed.end(), v))
            filtered.push_back(v);
        nxt.bags.push_back(std::move(filtered));
      }
    nxt.adj.resize(nxt.bags.size());
    for (int i = 0; i < m; ++i)
      if (remap[i] >= 0)
        for (int y : sub.adj[i])
          if (remap[y] >= 0) nxt.adj[remap[i]].push_back(remap[y]);
    centroid_place(nxt, attach, d, parent, depth, roots);
  }
}

}  // namespace

EliminationTree treedepth_upper_bound(const TreeDecomposition& input, const ConflictGraph& g) {
  EliminationTree et;
  et.parent.assign(g.n(), -1);
  if (g.n() == 0) return et;
  DecompositionValidation v = validate(input, g);
  if (!v.ok) throw InputError("treedepth_upper_bound: invalid decomposition: " + v.message);

  TreeDecomposition td = simplify(input);
  SubTd sub;
  sub.bags = td.bags;
  sub.adj.resize(td.bags.size());
  for (auto [a, b] : td.edges) {
    sub.adj[a].push_back(b);
    sub.adj[b].push_back(a);
  }
  std::vector<int> depth(g.n(), 0);
  centroid_place(sub, -1, 0, et.parent, depth, et.roots);
  et.height = *std::max_element(depth.begin(), depth.end());
  return et;
}

TreeDecomposition parse_td(std::istream& in, int expected_n) {
  TreeDecomposition td;
  std::string line;
  int lineno = 0;
  long long nbags = -1, maxbag = -1, nverts = -1;
  std::vector<bool> bag_seen;
  std::vector<std::pair<int, int>> edges;
  auto err = [&](const std::string& msg) {
    throw InputError(".td line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok == "c") continue;    // comment
    if (tok == "s") {
      std::string kind;
      if (nbags >= 0) err("duplicate solution line");
      if (!(ls >> kind >> nbags >> maxbag >> nverts) || kind != "td")
        err("expected 's td <bags> <max-bag-size> <n>'");
      if (nbags < 0 || maxbag < 0 || nverts < 0) err("negative header field");
      td.bags.assign(nbags, {});
      bag_seen.assign(nbags, false);
      continue;
    }
    if (nbags < 0) err("content before the 's td' header");
    if (tok == "b") {
      long long id;
      if (!(ls >> id)) err("bag line without id");
      if (id < 1 || id > nbags) err("bag id out of range");
      if (bag_seen[id - 1]) err("duplicate bag id");
      bag_seen[id - 1] = true;
      long long v;
      while (ls >> v) {
        if (v < 1 || v > nverts) err("bag vertex out of range");
        td.bags[id - 1].push_back(static_cast<int>(v - 1));
      }
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
      td.bags[id - 1].erase(
          std::unique(td.bags[id - 1].begin(), td.bags[id - 1].end()),
          td.bags[id - 1].end());
      continue;
    }
    long long a, b;
    std::istringstream es(line);
    if (!(es >> a >> b)) err("expected a bag tree edge '<i> <j>'");
    if (a < 1 || a > nbags || b < 1 || b > nbags) err("tree edge endpoint out of range");
    edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (nbags < 0) throw InputError(".td: missing 's td' header");
  for (long long i = 0; i < nbags; ++i)
    if (!bag_seen[i])
      throw InputError(".td: bag " + std::to_string(i + 1) + " never defined");
  if (nbags >= 1 && static_cast<long long>(edges.size()) != nbags - 1)
    throw InputError(".td: expected " + std::to_string(nbags - 1) + " tree edges, got " +
                     std::to_string(edges.size()));
  if (expected_n >= 0 && nverts != expected_n)
    throw InputError(".td: header vertex count " + std::to_string(nverts) +
                     " does not match the instance (" + std::to_string(expected_n) + ")");
  for (const auto& b : td.bags)
    if (static_cast<long long>(b.size()) > maxbag)
      throw InputError(".td: bag larger than the declared max bag size");
  td.edges = std::move(edges);
  return td;
}

TreeDecomposition parse_td_text(const std::string& text, int expected_n) {
  std::istringstream in(text);
  return parse_td(in, expected_n);
}

std::string format_td(const TreeDecomposition& td, int n) {
  size_t maxbag = 0;
  for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << maxbag << ' ' << n << '\n';
  for (size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << (i + 1);
    for (int v : td.bags[i]) out << ' ' << (v + 1);
    out << '\n';
  }
  for (auto [a, b] : td.edges) out << (a + 1) << ' ' << (b + 1) << '\n';
  return out.str();
}

}  // namespace csched
