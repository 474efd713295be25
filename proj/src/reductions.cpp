#include "csched/reductions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace csched {

using nlohmann::json;

void PrecoloringInstance::validate() const {
  if (k < 1) throw InputError("precoloring: k must be >= 1");
  if (static_cast<int>(chi.size()) != h.n())
    throw InputError("precoloring: color vector size differs from the graph order");
  for (int c : chi)
    if (c < 0 || c > k) throw InputError("precoloring: color out of range");
  for (auto [u, v] : h.edges())
    if (chi[u] != 0 && chi[u] == chi[v])
      throw InputError("precoloring: colored endpoints of an edge share a color");
}

PrecoloringInstance parse_pce_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("malformed JSON");
  if (!doc.is_object()) throw InputError("precoloring: top level must be an object");
  if (doc.contains("schema_version") && doc.at("schema_version") != 1)
    throw InputError("unsupported schema_version");
  for (const char* key : {"n", "k"})
    if (!doc.contains(key) || !doc.at(key).is_number_integer())
      throw InputError(std::string("precoloring: missing integer field '") + key + "'");
  const int n = doc.at("n").get<int>();
  if (n < 0) throw InputError("precoloring: n must be >= 0");
  std::vector<std::pair<int, int>> edges;
  if (doc.contains("edges"))
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw InputError("precoloring: each edge must be a pair");
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  PrecoloringInstance pce;
  pce.h = ConflictGraph(n, std::move(edges));
  pce.k = doc.at("k").get<int>();
  pce.chi.assign(n, 0);
  if (doc.contains("precoloring")) {
    if (!doc.at("precoloring").is_object())
      throw InputError("precoloring: 'precoloring' must be a map");
    for (const auto& [key, val] : doc.at("precoloring").items()) {
      int v;
      try {
        size_t pos = 0;
        v = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw InputError("precoloring: non-integer vertex id '" + key + "'");
      }
      if (v < 0 || v >= n) throw InputError("precoloring: vertex id out of range");
      if (!val.is_number_integer()) throw InputError("precoloring: colors must be integers");
      pce.chi[v] = val.get<int>();
    }
  }
  pce.validate();
  return pce;
}

std::string format_pce_json(const PrecoloringInstance& pce) {
  json doc;
  doc["schema_version"] = 1;
  doc["n"] = pce.h.n();
  json edges = json::array();
  for (auto [u, v] : pce.h.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  doc["k"] = pce.k;
  json pre = json::object();
  for (int v = 0; v < pce.h.n(); ++v)
    if (pce.chi[v] != 0) pre[std::to_string(v)] = pce.chi[v];
  doc["precoloring"] = std::move(pre);
  return doc.dump(2) + "\n";
}

PceAnswer pce_exhaustive(const PrecoloringInstance& pce, const SearchBudget& budget) {
  pce.validate();
  const int n = pce.h.n();
  PceAnswer ans;
  ans.coloring.assign(n, 0);
  std::function<bool(int)> go = [&](int v) -> bool {
    if (v == n) return true;
    const int lo = pce.chi[v] != 0 ? pce.chi[v] : 1;
    const int hi = pce.chi[v] != 0 ? pce.chi[v] : pce.k;
    for (int c = lo; c <= hi; ++c) {
      if (++ans.states > budget.max_states)
        throw ResourceError("precoloring: extension search budget exceeded");
      bool clash = false;
      for (int u : pce.h.neighbors(v))
        if (u < v && ans.coloring[u] == c) {
          clash = true;
          break;
        }
      if (clash) continue;
      ans.coloring[v] = c;
      if (go(v + 1)) return true;
      ans.coloring[v] = 0;
    }
    return false;
  };
  ans.yes = go(0);
  if (!ans.yes) ans.coloring.clear();
  return ans;
}

std::string role_name(JobProvenance::Role role) {
  switch (role) {
    case JobProvenance::Role::Original: return "original";
    case JobProvenance::Role::FrameStart: return "frame_start";
    case JobProvenance::Role::FrameStartBlock: return "frame_start_block";
    case JobProvenance::Role::FrameEnd: return "frame_end";
    case JobProvenance::Role::FrameEndBlock: return "frame_end_block";
    case JobProvenance::Role::PinLow: return "pin_low";
    case JobProvenance::Role::PinHigh: return "pin_high";
    case JobProvenance::Role::Primary: return "primary";
    case JobProvenance::Role::Secondary: return "secondary";
    case JobProvenance::Role::Lower: return "lower";
    case JobProvenance::Role::Upper: return "upper";
  }
  return "?";
}

namespace {

struct GadgetBuilder {
  std::vector<Job> jobs;
  std::vector<std::pair<int, int>> edges;
  std::vector<JobProvenance> prov;

  int add(Time p, Time r, Time d, Value w, JobProvenance::Role role, int src,
          int i1 = -1, int i2 = -1) {
    const int id = static_cast<int>(jobs.size());
    jobs.push_back({id, p, r, d, w});
    prov.push_back({id, role, src, i1, i2});
    return id;
  }
  void edge(int a, int b) { edges.emplace_back(a, b); }

  Instance finish() {
    Instance inst;
    inst.graph = ConflictGraph(static_cast<int>(jobs.size()), std::move(edges));
    inst.jobs = std::move(jobs);
    inst.validate();
    return inst;
  }
};

void require_edge(const PrecoloringInstance& pce) {
  if (pce.h.edges().empty())
    throw InputError("gadget construction needs at least one edge in the input graph");
}

// effective color bounds: colored vertices are pinned, uncolored span 1..k
int upper_color(const PrecoloringInstance& pce, int v) {
  return pce.chi[v] != 0 ? pce.chi[v] : pce.k;
}

Value lcm_to(int k) {
  Value l = 1;
  for (Value i = 2; i <= k; ++i) l = checked_mul(l / std::gcd(l, i), i);
  return l;
}

}  // namespace

ReductionOutput pce_to_cmax(const PrecoloringInstance& pce) {
  pce.validate();
  require_edge(pce);
  if (pce.k < 2) throw InputError("makespan gadget needs k >= 2");
  const int n = pce.h.n(), k = pce.k;

  GadgetBuilder bld;
  for (int v = 0; v < n; ++v)
    bld.add(1, 0, 0, 1, JobProvenance::Role::Original, v);
  for (auto [u, v] : pce.h.edges()) bld.edge(u, v);
  const int a = bld.add(1, 0, 0, 1, JobProvenance::Role::FrameStart, -1);
  const int ap = bld.add(k - 1, 0, 0, 1, JobProvenance::Role::FrameStartBlock, -1);
  const int b = bld.add(1, 0, 0, 1, JobProvenance::Role::FrameEnd, -1);
  const int bp = bld.add(k - 1, 0, 0, 1, JobProvenance::Role::FrameEndBlock, -1);
  bld.edge(a, ap);
  bld.edge(b, bp);
  bld.edge(a, b);
  for (int j = 0; j < n; ++j) {
    const int c = pce.chi[j];
    if (c == 0) continue;
    int j1 = -1, j2 = -1;
    if (c >= 2) {
      j1 = bld.add(c - 1, 0, 0, 1, JobProvenance::Role::PinLow, j);
      bld.edge(j, j1);
      bld.edge(b, j1);
      bld.edge(a, j);  // omitted when c == 1
    }
    if (c <= k - 1) {
      j2 = bld.add(k - c, 0, 0, 1, JobProvenance::Role::PinHigh, j);
      bld.edge(j, j2);
      bld.edge(a, j2);
      bld.edge(b, j);  // omitted when c == k
    }
    if (j1 >= 0 && j2 >= 0) bld.edge(j1, j2);
  }

  ReductionOutput out;
  out.kind = GadgetKind::Cmax;
  out.objective = Objective(ObjectiveKind::Cmax);
  out.threshold = k;
  out.decision_horizon = k;
  out.h_n = n;
  out.k = k;
  out.chi = pce.chi;
  out.provenance = bld.prov;
  out.instance = bld.finish();
  return out;
}

ReductionOutput pce_to_sumcj(const PrecoloringInstance& pce, std::optional<Time> x_override) {
  pce.validate();
  require_edge(pce);
  const int n = pce.h.n(), k = pce.k;
  const Time x_floor = std::max<Time>(k + 2, static_cast<Time>(n) * (k - 1) + 1);
  const Time X = x_override.value_or(static_cast<Time>(n) * k + 1);
  if (X < x_floor)
    throw InputError("sum gadget: X override below the safe floor " + std::to_string(x_floor));

  GadgetBuilder bld;
  for (int v = 0; v < n; ++v)
    bld.add(1, 0, 0, 1, JobProvenance::Role::Original, v);
  for (auto [u, v] : pce.h.edges()) bld.edge(u, v);

  Value K = checked_mul(n, k);
  for (int j = 0; j < n; ++j) {
    const Time u = upper_color(pce, j);
    const Time l = pce.chi[j] >= 2 ? pce.chi[j] : 1;
    for (Time i = 1; i <= X; ++i) {
      const int prim = bld.add(X - u, 0, 0, 1, JobProvenance::Role::Primary, j,
                               static_cast<int>(i));
      bld.edge(j, prim);
      for (Time i0 = 1; i0 <= X; ++i0) {
        const int sec = bld.add(u, 0, 0, 1, JobProvenance::Role::Secondary, j,
                                static_cast<int>(i), static_cast<int>(i0));
        bld.edge(prim, sec);
      }
    }
    if (l >= 2)
      for (Time i = 1; i <= X; ++i) {
        const int low = bld.add(l - 1, 0, 0, 1, JobProvenance::Role::Lower, j,
                                static_cast<int>(i));
        bld.edge(j, low);
      }
    // per-vertex budget share: (1 + u) X^2 + (l - 1) X
    K = checked_add(K, checked_add(checked_mul(checked_add(1, u), checked_mul(X, X)),
                                   checked_mul(l - 1, X)));
  }

  ReductionOutput out;
  out.kind = GadgetKind::SumC;
  out.objective = Objective(ObjectiveKind::SumC);
  out.threshold = K;
  out.decision_horizon = X;
  out.x = X;
  out.h_n = n;
  out.k = k;
  out.chi = pce.chi;
  out.provenance = bld.prov;
  out.instance = bld.finish();
  return out;
}

ReductionOutput pce_to_release_lmax(const PrecoloringInstance& pce, GadgetMode mode) {
  pce.validate();
  const int n = pce.h.n(), k = pce.k;
  GadgetBuilder bld;
  for (int v = 0; v < n; ++v) {
    Time r, d;
    if (pce.chi[v] != 0) {
      r = mode == GadgetMode::Paper ? pce.chi[v] : pce.chi[v] - 1;
      d = mode == GadgetMode::Paper ? pce.chi[v] + 1 : pce.chi[v];
    } else {
      r = 0;
      d = k;
    }
    bld.add(1, r, d, 1, JobProvenance::Role::Original, v);
  }
  for (auto [u, v] : pce.h.edges()) bld.edge(u, v);

  ReductionOutput out;
  out.kind = GadgetKind::ReleaseLmax;
  out.mode = mode;
  out.objective = Objective(ObjectiveKind::Lmax);
  out.threshold = 0;
  out.decision_horizon = mode == GadgetMode::Paper ? k + 1 : k;
  out.h_n = n;
  out.k = k;
  out.chi = pce.chi;
  out.provenance = bld.prov;
  out.instance = bld.finish();
  return out;
}

ReductionOutput pce_to_release_wcmax(const PrecoloringInstance& pce, GadgetMode mode) {
  pce.validate();
  const int n = pce.h.n(), k = pce.k;
  GadgetBuilder bld;
  Value threshold;
  Time horizon;
  if (mode == GadgetMode::Paper) {
    for (int v = 0; v < n; ++v) {
      if (pce.chi[v] != 0)
        bld.add(1, pce.chi[v], 0, k / (pce.chi[v] + 1), JobProvenance::Role::Original, v);
      else
        bld.add(1, 0, 0, 1, JobProvenance::Role::Original, v);
    }
    threshold = k;
    // any yes-schedule minimizes to one with C_j <= r_j + deg(j) + 1
    horizon = 1;
    for (int v = 0; v < n; ++v)
      horizon = std::max(horizon,
                         (pce.chi[v] != 0 ? static_cast<Time>(pce.chi[v]) : 0) +
                             pce.h.degree(v) + 1);
  } else {
    const Value L = lcm_to(k);
    for (int v = 0; v < n; ++v) {
      if (pce.chi[v] != 0)
        bld.add(1, pce.chi[v] - 1, 0, L / pce.chi[v], JobProvenance::Role::Original, v);
      else
        bld.add(1, 0, 0, L / k, JobProvenance::Role::Original, v);
    }
    threshold = L;
    horizon = k;  // w_j C_j <= L already forces C_j <= k everywhere
  }
  for (auto [u, v] : pce.h.edges()) bld.edge(u, v);

  ReductionOutput out;
  out.kind = GadgetKind::ReleaseWCmax;
  out.mode = mode;
  out.objective = Objective(ObjectiveKind::WCmax);
  out.threshold = threshold;
  out.decision_horizon = horizon;
  out.h_n = n;
  out.k = k;
  out.chi = pce.chi;
  out.provenance = bld.prov;
  out.instance = bld.finish();
  return out;
}

ReductionOutput pce_to_release_sumcj(const PrecoloringInstance& pce,
                                     std::optional<Time> x_override) {
  pce.validate();
  require_edge(pce);
  const int n = pce.h.n(), k = pce.k;
  const Time x_floor = std::max<Time>(k + 2, static_cast<Time>(n) * (k - 1) + 2);
  const Time X = x_override.value_or(static_cast<Time>(n) * k + 1);
  if (X < x_floor)
    throw InputError("release sum gadget: X override below the safe floor " +
                     std::to_string(x_floor));

  GadgetBuilder bld;
  for (int v = 0; v < n; ++v) {
    const Time l = pce.chi[v] != 0 ? pce.chi[v] - 1 : 0;
    bld.add(1, l, 0, 1, JobProvenance::Role::Original, v);
  }
  for (auto [u, v] : pce.h.edges()) bld.edge(u, v);

  Value K = checked_mul(n, k);
  Value cohort_sum = 0;
  for (int j = 0; j < n; ++j) {
    const Time u = upper_color(pce, j);
    for (Time i = u; i <= X - 2; ++i) {
      for (Time i0 = 1; i0 <= X; ++i0) {
        const int up = bld.add(1, i, 0, 1, JobProvenance::Role::Upper, j,
                               static_cast<int>(i), static_cast<int>(i0));
        bld.edge(j, up);
      }
      cohort_sum = checked_add(cohort_sum, i + 1);
    }
  }
  K = checked_add(K, checked_mul(X, cohort_sum));

  ReductionOutput out;
  out.kind = GadgetKind::ReleaseSumC;
  out.objective = Objective(ObjectiveKind::SumC);
  out.threshold = K;
  out.decision_horizon = X;
  out.x = X;
  out.h_n = n;
  out.k = k;
  out.chi = pce.chi;
  out.provenance = bld.prov;
  out.instance = bld.finish();
  return out;
}

TreeDecomposition extend_decomposition(const ReductionOutput& out,
                                       const TreeDecomposition& td_h) {
  // recover H as the induced subgraph on the original vertices
  std::vector<std::pair<int, int>> h_edges;
  for (auto [u, v] : out.instance.graph.edges())
    if (u < out.h_n && v < out.h_n) h_edges.emplace_back(u, v);
  ConflictGraph h(out.h_n, std::move(h_edges));
  DecompositionValidation v = validate(td_h, h);
  if (!v.ok)
    throw InputError("extend_decomposition: invalid decomposition of H: " + v.message);

  if (out.kind == GadgetKind::ReleaseLmax || out.kind == GadgetKind::ReleaseWCmax) {
    TreeDecomposition copy = td_h;
    for (auto& bag : copy.bags) std::sort(bag.begin(), bag.end());
    return copy;
  }

  TreeDecomposition td;
  td.bags.reserve(td_h.bags.size());
  for (const auto& bag : td_h.bags) {
    std::vector<int> b = bag;
    std::sort(b.begin(), b.end());
    td.bags.push_back(std::move(b));
  }
  td.edges = td_h.edges;
  auto first_bag_with = [&](int v) {
    for (size_t i = 0; i < td_h.bags.size(); ++i)
      for (int u : td_h.bags[i])
        if (u == v) return static_cast<int>(i);
    throw std::logic_error("extend_decomposition: vertex missing from every bag");
  };
  auto attach = [&](std::vector<int> bag, int to) {
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    const int id = static_cast<int>(td.bags.size()) - 1;
    td.edges.emplace_back(id, to);
    return id;
  };

  if (out.kind == GadgetKind::Cmax) {
    const int a = out.h_n, ap = out.h_n + 1, b = out.h_n + 2, bp = out.h_n + 3;
    for (auto& bag : td.bags) {
      bag.push_back(a);
      bag.push_back(b);
      std::sort(bag.begin(), bag.end());
    }
    attach({a, ap, b, bp}, 0);
    // per colored vertex: its pin jobs ride next to a bag containing it
    std::vector<int> pin_low(out.h_n, -1), pin_high(out.h_n, -1);
    for (const JobProvenance& p : out.provenance) {
      if (p.role == JobProvenance::Role::PinLow) pin_low[p.source] = p.job;
      if (p.role == JobProvenance::Role::PinHigh) pin_high[p.source] = p.job;
    }
    for (int j = 0; j < out.h_n; ++j) {
      if (out.chi[j] == 0) continue;
      const int base = first_bag_with(j);
      if (pin_low[j] >= 0 && pin_high[j] >= 0) {
        const int mid = attach({j, pin_low[j], a, b}, base);
        attach({j, pin_low[j], pin_high[j], a}, mid);
      } else if (pin_high[j] >= 0) {
        attach({j, pin_high[j], a, b}, base);
      } else {
        attach({j, pin_low[j], a, b}, base);
      }
    }
    return td;
  }

  // sum gadgets: every auxiliary job pairs with its base in a size-2 bag
  std::vector<int> primary_bag(out.instance.n(), -1);
  for (const JobProvenance& p : out.provenance) {
    switch (p.role) {
      case JobProvenance::Role::Primary:
        primary_bag[p.job] = attach({p.source, p.job}, first_bag_with(p.source));
        break;
      case JobProvenance::Role::Secondary: {
        // its primary is the preceding job with matching (source, index1)
        const int prim = p.job - p.index2;  // secondaries follow their primary
        attach({prim, p.job}, primary_bag[prim]);
        break;
      }
      case JobProvenance::Role::Lower:
      case JobProvenance::Role::Upper:
        attach({p.source, p.job}, first_bag_with(p.source));
        break;
      default:
        break;
    }
  }
  return td;
}

Schedule reduction_witness(const ReductionOutput& out, const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != out.h_n)
    throw InputError("witness: coloring size differs from the original vertex count");
  for (int j = 0; j < out.h_n; ++j) {
    if (coloring[j] < 1 || coloring[j] > out.k)
      throw InputError("witness: color out of range");
    if (out.chi[j] != 0 && coloring[j] != out.chi[j])
      throw InputError("witness: coloring does not extend the precoloring");
  }
  for (auto [u, v] : out.instance.graph.edges())
    if (u < out.h_n && v < out.h_n && coloring[u] == coloring[v])
      throw InputError("witness: coloring is not proper on the original graph");
  if (out.mode == GadgetMode::Paper &&
      (out.kind == GadgetKind::ReleaseLmax || out.kind == GadgetKind::ReleaseWCmax))
    throw InputError("witness: defined only for strict mode of the release gadgets");

  Schedule s(out.instance.n());
  const Time k = out.k, X = out.x;
  for (const JobProvenance& p : out.provenance) {
    switch (p.role) {
      case JobProvenance::Role::Original:
        s.set(p.job, coloring[p.source]);
        break;
      case JobProvenance::Role::FrameStart:
        s.set(p.job, 1);
        break;
      case JobProvenance::Role::FrameStartBlock:
        s.set(p.job, k);
        break;
      case JobProvenance::Role::FrameEnd:
        s.set(p.job, k);
        break;
      case JobProvenance::Role::FrameEndBlock:
        s.set(p.job, k - 1);
        break;
      case JobProvenance::Role::PinLow:
        s.set(p.job, out.chi[p.source] - 1);
        break;
      case JobProvenance::Role::PinHigh:
        s.set(p.job, k);
        break;
      case JobProvenance::Role::Primary:
        s.set(p.job, X);
        break;
      case JobProvenance::Role::Secondary:
        s.set(p.job, out.chi[p.source] != 0 ? out.chi[p.source] : k);
        break;
      case JobProvenance::Role::Lower:
        s.set(p.job, out.chi[p.source] - 1);
        break;
      case JobProvenance::Role::Upper:
        s.set(p.job, p.index1 + 1);
        break;
    }
  }
  return s;
}

Instance gen_wcmax_tree(int depth, Value weight) {
  if (depth < 1) throw InputError("tree family: depth must be >= 1");
  if (weight < depth)
    throw InputError("tree family: weight must be at least the depth");
  GadgetBuilder bld;
  std::function<int(int)> build = [&](int m) -> int {
    std::vector<int> kids;
    for (int t = 1; t < m; ++t) kids.push_back(build(t));
    const int id = bld.add(1, 0, 0, m == 1 ? weight : 1, JobProvenance::Role::Original, -1);
    for (int c : kids) bld.edge(id, c);
    return id;
  };
  build(depth);
  return bld.finish();
}

Instance gen_lmax_tree(int depth) {
  if (depth < 1) throw InputError("tree family: depth must be >= 1");
  GadgetBuilder bld;
  std::function<int(int)> build = [&](int m) -> int {
    std::vector<int> kids;
    for (int t = 1; t < m; ++t) kids.push_back(build(t));
    const int id = bld.add(1, 0, m, 1, JobProvenance::Role::Original, -1);
    for (int c : kids) bld.edge(id, c);
    return id;
  };
  build(depth);
  return bld.finish();
}

VerifyReport verify_reduction(const PrecoloringInstance& pce, const ReductionOutput& out,
                              const VerifyOptions& opts) {
  pce.validate();
  if (out.h_n != pce.h.n() || out.k != pce.k || out.chi != pce.chi)
    throw InputError("verify: the reduction output was generated from a different input");

  VerifyReport rep;
  rep.threshold = out.threshold;
  try {
    rep.pce_yes = pce_exhaustive(pce, opts.pce_budget).yes;
  } catch (const ResourceError& e) {
    rep.detail = e.what();
    return rep;  // undecided
  }

  TreeDecomposition td_h = heuristic_decompose(pce.h, opts.strategy);
  TreeDecomposition td_g = extend_decomposition(out, td_h);
  NiceTreeDecomposition ntd = to_nice(td_g);
  SolveResult sr = solve(out.instance, ntd, out.objective, out.decision_horizon, opts.solver);
  if (sr.status == SolveStatus::ResourceLimit) {
    rep.detail = "solver table budget refused the instance";
    return rep;  // undecided
  }
  rep.decided = true;
  rep.sched_value = sr.value;
  rep.sched_yes = sr.status == SolveStatus::Optimal && decision(sr.value, out.threshold);
  rep.agree = rep.pce_yes == rep.sched_yes;
  if (!rep.agree) {
    std::ostringstream d;
    d << "answers disagree: extension search says " << (rep.pce_yes ? "yes" : "no")
      << ", threshold decision says " << (rep.sched_yes ? "yes" : "no");
    rep.detail = d.str();
  }

  if (rep.sched_yes && !opts.solver.value_only) {
    rep.witness_checked = true;
    std::vector<int> mapped(out.h_n, 0);
    const bool shift_down =
        out.mode == GadgetMode::Paper &&
        (out.kind == GadgetKind::ReleaseLmax || out.kind == GadgetKind::ReleaseWCmax);
    Time frame_start_time = 0;
    for (const JobProvenance& p : out.provenance)
      if (p.role == JobProvenance::Role::FrameStart)
        frame_start_time = sr.schedule.at(p.job);
    for (int j = 0; j < out.h_n; ++j) {
      Time c = sr.schedule.at(j);
      if (out.kind == GadgetKind::Cmax && frame_start_time != 1)
        c = out.k - c + 1;  // the frame ran backwards; flip the window
      if (shift_down) c -= 1;
      mapped[j] = static_cast<int>(c);
    }
    bool ok = true;
    for (int j = 0; j < out.h_n && ok; ++j)
      ok = mapped[j] >= 1 && mapped[j] <= out.k &&
           (out.chi[j] == 0 || mapped[j] == out.chi[j]);
    for (auto [u, v] : pce.h.edges())
      if (ok && mapped[u] == mapped[v]) ok = false;
    rep.witness_maps_back = ok;
  }
  return rep;
}

}  // namespace csched
