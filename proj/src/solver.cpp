#include "csched/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

namespace csched {

namespace {

constexpr std::uint64_t kEntriesOverBudget = std::numeric_limits<std::uint64_t>::max();

// k^e, saturating at cap+1 so callers can compare against a budget safely.
std::uint64_t pow_capped(std::uint64_t k, int e, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (int i = 0; i < e; ++i) {
    if (k != 0 && acc > cap / k) return kEntriesOverBudget;
    acc *= k;
  }
  return acc;
}

struct Tables {
  const Instance& inst;
  const NiceTreeDecomposition& ntd;
  Objective obj;
  Time k;
  std::vector<std::vector<Value>> val;
  std::vector<std::vector<std::uint32_t>> choice;  // forget nodes, full mode only
  bool keep_choices;

  std::uint64_t table_size(int i) const {
    return pow_capped(static_cast<std::uint64_t>(k),
                      static_cast<int>(ntd.nodes[i].bag.size()),
                      std::numeric_limits<std::uint64_t>::max() / 2);
  }

  // position of vertex v in the sorted bag
  static int bag_pos(const std::vector<int>& bag, int v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  }

  Value term_of(int v, Time t) const { return obj.term(inst.jobs[v], t); }

  void compute(int i) {
    const NiceNode& nd = ntd.nodes[i];
    const std::uint64_t size = table_size(i);
    std::vector<Value>& tab = val[i];
    tab.resize(size);
    switch (nd.kind) {
      case NiceKind::Leaf: {
        const Job& job = inst.jobs[nd.vertex];
        for (Time t = 1; t <= k; ++t)
          tab[t - 1] = (t < job.r + job.p) ? kInfinity : term_of(nd.vertex, t);
        break;
      }
      case NiceKind::Introduce: {
        const std::vector<Value>& child = val[nd.child0];
        const std::vector<int>& cbag = ntd.nodes[nd.child0].bag;
        const int pos = bag_pos(nd.bag, nd.vertex);
        const std::uint64_t low_stride = pow_capped(k, pos, size);
        const Job& job = inst.jobs[nd.vertex];
        // bag neighbors of the introduced vertex, by child-bag position
        std::vector<std::pair<std::uint64_t, Time>> nbr;  // (stride, p)
        for (int cp = 0; cp < static_cast<int>(cbag.size()); ++cp)
          if (inst.graph.adjacent(nd.vertex, cbag[cp]))
            nbr.emplace_back(pow_capped(k, cp, size), inst.jobs[cbag[cp]].p);
        std::vector<Value> terms(k + 1);
        for (Time t = 1; t <= k; ++t)
          terms[t] = (t < job.r + job.p) ? kInfinity : term_of(nd.vertex, t);
        std::vector<Time> nbr_time(nbr.size());
        for (std::uint64_t ci = 0; ci < child.size(); ++ci) {
          for (size_t a = 0; a < nbr.size(); ++a)
            nbr_time[a] = static_cast<Time>((ci / nbr[a].first) % k) + 1;
          const std::uint64_t lo = ci % low_stride;
          const std::uint64_t hi = ci / low_stride;
          const std::uint64_t base = lo + low_stride * k * hi;
          const Value cv = child[ci];
          for (Time t = 1; t <= k; ++t) {
            Value out = terms[t];
            if (out != kInfinity && cv == kInfinity) out = kInfinity;
            if (out != kInfinity)
              for (size_t a = 0; a < nbr.size(); ++a)
                if (intervals_overlap(t, job.p, nbr_time[a], nbr[a].second)) {
                  out = kInfinity;
                  break;
                }
            if (out != kInfinity) out = obj.sat_combine(terms[t], cv);
            tab[base + low_stride * static_cast<std::uint64_t>(t - 1)] = out;
          }
        }
        break;
      }
      case NiceKind::Forget: {
        const std::vector<Value>& child = val[nd.child0];
        const std::vector<int>& cbag = ntd.nodes[nd.child0].bag;
        const int pos = bag_pos(cbag, nd.vertex);
        const std::uint64_t low_stride = pow_capped(k, pos, child.size());
        std::fill(tab.begin(), tab.end(), kInfinity);
        std::uint32_t* ch = nullptr;
        if (keep_choices) {
          choice[i].assign(size, 0);
          ch = choice[i].data();
        }
        for (std::uint64_t ci = 0; ci < child.size(); ++ci) {
          const std::uint64_t lo = ci % low_stride;
          const std::uint64_t rest = ci / low_stride;
          const Time t = static_cast<Time>(rest % k) + 1;
          const std::uint64_t hi = rest / k;
          const std::uint64_t pi = lo + low_stride * hi;
          if (child[ci] < tab[pi]) {  // strict: smallest time wins ties
            tab[pi] = child[ci];
            if (ch) ch[pi] = static_cast<std::uint32_t>(t);
          }
        }
        break;
      }
      case NiceKind::Join: {
        const std::vector<Value>& a = val[nd.child0];
        const std::vector<Value>& b = val[nd.child1];
        const int bsz = static_cast<int>(nd.bag.size());
        if (obj.max_kind()) {
          for (std::uint64_t idx = 0; idx < size; ++idx)
            tab[idx] = sat_max(a[idx], b[idx]);
        } else {
          // both halves count the bag's own terms; subtract one copy
          std::vector<std::vector<Value>> terms(bsz, std::vector<Value>(k));
          for (int p = 0; p < bsz; ++p)
            for (Time t = 1; t <= k; ++t) terms[p][t - 1] = term_of(nd.bag[p], t);
          for (std::uint64_t idx = 0; idx < size; ++idx) {
            if (a[idx] == kInfinity || b[idx] == kInfinity) {
              tab[idx] = kInfinity;
              continue;
            }
            Value bag_terms = 0;
            std::uint64_t rest = idx;
            for (int p = 0; p < bsz; ++p) {
              bag_terms = checked_add(bag_terms, terms[p][rest % k]);
              rest /= k;
            }
            tab[idx] = sat_sub(sat_add(a[idx], b[idx]), bag_terms);
          }
        }
        break;
      }
    }
  }
};

}  // namespace

SolveResult solve(const Instance& inst, const NiceTreeDecomposition& ntd,
                  Objective obj, Time horizon, const SolverOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  inst.validate();
  SolveResult res;
  res.stats.horizon = horizon;
  res.stats.width = ntd.width();
  auto finish = [&](SolveResult r) {
    r.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };

  if (inst.n() == 0) {
    res.status = SolveStatus::Optimal;
    res.value = 0;
    res.schedule = Schedule(0);
    return finish(res);
  }
  if (horizon < 1) {
    res.status = SolveStatus::Infeasible;
    return finish(res);
  }
  const int m = static_cast<int>(ntd.nodes.size());
  if (m == 0 || ntd.root < 0) throw InputError("solve: empty nice decomposition");

  // predicted table volume, refused before any allocation
  std::uint64_t predicted = 0;
  for (int i = 0; i < m; ++i) {
    std::uint64_t sz = pow_capped(static_cast<std::uint64_t>(horizon),
                                  static_cast<int>(ntd.nodes[i].bag.size()),
                                  opts.max_table_entries);
    if (sz == kEntriesOverBudget || predicted > opts.max_table_entries - sz) {
      res.stats.predicted_entries = kEntriesOverBudget;
      res.status = SolveStatus::ResourceLimit;
      return finish(res);
    }
    predicted += sz;
  }
  res.stats.predicted_entries = predicted;

  Tables tables{inst, ntd, obj, horizon, {}, {}, !opts.value_only};
  tables.val.resize(m);
  tables.choice.resize(m);

  // children precede parents by construction, so node levels give a schedule
  // for optional parallel computation
  std::vector<int> level(m, 0);
  int max_level = 0;
  std::vector<int> parent(m, -1);
  for (int i = 0; i < m; ++i) {
    const NiceNode& nd = ntd.nodes[i];
    if (nd.child0 >= 0) {
      level[i] = std::max(level[i], level[nd.child0] + 1);
      parent[nd.child0] = i;
    }
    if (nd.child1 >= 0) {
      level[i] = std::max(level[i], level[nd.child1] + 1);
      parent[nd.child1] = i;
    }
    max_level = std::max(max_level, level[i]);
  }
  std::vector<std::vector<int>> by_level(max_level + 1);
  for (int i = 0; i < m; ++i) by_level[level[i]].push_back(i);

  std::uint64_t live = 0, peak = 0, allocated = 0;
  const int nthreads = std::max(1, opts.threads);
  for (int lv = 0; lv <= max_level; ++lv) {
    const std::vector<int>& group = by_level[lv];
    if (nthreads == 1 || group.size() == 1) {
      for (int i : group) tables.compute(i);
    } else {
      std::vector<std::thread> workers;
      std::exception_ptr err;
      std::mutex err_mu;
      std::atomic<size_t> next{0};
      for (int w = 0; w < std::min(nthreads, static_cast<int>(group.size())); ++w)
        workers.emplace_back([&]() {
          for (;;) {
            size_t at = next.fetch_add(1);
            if (at >= group.size()) break;
            try {
              tables.compute(group[at]);
            } catch (...) {
              std::lock_guard<std::mutex> lock(err_mu);
              if (!err) err = std::current_exception();
              break;
            }
          }
        });
      for (auto& t : workers) t.join();
      if (err) std::rethrow_exception(err);
    }
    for (int i : group) {
      allocated += tables.val[i].size();
      live += tables.val[i].size();
    }
    peak = std::max(peak, live);
    if (opts.value_only)
      for (int i : group) {
        if (ntd.nodes[i].child0 >= 0) {
          live -= tables.val[ntd.nodes[i].child0].size();
          tables.val[ntd.nodes[i].child0] = {};
        }
        if (ntd.nodes[i].child1 >= 0) {
          live -= tables.val[ntd.nodes[i].child1].size();
          tables.val[ntd.nodes[i].child1] = {};
        }
      }
  }
  res.stats.entries_allocated = allocated;
  res.stats.peak_live_entries = peak;

  const Value opt = tables.val[ntd.root][0];
  if (opt == kInfinity) {
    res.status = SolveStatus::Infeasible;
    return finish(res);
  }
  res.status = SolveStatus::Optimal;
  res.value = opt;
  if (opts.value_only) return finish(res);

  // top-down walk: forget nodes reveal their chosen time, introduces restrict
  Schedule sched(inst.n());
  std::vector<std::pair<int, std::uint64_t>> stack = {{ntd.root, 0}};
  while (!stack.empty()) {
    auto [i, idx] = stack.back();
    stack.pop_back();
    const NiceNode& nd = ntd.nodes[i];
    switch (nd.kind) {
      case NiceKind::Leaf:
        break;
      case NiceKind::Introduce: {
        const int pos = Tables::bag_pos(nd.bag, nd.vertex);
        const std::uint64_t stride = pow_capped(horizon, pos, tables.val[i].size());
        const std::uint64_t lo = idx % stride;
        const std::uint64_t hi = idx / (stride * horizon);
        stack.emplace_back(nd.child0, lo + stride * hi);
        break;
      }
      case NiceKind::Forget: {
        const Time t = static_cast<Time>(tables.choice[i][idx]);
        if (t == 0) throw std::logic_error("solve: reconstruction hit an infeasible entry");
        sched.set(nd.vertex, t);
        const std::vector<int>& cbag = ntd.nodes[nd.child0].bag;
        const int pos = Tables::bag_pos(cbag, nd.vertex);
        const std::uint64_t stride = pow_capped(horizon, pos, tables.val[nd.child0].size());
        const std::uint64_t lo = idx % stride;
        const std::uint64_t hi = idx / stride;
        stack.emplace_back(nd.child0,
                           lo + stride * (static_cast<std::uint64_t>(t - 1) + horizon * hi));
        break;
      }
      case NiceKind::Join:
        stack.emplace_back(nd.child0, idx);
        stack.emplace_back(nd.child1, idx);
        break;
    }
  }
  if (!sched.complete())
    throw std::logic_error("solve: reconstruction left a job unscheduled");
  res.schedule = std::move(sched);
  return finish(res);
}

ReleaseCmaxResult solve_release_cmax(const Instance& inst, const NiceTreeDecomposition& ntd,
                                     Time k, const SolverOptions& opts) {
  inst.validate();
  if (!inst.all_unit())
    throw InputError("solve_release_cmax: requires unit processing times");
  ReleaseCmaxResult out;
  if (inst.max_release_plus_p() > k) {
    // some job cannot complete by k at all
    out.status = SolveStatus::Optimal;
    out.yes = false;
    return out;
  }

  Instance rev = inst;
  for (Job& j : rev.jobs) {
    j.d = k - j.r;
    j.r = 0;
  }
  SolveResult sub = solve(rev, ntd, Objective(ObjectiveKind::Lmax), k, opts);
  out.stats = sub.stats;
  if (sub.status == SolveStatus::ResourceLimit) {
    out.status = SolveStatus::ResourceLimit;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.yes = sub.status == SolveStatus::Optimal && sub.value <= 0;
  if (out.yes && !opts.value_only) {
    Schedule mapped(inst.n());
    for (int j = 0; j < inst.n(); ++j) mapped.set(j, k - sub.schedule.at(j) + 1);
    if (!check_feasible(inst, mapped).feasible)
      throw std::logic_error("solve_release_cmax: mapped schedule is infeasible");
    out.schedule = std::move(mapped);
  }
  return out;
}

OptimizeResult optimize(const Instance& inst, Objective obj, const OptimizeOptions& opts) {
  inst.validate();
  OptimizeResult out;
  if (inst.n() == 0) {
    out.result.status = SolveStatus::Optimal;
    out.result.value = 0;
    out.result.schedule = Schedule(0);
    return out;
  }

  TreeDecomposition td;
  if (opts.decomposition) {
    DecompositionValidation v = validate(*opts.decomposition, inst.graph);
    if (!v.ok) throw InputError("optimize: invalid decomposition: " + v.message);
    td = *opts.decomposition;
  } else {
    td = heuristic_decompose(inst.graph, opts.strategy);
  }
  out.width = td.width();
  out.td_height = opts.td_ub ? *opts.td_ub : treedepth_upper_bound(td, inst.graph).height;
  NiceTreeDecomposition ntd = to_nice(td);

  const bool release_cmax = obj.kind == ObjectiveKind::Cmax && inst.all_unit() &&
                            !inst.all_zero_release();
  if (!release_cmax) {
    out.bound = horizon(inst, out.width, out.td_height, opts.horizon_floor);
    out.result = solve(inst, ntd, obj, out.bound.value, opts.solver);
    return out;
  }

  // smallest k admitting makespan <= k, via the time-reversal decision
  out.release_reversal = true;
  out.bound = horizon(inst, out.width, out.td_height, opts.horizon_floor);
  Time lo = inst.max_release_plus_p();
  Time hi = out.bound.value;
  auto probe = [&](Time k) { return solve_release_cmax(inst, ntd, k, opts.solver); };

  ReleaseCmaxResult top = probe(hi);
  if (top.status == SolveStatus::ResourceLimit) {
    out.result.status = SolveStatus::ResourceLimit;
    out.result.stats = top.stats;
    return out;
  }
  if (!top.yes) {
    // the computed bound was not safe for this instance; fall back to the
    // universally safe unit bound r_max + n
    out.horizon_escalated = true;
    hi = checked_add(inst.max_release(), inst.n());
    top = probe(hi);
    if (top.status == SolveStatus::ResourceLimit) {
      out.result.status = SolveStatus::ResourceLimit;
      out.result.stats = top.stats;
      return out;
    }
    if (!top.yes)
      throw std::logic_error("optimize: no feasible unit schedule within r_max + n");
  }
  Time best_k = hi;
  ReleaseCmaxResult best = std::move(top);
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    ReleaseCmaxResult r = probe(mid);
    if (r.status == SolveStatus::ResourceLimit) {
      out.result.status = SolveStatus::ResourceLimit;
      out.result.stats = r.stats;
      return out;
    }
    if (r.yes) {
      hi = mid;
      best_k = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  out.result.status = SolveStatus::Optimal;
  out.result.value = best_k;
  out.result.schedule = std::move(best.schedule);
  out.result.stats = best.stats;
  return out;
}

}  // namespace csched
