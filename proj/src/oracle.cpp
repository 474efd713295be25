#include "csched/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace csched {

namespace {

struct BruteState {
  const Instance& inst;
  Objective obj;
  Time horizon;
  std::uint64_t max_states;
  std::uint64_t states = 0;

  BruteState(const Instance& i, Objective o, Time h, std::uint64_t m)
      : inst(i), obj(o), horizon(h), max_states(m) {}

  std::vector<int> order;        // branch order (EDD, then id)
  std::vector<Value> min_term;   // per job: term at its earliest completion
  std::vector<Value> suffix_lb;  // combined min terms of order[i..]
  std::vector<Time> times;       // by job id; 0 = unassigned
  bool found = false;
  Value best = kInfinity;
  std::vector<Time> best_times;

  void bump() {
    if (++states > max_states)
      throw ResourceError("oracle: search budget exceeded");
  }

  bool placement_ok(int j, Time t) const {
    const Job& job = inst.jobs[j];
    if (t < job.r + job.p || t > horizon) return false;
    for (int u : inst.graph.neighbors(j)) {
      if (times[u] == 0) continue;
      if (intervals_overlap(t, job.p, times[u], inst.jobs[u].p)) return false;
    }
    return true;
  }

  void dfs(size_t idx, Value partial, bool have_partial) {
    // lower bound over the remaining jobs; prune ties so the first-found
    // optimum is the one reported
    if (found) {
      Value lb = suffix_lb[idx];
      if (have_partial)
        lb = (idx < order.size()) ? obj.combine(partial, lb) : partial;
      if (lb >= best) return;
    }
    if (idx == order.size()) {
      best = partial;
      best_times = times;
      found = true;
      return;
    }
    const int j = order[idx];
    const Job& job = inst.jobs[j];
    for (Time t = job.r + job.p; t <= horizon; ++t) {
      bump();
      if (!placement_ok(j, t)) continue;
      Value term = obj.term(job, t);
      Value next = have_partial ? obj.combine(partial, term) : term;
      times[j] = t;
      dfs(idx + 1, next, true);
      times[j] = 0;
    }
  }
};

}  // namespace

OracleResult brute_force(const Instance& inst, Objective obj, Time horizon,
                         const SearchBudget& budget) {
  inst.validate();
  if (inst.n() == 0) return {true, 0, Schedule(0), 0};

  BruteState st(inst, obj, horizon, budget.max_states);
  st.order.resize(inst.n());
  std::iota(st.order.begin(), st.order.end(), 0);
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](int a, int b) { return inst.jobs[a].d < inst.jobs[b].d; });
  st.min_term.resize(inst.n());
  for (int j = 0; j < inst.n(); ++j)
    st.min_term[j] = obj.term(inst.jobs[j], inst.jobs[j].r + inst.jobs[j].p);
  st.suffix_lb.assign(inst.n() + 1, obj.max_kind() ? std::numeric_limits<Value>::min() : 0);
  for (int i = inst.n() - 1; i >= 0; --i)
    st.suffix_lb[i] = (i == inst.n() - 1)
                          ? st.min_term[st.order[i]]
                          : obj.combine(st.suffix_lb[i + 1], st.min_term[st.order[i]]);
  st.times.assign(inst.n(), 0);
  st.dfs(0, 0, false);

  OracleResult res;
  res.states = st.states;
  if (!st.found) return res;
  res.feasible = true;
  res.value = st.best;
  res.schedule = Schedule(st.best_times);
  return res;
}

bool is_minimal_schedule(const Instance& inst, const Schedule& s) {
  if (!check_feasible(inst, s).feasible) return false;
  for (int j = 0; j < inst.n(); ++j) {
    const Job& job = inst.jobs[j];
    for (Time t = job.r + job.p; t < s.at(j); ++t) {
      bool blocked = false;
      for (int u : inst.graph.neighbors(j))
        if (intervals_overlap(t, job.p, s.at(u), inst.jobs[u].p)) {
          blocked = true;
          break;
        }
      if (!blocked) return false;  // this completion could move earlier
    }
  }
  return true;
}

namespace {

struct EnumState {
  const Instance& inst;
  Time horizon;
  std::uint64_t max_states;
  std::uint64_t states = 0;
  Schedule current;
  std::vector<bool> neighbors_all_lower;  // all neighbors assigned before job id
  std::vector<Schedule> out;

  void bump() {
    if (++states > max_states)
      throw ResourceError("oracle: enumeration budget exceeded");
  }

  void dfs(int j) {
    if (j == inst.n()) {
      if (is_minimal_schedule(inst, current)) out.push_back(current);
      return;
    }
    const Job& job = inst.jobs[j];
    for (Time t = job.r + job.p; t <= horizon; ++t) {
      bump();
      bool clash = false;
      for (int u : inst.graph.neighbors(j)) {
        if (u >= j) continue;
        if (intervals_overlap(t, job.p, current.at(u), inst.jobs[u].p)) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      if (neighbors_all_lower[j]) {
        // every neighbor is fixed, so minimality of this job is decided now:
        // the one-step-earlier completion must be out of range or blocked
        bool blocked = t - 1 < job.r + job.p;
        if (!blocked)
          for (int u : inst.graph.neighbors(j))
            if (intervals_overlap(t - 1, job.p, current.at(u), inst.jobs[u].p)) {
              blocked = true;
              break;
            }
        if (!blocked) continue;
      }
      current.set(j, t);
      dfs(j + 1);
      current.unset(j);
    }
  }
};

}  // namespace

std::vector<Schedule> enumerate_minimal_schedules(const Instance& inst, Time horizon,
                                                  const SearchBudget& budget) {
  inst.validate();
  if (inst.n() == 0) return {Schedule(0)};
  EnumState st{inst, horizon, budget.max_states, 0, Schedule(inst.n()), {}, {}};
  st.neighbors_all_lower.resize(inst.n());
  for (int j = 0; j < inst.n(); ++j) {
    bool all_lower = true;
    for (int u : inst.graph.neighbors(j)) all_lower = all_lower && u < j;
    st.neighbors_all_lower[j] = all_lower;
  }
  st.dfs(0);
  return std::move(st.out);
}

}  // namespace csched
