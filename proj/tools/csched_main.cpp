// Command-line front end: solve / check / bound / decompose / reduce /
// generate / verify / oracle. All structured output is JSON with a
// schema_version field; timings are opt-in so repeated runs are byte-stable.
//
// Exit codes: 0 success (or decision "yes"), 1 decision "no" / infeasible /
// disagreement, 2 input error, 3 resource budget exhausted.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csched/bounds.hpp"
#include "csched/core.hpp"
#include "csched/decomp.hpp"
#include "csched/oracle.hpp"
#include "csched/reductions.hpp"
#include "csched/solver.hpp"

namespace {

using nlohmann::json;
using namespace csched;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open " + out_path + " for writing");
  out << text;
}

json schedule_json(const Schedule& s) {
  json completion = json::object();
  for (int j = 0; j < s.size(); ++j)
    if (s.assigned(j)) completion[std::to_string(j)] = s.at(j);
  return json{{"completion", std::move(completion)}};
}

const char* status_name(SolveStatus st) {
  switch (st) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::ResourceLimit: return "resource_limit";
  }
  return "?";
}

const char* gadget_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::Cmax: return "cmax";
    case GadgetKind::SumC: return "sum_c";
    case GadgetKind::ReleaseLmax: return "release_lmax";
    case GadgetKind::ReleaseWCmax: return "release_wcmax";
    case GadgetKind::ReleaseSumC: return "release_sum_c";
  }
  return "?";
}

// Deterministic across platforms: draw from the standardized mt19937 stream
// directly instead of going through distribution objects.
struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(gen() % static_cast<std::uint32_t>(hi - lo + 1));
  }
  bool chance(double p) { return gen() < p * 4294967296.0; }
};

Instance random_instance(std::uint32_t seed, int n, double edge_prob, bool unit,
                         Time max_p, Time max_r, Time max_d, Value max_w) {
  if (n < 0) throw InputError("generate: n must be >= 0");
  if (max_p < 1 || max_w < 1) throw InputError("generate: max-p and max-w must be >= 1");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(edge_prob)) edges.emplace_back(u, v);
  Instance inst;
  inst.graph = ConflictGraph(n, std::move(edges));
  inst.jobs.resize(n);
  for (int j = 0; j < n; ++j) {
    inst.jobs[j].id = j;
    inst.jobs[j].p = unit ? 1 : rng.range(1, max_p);
    inst.jobs[j].r = max_r > 0 ? rng.range(0, max_r) : 0;
    inst.jobs[j].d = max_d > 0 ? rng.range(0, max_d) : 0;
    inst.jobs[j].w = rng.range(1, max_w);
  }
  inst.validate();
  return inst;
}

struct Cli {
  std::string in_path, out_path, sched_path, td_path, td_out;
  std::string objective = "cmax", check_objective, strategy = "min-degree";
  std::string gadget, mode = "paper", family = "random";
  std::optional<Time> horizon_floor;
  std::optional<int> td_ub;
  std::optional<Time> x_override;
  int threads = 1;
  std::uint64_t max_entries = 50'000'000;
  std::uint64_t max_states = 100'000'000;
  bool value_only = false, timings = false, dec_json = false, gen_unit = false;
  int depth = 3, gen_n = 6;
  Value weight = -1;
  std::uint32_t seed = 1;
  double edge_prob = 0.4;
  Time gmax_p = 3, gmax_r = 2, gmax_d = 6;
  Value gmax_w = 3;
};

ReductionOutput run_gadget(const PrecoloringInstance& pce, const Cli& cli) {
  GadgetMode mode;
  if (cli.mode == "paper")
    mode = GadgetMode::Paper;
  else if (cli.mode == "strict")
    mode = GadgetMode::Strict;
  else
    throw InputError("unknown mode '" + cli.mode + "' (paper|strict)");
  if (cli.gadget == "cmax") return pce_to_cmax(pce);
  if (cli.gadget == "sum_c") return pce_to_sumcj(pce, cli.x_override);
  if (cli.gadget == "release_lmax") return pce_to_release_lmax(pce, mode);
  if (cli.gadget == "release_wcmax") return pce_to_release_wcmax(pce, mode);
  if (cli.gadget == "release_sum_c") return pce_to_release_sumcj(pce, cli.x_override);
  throw InputError("unknown gadget '" + cli.gadget +
                   "' (cmax|sum_c|release_lmax|release_wcmax|release_sum_c)");
}

int run_solve(const Cli& cli) {
  Instance inst = parse_instance_json(read_input(cli.in_path));
  OptimizeOptions opts;
  opts.strategy = parse_strategy(cli.strategy);
  if (!cli.td_path.empty())
    opts.decomposition = parse_td_text(read_input(cli.td_path), inst.n());
  opts.horizon_floor = cli.horizon_floor;
  opts.td_ub = cli.td_ub;
  opts.solver.threads = cli.threads;
  opts.solver.max_table_entries = cli.max_entries;
  opts.solver.value_only = cli.value_only;
  OptimizeResult res = optimize(inst, parse_objective(cli.objective), opts);

  json doc;
  doc["schema_version"] = 1;
  doc["objective"] = parse_objective(cli.objective).name();
  doc["status"] = status_name(res.result.status);
  if (res.result.status == SolveStatus::Optimal) {
    doc["value"] = res.result.value;
    if (!cli.value_only) doc["schedule"] = schedule_json(res.result.schedule);
  }
  doc["horizon"] = {{"value", res.bound.value}, {"rule", res.bound.describe()}};
  doc["width"] = res.width;
  doc["td_height"] = res.td_height;
  doc["release_reversal"] = res.release_reversal;
  doc["horizon_escalated"] = res.horizon_escalated;
  doc["stats"] = {{"predicted_entries", res.result.stats.predicted_entries},
                  {"entries_allocated", res.result.stats.entries_allocated},
                  {"peak_live_entries", res.result.stats.peak_live_entries}};
  if (cli.timings) doc["wall_seconds"] = res.result.stats.wall_seconds;
  write_output(cli.out_path, doc.dump(2) + "\n");
  switch (res.result.status) {
    case SolveStatus::Optimal: return 0;
    case SolveStatus::Infeasible: return 1;
    case SolveStatus::ResourceLimit: return 3;
  }
  return 4;
}

int run_check(const Cli& cli) {
  Instance inst = parse_instance_json(read_input(cli.in_path));
  Schedule s = parse_schedule_json(read_input(cli.sched_path), inst.n());
  FeasibilityReport rep = check_feasible(inst, s);
  json doc;
  doc["schema_version"] = 1;
  doc["feasible"] = rep.feasible;
  json viol = json::array();
  for (const Violation& v : rep.violations) {
    json one;
    one["kind"] = v.kind == Violation::Kind::Release ? "release" : "overlap";
    one["job_a"] = v.job_a;
    if (v.job_b >= 0) one["job_b"] = v.job_b;
    one["message"] = v.message;
    viol.push_back(std::move(one));
  }
  doc["violations"] = std::move(viol);
  if (!cli.check_objective.empty() && rep.feasible) {
    Objective obj = parse_objective(cli.check_objective);
    doc["objective"] = obj.name();
    doc["value"] = evaluate(inst, s, obj);
  }
  write_output(cli.out_path, doc.dump(2) + "\n");
  return rep.feasible ? 0 : 1;
}

int run_bound(const Cli& cli) {
  Instance inst = parse_instance_json(read_input(cli.in_path));
  TreeDecomposition td;
  if (!cli.td_path.empty()) {
    td = parse_td_text(read_input(cli.td_path), inst.n());
    DecompositionValidation v = validate(td, inst.graph);
    if (!v.ok) throw InputError("invalid decomposition: " + v.message);
  } else {
    td = heuristic_decompose(inst.graph, parse_strategy(cli.strategy));
  }
  EliminationTree et = treedepth_upper_bound(td, inst.graph);
  HorizonBound hb = horizon(inst, td.width(), et.height, cli.horizon_floor);
  json doc;
  doc["schema_version"] = 1;
  doc["width"] = td.width();
  doc["td_height"] = et.height;
  doc["horizon"] = {{"value", hb.value}, {"rule", hb.describe()}};
  write_output(cli.out_path, doc.dump(2) + "\n");
  return 0;
}

int run_decompose(const Cli& cli) {
  Instance inst = parse_instance_json(read_input(cli.in_path));
  TreeDecomposition td = heuristic_decompose(inst.graph, parse_strategy(cli.strategy));
  if (cli.dec_json) {
    json doc;
    doc["schema_version"] = 1;
    doc["width"] = td.width();
    doc["bags"] = td.bags;
    json edges = json::array();
    for (auto [a, b] : td.edges) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    write_output(cli.out_path, doc.dump(2) + "\n");
  } else {
    write_output(cli.out_path, format_td(td, inst.graph.n()));
  }
  return 0;
}

int run_reduce(const Cli& cli) {
  PrecoloringInstance pce = parse_pce_json(read_input(cli.in_path));
  ReductionOutput out = run_gadget(pce, cli);
  json doc;
  doc["schema_version"] = 1;
  doc["gadget"] = gadget_name(out.kind);
  if (out.kind == GadgetKind::ReleaseLmax || out.kind == GadgetKind::ReleaseWCmax)
    doc["mode"] = out.mode == GadgetMode::Paper ? "paper" : "strict";
  doc["objective"] = out.objective.name();
  doc["threshold"] = out.threshold;
  doc["decision_horizon"] = out.decision_horizon;
  if (out.x > 0) doc["x"] = out.x;
  doc["original_n"] = out.h_n;
  doc["k"] = out.k;
  doc["instance"] = json::parse(format_instance_json(out.instance));
  json prov = json::array();
  for (const JobProvenance& p : out.provenance) {
    json one;
    one["job"] = p.job;
    one["role"] = role_name(p.role);
    if (p.source >= 0) one["source"] = p.source;
    if (p.index1 >= 0) one["i"] = p.index1;
    if (p.index2 >= 0) one["i0"] = p.index2;
    prov.push_back(std::move(one));
  }
  doc["provenance"] = std::move(prov);
  write_output(cli.out_path, doc.dump(2) + "\n");
  if (!cli.td_out.empty()) {
    TreeDecomposition td_h = heuristic_decompose(pce.h, parse_strategy(cli.strategy));
    TreeDecomposition td_g = extend_decomposition(out, td_h);
    write_output(cli.td_out, format_td(td_g, out.instance.n()));
  }
  return 0;
}

int run_generate(const Cli& cli) {
  Instance inst;
  if (cli.family == "wcmax_tree") {
    inst = gen_wcmax_tree(cli.depth, cli.weight < 0 ? cli.depth : cli.weight);
  } else if (cli.family == "lmax_tree") {
    inst = gen_lmax_tree(cli.depth);
  } else if (cli.family == "random") {
    inst = random_instance(cli.seed, cli.gen_n, cli.edge_prob, cli.gen_unit, cli.gmax_p,
                           cli.gmax_r, cli.gmax_d, cli.gmax_w);
  } else {
    throw InputError("unknown family '" + cli.family + "' (wcmax_tree|lmax_tree|random)");
  }
  write_output(cli.out_path, format_instance_json(inst));
  return 0;
}

int run_verify(const Cli& cli) {
  PrecoloringInstance pce = parse_pce_json(read_input(cli.in_path));
  ReductionOutput out = run_gadget(pce, cli);
  VerifyOptions opts;
  opts.pce_budget.max_states = cli.max_states;
  opts.solver.max_table_entries = cli.max_entries;
  opts.strategy = parse_strategy(cli.strategy);
  VerifyReport rep = verify_reduction(pce, out, opts);
  json doc;
  doc["schema_version"] = 1;
  doc["gadget"] = gadget_name(out.kind);
  if (out.kind == GadgetKind::ReleaseLmax || out.kind == GadgetKind::ReleaseWCmax)
    doc["mode"] = out.mode == GadgetMode::Paper ? "paper" : "strict";
  doc["decided"] = rep.decided;
  doc["extension_yes"] = rep.pce_yes;
  doc["schedule_yes"] = rep.sched_yes;
  doc["agree"] = rep.agree;
  doc["witness_checked"] = rep.witness_checked;
  doc["witness_maps_back"] = rep.witness_maps_back;
  doc["threshold"] = rep.threshold;
  if (rep.sched_value != kInfinity) doc["schedule_value"] = rep.sched_value;
  if (!rep.detail.empty()) doc["detail"] = rep.detail;
  write_output(cli.out_path, doc.dump(2) + "\n");
  if (!rep.decided) return 3;
  return rep.agree ? 0 : 1;
}

int run_oracle(const Cli& cli) {
  Instance inst = parse_instance_json(read_input(cli.in_path));
  Objective obj = parse_objective(cli.objective);
  Time horizon_cap = cli.horizon_floor.value_or(
      checked_add(inst.max_release(), inst.sum_p()));
  SearchBudget budget;
  budget.max_states = cli.max_states;
  OracleResult res = brute_force(inst, obj, horizon_cap, budget);
  json doc;
  doc["schema_version"] = 1;
  doc["objective"] = obj.name();
  doc["feasible"] = res.feasible;
  doc["horizon"] = horizon_cap;
  if (res.feasible) {
    doc["value"] = res.value;
    doc["schedule"] = schedule_json(res.schedule);
  }
  doc["states"] = res.states;
  write_output(cli.out_path, doc.dump(2) + "\n");
  return res.feasible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact scheduling of conflicting jobs on bounded-treewidth graphs"};
  app.require_subcommand(1);
  Cli cli;

  auto* solve_cmd = app.add_subcommand("solve", "minimize an objective exactly");
  solve_cmd->add_option("instance", cli.in_path, "instance JSON file ('-' for stdin)")
      ->required();
  solve_cmd->add_option("--objective", cli.objective,
                        "cmax|lmax|wcmax|wlmax|sum_c|sum_t|sum_wc|sum_wt");
  solve_cmd->add_option("--td", cli.td_path, "tree decomposition (.td) to use");
  solve_cmd->add_option("--strategy", cli.strategy, "min-degree|min-fill");
  solve_cmd->add_option("--horizon", cli.horizon_floor, "lower bound on the search horizon");
  solve_cmd->add_option("--td-ub", cli.td_ub, "override the elimination-tree height bound");
  solve_cmd->add_option("--threads", cli.threads, "worker threads for table computation");
  solve_cmd->add_option("--max-table-entries", cli.max_entries, "refuse larger DP tables");
  solve_cmd->add_flag("--value-only", cli.value_only, "skip schedule reconstruction");
  solve_cmd->add_flag("--timings", cli.timings, "include wall-clock time in the output");
  solve_cmd->add_option("-o,--output", cli.out_path, "write the result here");

  auto* check_cmd = app.add_subcommand("check", "verify a schedule against an instance");
  check_cmd->add_option("instance", cli.in_path, "instance JSON file")->required();
  check_cmd->add_option("schedule", cli.sched_path, "schedule JSON file")->required();
  check_cmd->add_option("--objective", cli.check_objective, "also evaluate this objective");
  check_cmd->add_option("-o,--output", cli.out_path, "write the result here");

  auto* bound_cmd = app.add_subcommand("bound", "report width, depth and horizon bounds");
  bound_cmd->add_option("instance", cli.in_path, "instance JSON file")->required();
  bound_cmd->add_option("--td", cli.td_path, "tree decomposition (.td) to use");
  bound_cmd->add_option("--strategy", cli.strategy, "min-degree|min-fill");
  bound_cmd->add_option("--horizon", cli.horizon_floor, "lower bound on the search horizon");
  bound_cmd->add_option("-o,--output", cli.out_path, "write the result here");

  auto* dec_cmd = app.add_subcommand("decompose", "heuristic tree decomposition");
  dec_cmd->add_option("instance", cli.in_path, "instance JSON file")->required();
  dec_cmd->add_option("--strategy", cli.strategy, "min-degree|min-fill");
  dec_cmd->add_flag("--json", cli.dec_json, "emit JSON instead of the .td format");
  dec_cmd->add_option("-o,--output", cli.out_path, "write the decomposition here");

  auto* red_cmd = app.add_subcommand("reduce", "precoloring extension -> scheduling");
  red_cmd->add_option("pce", cli.in_path, "precoloring JSON file")->required();
  red_cmd
      ->add_option("--gadget", cli.gadget,
                   "cmax|sum_c|release_lmax|release_wcmax|release_sum_c")
      ->required();
  red_cmd->add_option("--mode", cli.mode, "paper|strict (release gadgets)");
  red_cmd->add_option("--x-override", cli.x_override, "block length for the sum gadgets");
  red_cmd->add_option("--strategy", cli.strategy, "decomposition strategy for --td-out");
  red_cmd->add_option("--td-out", cli.td_out, "also write an extended decomposition (.td)");
  red_cmd->add_option("-o,--output", cli.out_path, "write the reduction here");

  auto* gen_cmd = app.add_subcommand("generate", "instance families");
  gen_cmd->add_option("--family", cli.family, "wcmax_tree|lmax_tree|random");
  gen_cmd->add_option("--depth", cli.depth, "tree family depth parameter");
  gen_cmd->add_option("--weight", cli.weight, "root weight for wcmax_tree (default: depth)");
  gen_cmd->add_option("--seed", cli.seed, "random family seed");
  gen_cmd->add_option("--n", cli.gen_n, "random family size");
  gen_cmd->add_option("--edge-prob", cli.edge_prob, "random family edge probability");
  gen_cmd->add_flag("--unit", cli.gen_unit, "random family: unit processing times");
  gen_cmd->add_option("--max-p", cli.gmax_p, "random family processing-time cap");
  gen_cmd->add_option("--max-r", cli.gmax_r, "random family release-date cap");
  gen_cmd->add_option("--max-d", cli.gmax_d, "random family due-date cap");
  gen_cmd->add_option("--max-w", cli.gmax_w, "random family weight cap");
  gen_cmd->add_option("-o,--output", cli.out_path, "write the instance here");

  auto* ver_cmd = app.add_subcommand("verify", "run a reduction end to end");
  ver_cmd->add_option("pce", cli.in_path, "precoloring JSON file")->required();
  ver_cmd
      ->add_option("--gadget", cli.gadget,
                   "cmax|sum_c|release_lmax|release_wcmax|release_sum_c")
      ->required();
  ver_cmd->add_option("--mode", cli.mode, "paper|strict (release gadgets)");
  ver_cmd->add_option("--x-override", cli.x_override, "block length for the sum gadgets");
  ver_cmd->add_option("--strategy", cli.strategy, "min-degree|min-fill");
  ver_cmd->add_option("--max-states", cli.max_states, "extension search budget");
  ver_cmd->add_option("--max-table-entries", cli.max_entries, "refuse larger DP tables");
  ver_cmd->add_option("-o,--output", cli.out_path, "write the report here");

  auto* ora_cmd = app.add_subcommand("oracle", "exhaustive reference optimization");
  ora_cmd->add_option("instance", cli.in_path, "instance JSON file")->required();
  ora_cmd->add_option("--objective", cli.objective,
                      "cmax|lmax|wcmax|wlmax|sum_c|sum_t|sum_wc|sum_wt");
  ora_cmd->add_option("--horizon", cli.horizon_floor,
                      "completion-time cap (default: safe bound)");
  ora_cmd->add_option("--max-states", cli.max_states, "search budget");
  ora_cmd->add_option("-o,--output", cli.out_path, "write the result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(solve_cmd)) return run_solve(cli);
    if (app.got_subcommand(check_cmd)) return run_check(cli);
    if (app.got_subcommand(bound_cmd)) return run_bound(cli);
    if (app.got_subcommand(dec_cmd)) return run_decompose(cli);
    if (app.got_subcommand(red_cmd)) return run_reduce(cli);
    if (app.got_subcommand(gen_cmd)) return run_generate(cli);
    if (app.got_subcommand(ver_cmd)) return run_verify(cli);
    if (app.got_subcommand(ora_cmd)) return run_oracle(cli);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "input error: arithmetic overflow: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
