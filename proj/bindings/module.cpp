// Python bindings for the scheduling toolkit: instances, decompositions,
// solving, exhaustive reference search, and the precoloring reductions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "csched/bounds.hpp"
#include "csched/core.hpp"
#include "csched/decomp.hpp"
#include "csched/oracle.hpp"
#include "csched/reductions.hpp"
#include "csched/solver.hpp"

namespace py = pybind11;
using namespace csched;

namespace {

const char* status_name(SolveStatus st) {
  switch (st) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::ResourceLimit: return "resource_limit";
  }
  return "?";
}

py::list schedule_list(const Schedule& s) {
  py::list out;
  for (int j = 0; j < s.size(); ++j) out.append(s.at(j));
  return out;
}

ReductionOutput make_gadget(const PrecoloringInstance& pce, const std::string& gadget,
                            const std::string& mode_name, std::optional<Time> x_override) {
  GadgetMode mode;
  if (mode_name == "paper")
    mode = GadgetMode::Paper;
  else if (mode_name == "strict")
    mode = GadgetMode::Strict;
  else
    throw InputError("unknown mode '" + mode_name + "' (paper|strict)");
  if (gadget == "cmax") return pce_to_cmax(pce);
  if (gadget == "sum_c") return pce_to_sumcj(pce, x_override);
  if (gadget == "release_lmax") return pce_to_release_lmax(pce, mode);
  if (gadget == "release_wcmax") return pce_to_release_wcmax(pce, mode);
  if (gadget == "release_sum_c") return pce_to_release_sumcj(pce, x_override);
  throw InputError("unknown gadget '" + gadget +
                   "' (cmax|sum_c|release_lmax|release_wcmax|release_sum_c)");
}

}  // namespace

PYBIND11_MODULE(csched, m) {
  m.doc() = "exact scheduling of conflicting jobs on bounded-treewidth conflict graphs";
  m.attr("__version__") = "1.0.0";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<Job>(m, "Job")
      .def(py::init([](int id, Time p, Time r, Time d, Value w) {
             return Job{id, p, r, d, w};
           }),
           py::arg("id"), py::arg("p") = 1, py::arg("r") = 0, py::arg("d") = 0,
           py::arg("w") = 1)
      .def_readwrite("id", &Job::id)
      .def_readwrite("p", &Job::p)
      .def_readwrite("r", &Job::r)
      .def_readwrite("d", &Job::d)
      .def_readwrite("w", &Job::w)
      .def("__repr__", [](const Job& j) {
        return "Job(id=" + std::to_string(j.id) + ", p=" + std::to_string(j.p) +
               ", r=" + std::to_string(j.r) + ", d=" + std::to_string(j.d) +
               ", w=" + std::to_string(j.w) + ")";
      });

  py::class_<ConflictGraph>(m, "ConflictGraph")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
           py::arg("edges"))
      .def_property_readonly("n", &ConflictGraph::n)
      .def_property_readonly("edges",
                             [](const ConflictGraph& g) { return g.edges(); })
      .def("neighbors", &ConflictGraph::neighbors, py::arg("v"))
      .def("degree", &ConflictGraph::degree, py::arg("v"))
      .def("adjacent", &ConflictGraph::adjacent, py::arg("u"), py::arg("v"));

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::vector<Job> jobs, const ConflictGraph& graph) {
             Instance inst;
             inst.jobs = std::move(jobs);
             inst.graph = graph;
             inst.validate();
             return inst;
           }),
           py::arg("jobs"), py::arg("graph"))
      .def_static("from_json", &parse_instance_json, py::arg("text"))
      .def("to_json", &format_instance_json)
      .def_property_readonly("n", &Instance::n)
      .def_readwrite("jobs", &Instance::jobs)
      .def_readwrite("graph", &Instance::graph)
      .def("validate", &Instance::validate);

  py::class_<TreeDecomposition>(m, "TreeDecomposition")
      .def(py::init<>())
      .def_readwrite("bags", &TreeDecomposition::bags)
      .def_readwrite("edges", &TreeDecomposition::edges)
      .def_property_readonly("width", &TreeDecomposition::width)
      .def("to_td", &format_td, py::arg("n"))
      .def_static("from_td",
                  [](const std::string& text, int expected_n) {
                    return parse_td_text(text, expected_n);
                  },
                  py::arg("text"), py::arg("expected_n") = -1);

  m.def("decompose",
        [](const Instance& inst, const std::string& strategy) {
          return heuristic_decompose(inst.graph, parse_strategy(strategy));
        },
        py::arg("instance"), py::arg("strategy") = "min-degree");

  m.def("check_feasible",
        [](const Instance& inst, std::vector<Time> completion) {
          FeasibilityReport rep = check_feasible(inst, Schedule(std::move(completion)));
          py::list messages;
          for (const Violation& v : rep.violations) messages.append(v.message);
          py::dict out;
          out["feasible"] = rep.feasible;
          out["violations"] = messages;
          return out;
        },
        py::arg("instance"), py::arg("completion"));

  m.def("evaluate",
        [](const Instance& inst, std::vector<Time> completion, const std::string& objective) {
          return evaluate(inst, Schedule(std::move(completion)), parse_objective(objective));
        },
        py::arg("instance"), py::arg("completion"), py::arg("objective"));

  m.def("horizon",
        [](const Instance& inst, int width, std::optional<int> td_ub,
           std::optional<Time> user_floor) {
          HorizonBound hb = horizon(inst, width, td_ub, user_floor);
          py::dict out;
          out["value"] = hb.value;
          out["rule"] = hb.describe();
          return out;
        },
        py::arg("instance"), py::arg("width"), py::arg("td_ub") = py::none(),
        py::arg("user_floor") = py::none());

  m.def("solve",
        [](const Instance& inst, const std::string& objective,
           std::optional<TreeDecomposition> decomposition, std::optional<Time> horizon_floor,
           const std::string& strategy, int threads, std::uint64_t max_table_entries,
           bool value_only) {
          OptimizeOptions opts;
          opts.strategy = parse_strategy(strategy);
          opts.decomposition = std::move(decomposition);
          opts.horizon_floor = horizon_floor;
          opts.solver.threads = threads;
          opts.solver.max_table_entries = max_table_entries;
          opts.solver.value_only = value_only;
          OptimizeResult res = optimize(inst, parse_objective(objective), opts);
          py::dict out;
          out["status"] = status_name(res.result.status);
          if (res.result.status == SolveStatus::Optimal) {
            out["value"] = res.result.value;
            if (!value_only) out["schedule"] = schedule_list(res.result.schedule);
          }
          out["width"] = res.width;
          out["horizon"] = res.bound.value;
          out["horizon_rule"] = res.bound.describe();
          out["release_reversal"] = res.release_reversal;
          out["entries_allocated"] = res.result.stats.entries_allocated;
          return out;
        },
        py::arg("instance"), py::arg("objective") = "cmax",
        py::arg("decomposition") = py::none(), py::arg("horizon") = py::none(),
        py::arg("strategy") = "min-degree", py::arg("threads") = 1,
        py::arg("max_table_entries") = std::uint64_t{50'000'000},
        py::arg("value_only") = false);

  m.def("brute_force",
        [](const Instance& inst, const std::string& objective, std::optional<Time> horizon_cap,
           std::uint64_t max_states) {
          SearchBudget budget;
          budget.max_states = max_states;
          const Time h =
              horizon_cap.value_or(checked_add(inst.max_release(), inst.sum_p()));
          OracleResult res = brute_force(inst, parse_objective(objective), h, budget);
          py::dict out;
          out["feasible"] = res.feasible;
          if (res.feasible) {
            out["value"] = res.value;
            out["schedule"] = schedule_list(res.schedule);
          }
          out["states"] = res.states;
          return out;
        },
        py::arg("instance"), py::arg("objective") = "cmax", py::arg("horizon") = py::none(),
        py::arg("max_states") = std::uint64_t{100'000'000});

  py::class_<PrecoloringInstance>(m, "PrecoloringInstance")
      .def(py::init([](const ConflictGraph& h, int k, std::vector<int> chi) {
             PrecoloringInstance pce{h, k, std::move(chi)};
             pce.validate();
             return pce;
           }),
           py::arg("graph"), py::arg("k"), py::arg("chi"))
      .def_static("from_json", &parse_pce_json, py::arg("text"))
      .def("to_json", &format_pce_json)
      .def_readwrite("k", &PrecoloringInstance::k)
      .def_readwrite("chi", &PrecoloringInstance::chi)
      .def_property_readonly("graph",
                             [](const PrecoloringInstance& p) { return p.h; });

  m.def("pce_exhaustive",
        [](const PrecoloringInstance& pce, std::uint64_t max_states) {
          SearchBudget budget;
          budget.max_states = max_states;
          PceAnswer ans = pce_exhaustive(pce, budget);
          py::dict out;
          out["yes"] = ans.yes;
          if (ans.yes) out["coloring"] = ans.coloring;
          out["states"] = ans.states;
          return out;
        },
        py::arg("pce"), py::arg("max_states") = std::uint64_t{100'000'000});

  m.def("reduce",
        [](const PrecoloringInstance& pce, const std::string& gadget, const std::string& mode,
           std::optional<Time> x_override) {
          ReductionOutput out = make_gadget(pce, gadget, mode, x_override);
          py::dict d;
          d["objective"] = out.objective.name();
          d["threshold"] = out.threshold;
          d["decision_horizon"] = out.decision_horizon;
          if (out.x > 0) d["x"] = out.x;
          d["instance"] = out.instance;
          return d;
        },
        py::arg("pce"), py::arg("gadget"), py::arg("mode") = "paper",
        py::arg("x_override") = py::none());

  m.def("verify_reduction",
        [](const PrecoloringInstance& pce, const std::string& gadget, const std::string& mode,
           std::optional<Time> x_override, std::uint64_t max_states,
           std::uint64_t max_table_entries) {
          ReductionOutput out = make_gadget(pce, gadget, mode, x_override);
          VerifyOptions opts;
          opts.pce_budget.max_states = max_states;
          opts.solver.max_table_entries = max_table_entries;
          VerifyReport rep = verify_reduction(pce, out, opts);
          py::dict d;
          d["decided"] = rep.decided;
          d["extension_yes"] = rep.pce_yes;
          d["schedule_yes"] = rep.sched_yes;
          d["agree"] = rep.agree;
          d["witness_checked"] = rep.witness_checked;
          d["witness_maps_back"] = rep.witness_maps_back;
          d["threshold"] = rep.threshold;
          if (rep.sched_value != kInfinity) d["schedule_value"] = rep.sched_value;
          if (!rep.detail.empty()) d["detail"] = rep.detail;
          return d;
        },
        py::arg("pce"), py::arg("gadget"), py::arg("mode") = "paper",
        py::arg("x_override") = py::none(),
        py::arg("max_states") = std::uint64_t{100'000'000},
        py::arg("max_table_entries") = std::uint64_t{50'000'000});

  m.def("gen_wcmax_tree", &gen_wcmax_tree, py::arg("depth"), py::arg("weight"));
  m.def("gen_lmax_tree", &gen_lmax_tree, py::arg("depth"));
}
