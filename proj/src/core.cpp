#include "csched/core.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace csched {

using nlohmann::json;

Value checked_add(Value a, Value b) {
  Value out;
  if (__builtin_add_overflow(a, b, &out) || out == kInfinity)
    throw std::overflow_error("value overflow in addition");
  return out;
}

Value checked_mul(Value a, Value b) {
  Value out;
  if (__builtin_mul_overflow(a, b, &out) || out == kInfinity)
    throw std::overflow_error("value overflow in multiplication");
  return out;
}

Value sat_add(Value a, Value b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return checked_add(a, b);
}

Value sat_max(Value a, Value b) {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return std::max(a, b);
}

Value sat_sub(Value a, Value b) {
  if (b == kInfinity) throw std::invalid_argument("sat_sub: infinite subtrahend");
  if (a == kInfinity) return kInfinity;
  Value out;
  if (__builtin_sub_overflow(a, b, &out) || out == kInfinity)
    throw std::overflow_error("value overflow in subtraction");
  return out;
}

ConflictGraph::ConflictGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n) {
  if (n < 0) throw InputError("graph: negative vertex count");
  adj_.assign(n, {});
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InputError("graph: edge endpoint out of range");
    if (u == v) throw InputError("graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InputError("graph: duplicate edge");
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool ConflictGraph::adjacent(int u, int v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool Instance::all_unit() const {
  return std::all_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.p == 1; });
}

bool Instance::all_zero_release() const {
  return std::all_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.r == 0; });
}

Time Instance::max_release() const {
  Time m = 0;
  for (const Job& j : jobs) m = std::max(m, j.r);
  return m;
}

Time Instance::max_release_plus_p() const {
  Time m = 0;
  for (const Job& j : jobs) m = std::max(m, j.r + j.p);
  return m;
}

Time Instance::sum_p() const {
  Value s = 0;
  for (const Job& j : jobs) s = checked_add(s, j.p);
  return s;
}

void Instance::validate() const {
  if (graph.n() != n()) throw InputError("instance: job count differs from graph order");
  for (int i = 0; i < n(); ++i) {
    const Job& j = jobs[i];
    if (j.id != i) throw InputError("instance: job ids must be dense 0..n-1 in order");
    if (j.p < 1) throw InputError("instance: processing time must be >= 1");
    if (j.r < 0) throw InputError("instance: release date must be >= 0");
    if (j.d < 0) throw InputError("instance: due date must be >= 0");
    if (j.w < 0) throw InputError("instance: weight must be >= 0");
  }
}

bool Schedule::complete() const {
  return std::all_of(c_.begin(), c_.end(), [](Time c) { return c != kUnset; });
}

bool Objective::max_kind() const {
  switch (kind) {
    case ObjectiveKind::Cmax:
    case ObjectiveKind::Lmax:
    case ObjectiveKind::WCmax:
    case ObjectiveKind::WLmax:
      return true;
    default:
      return false;
  }
}

bool Objective::weighted() const {
  switch (kind) {
    case ObjectiveKind::WCmax:
    case ObjectiveKind::WLmax:
    case ObjectiveKind::SumWC:
    case ObjectiveKind::SumWT:
      return true;
    default:
      return false;
  }
}

bool Objective::due_based() const {
  switch (kind) {
    case ObjectiveKind::Lmax:
    case ObjectiveKind::WLmax:
    case ObjectiveKind::SumT:
    case ObjectiveKind::SumWT:
      return true;
    default:
      return false;
  }
}

Value Objective::term(const Job& j, Time c) const {
  Value w_eff = weighted() ? j.w : 1;
  Time d_eff = due_based() ? j.d : 0;
  Value lateness = sat_sub(c, d_eff);  // finite; checked
  if (!max_kind() && lateness < 0) lateness = 0;
  return checked_mul(w_eff, lateness);
}

Value Objective::combine(Value a, Value b) const {
  return max_kind() ? std::max(a, b) : checked_add(a, b);
}

Value Objective::sat_combine(Value a, Value b) const {
  return max_kind() ? sat_max(a, b) : sat_add(a, b);
}

std::string Objective::name() const {
  switch (kind) {
    case ObjectiveKind::Cmax: return "cmax";
    case ObjectiveKind::Lmax: return "lmax";
    case ObjectiveKind::WCmax: return "wcmax";
    case ObjectiveKind::WLmax: return "wlmax";
    case ObjectiveKind::SumC: return "sum_c";
    case ObjectiveKind::SumT: return "sum_t";
    case ObjectiveKind::SumWC: return "sum_wc";
    case ObjectiveKind::SumWT: return "sum_wt";
  }
  return "?";
}

Objective parse_objective(const std::string& name) {
  static const std::vector<std::pair<std::string, ObjectiveKind>> table = {
      {"cmax", ObjectiveKind::Cmax},   {"lmax", ObjectiveKind::Lmax},
      {"wcmax", ObjectiveKind::WCmax}, {"wlmax", ObjectiveKind::WLmax},
      {"sum_c", ObjectiveKind::SumC},  {"sum_t", ObjectiveKind::SumT},
      {"sum_wc", ObjectiveKind::SumWC}, {"sum_wt", ObjectiveKind::SumWT}};
  for (const auto& [n, k] : table)
    if (n == name) return Objective(k);
  throw InputError("unknown objective: " + name);
}

FeasibilityReport check_feasible(const Instance& inst, const Schedule& s) {
  if (s.size() != inst.n())
    throw InputError("schedule: size differs from instance");
  for (int j = 0; j < inst.n(); ++j)
    if (!s.assigned(j))
      throw InputError("schedule: job " + std::to_string(j) + " missing");
  FeasibilityReport rep;
  for (int j = 0; j < inst.n(); ++j) {
    const Job& job = inst.jobs[j];
    if (s.at(j) < job.r + job.p) {
      std::ostringstream m;
      m << "job " << j << " completes at " << s.at(j) << " before r+p = "
        << (job.r + job.p);
      rep.violations.push_back({Violation::Kind::Release, j, -1, m.str()});
    }
  }
  for (auto [u, v] : inst.graph.edges()) {
    if (intervals_overlap(s.at(u), inst.jobs[u].p, s.at(v), inst.jobs[v].p)) {
      std::ostringstream m;
      m << "jobs " << u << " and " << v << " overlap on conflict edge";
      rep.violations.push_back({Violation::Kind::Overlap, u, v, m.str()});
    }
  }
  rep.feasible = rep.violations.empty();
  return rep;
}

Value evaluate(const Instance& inst, const Schedule& s, Objective obj) {
  if (s.size() != inst.n())
    throw InputError("schedule: size differs from instance");
  if (inst.n() == 0) return 0;
  Value acc = 0;
  bool first = true;
  for (int j = 0; j < inst.n(); ++j) {
    if (!s.assigned(j))
      throw InputError("schedule: job " + std::to_string(j) + " missing");
    Value t = obj.term(inst.jobs[j], s.at(j));
    acc = first ? t : obj.combine(acc, t);
    first = false;
  }
  return acc;
}

namespace {

json parse_json_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("malformed JSON");
  return doc;
}

Time get_time_field(const json& obj, const char* key, Time fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<Time>();
}

void check_schema_version(const json& doc) {
  if (doc.contains("schema_version") && doc.at("schema_version") != 1)
    throw InputError("unsupported schema_version");
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json doc = parse_json_text(text);
  if (!doc.is_object()) throw InputError("instance: top level must be an object");
  check_schema_version(doc);
  if (!doc.contains("n") || !doc.at("n").is_number_integer())
    throw InputError("instance: missing integer field 'n'");
  const int n = doc.at("n").get<int>();
  if (n < 0) throw InputError("instance: n must be >= 0");

  std::vector<std::pair<int, int>> edges;
  if (doc.contains("edges")) {
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw InputError("instance: each edge must be a pair");
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  }

  Instance inst;
  inst.graph = ConflictGraph(n, std::move(edges));
  inst.jobs.resize(n);
  for (int i = 0; i < n; ++i) inst.jobs[i].id = i;
  if (doc.contains("jobs")) {
    std::vector<bool> seen(n, false);
    for (const json& jj : doc.at("jobs")) {
      if (!jj.is_object() || !jj.contains("id"))
        throw InputError("instance: each job entry needs an 'id'");
      const int id = jj.at("id").get<int>();
      if (id < 0 || id >= n) throw InputError("instance: job id out of range");
      if (seen[id]) throw InputError("instance: duplicate job id");
      seen[id] = true;
      Job& job = inst.jobs[id];
      job.p = get_time_field(jj, "p", 1);
      job.r = get_time_field(jj, "r", 0);
      job.d = get_time_field(jj, "d", 0);
      job.w = get_time_field(jj, "w", 1);
    }
  }
  inst.validate();
  return inst;
}

std::string format_instance_json(const Instance& inst) {
  json doc;
  doc["schema_version"] = 1;
  doc["n"] = inst.n();
  json edges = json::array();
  for (auto [u, v] : inst.graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  json jobs = json::array();
  for (const Job& j : inst.jobs)
    jobs.push_back({{"id", j.id}, {"p", j.p}, {"r", j.r}, {"d", j.d}, {"w", j.w}});
  doc["jobs"] = std::move(jobs);
  return doc.dump(2) + "\n";
}

Schedule parse_schedule_json(const std::string& text, int n) {
  json doc = parse_json_text(text);
  if (!doc.is_object() || !doc.contains("completion") || !doc.at("completion").is_object())
    throw InputError("schedule: expected object with 'completion' map");
  check_schema_version(doc);
  Schedule s(n);
  for (const auto& [key, val] : doc.at("completion").items()) {
    int id;
    try {
      size_t pos = 0;
      id = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError("schedule: non-integer job id '" + key + "'");
    }
    if (id < 0 || id >= n) throw InputError("schedule: job id out of range");
    if (!val.is_number_integer()) throw InputError("schedule: completion must be an integer");
    const Time c = val.get<Time>();
    if (c < 1) throw InputError("schedule: completion times are positive");
    s.set(id, c);
  }
  return s;
}

std::string format_schedule_json(const Schedule& s) {
  json comp = json::object();
  for (int j = 0; j < s.size(); ++j)
    if (s.assigned(j)) comp[std::to_string(j)] = s.at(j);
  json doc;
  doc["schema_version"] = 1;
  doc["completion"] = std::move(comp);
  return doc.dump(2) + "\n";
}

}  // namespace csched
