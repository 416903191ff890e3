// Python bindings: graph checks, scenario runs and the impossibility
// constructions. Vectors and sets convert through pybind11/stl.h.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frebels/abstraction.hpp"
#include "frebels/epistemic.hpp"
#include "frebels/scenario_file.hpp"
#include "frebels/scenarios.hpp"
#include "frebels/sim.hpp"

namespace py = pybind11;
using namespace frebels;

namespace {

py::dict run_result(const ScenarioFile& sf) {
  const Trace trace = execute(sf.config);
  const Verdict v = check_verdict(trace, sf.config.f, sf.config.horizon, sf.grace);
  py::dict out;
  out["trace"] = trace.to_text();
  out["correctness"] = std::string(to_string(v.correctness));
  out["unforgeability"] = std::string(to_string(v.unforgeability));
  out["relay"] = std::string(to_string(v.relay));
  out["details"] = v.details;
  out["failed"] = v.any_fail();
  std::map<ProcessId, Time> fires;
  for (ProcessId p = 0; p < sf.config.n; ++p)
    if (trace.fire_time(p) != kInfinity) fires[p] = trace.fire_time(p);
  out["fire_times"] = fires;
  return out;
}

}  // namespace

PYBIND11_MODULE(_frebels, m) {
  m.doc() = "Firing Rebels simulator and network checkers";

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::class_<DiGraph>(m, "DiGraph")
      .def(py::init<int>(), py::arg("n"))
      .def_static("complete", &DiGraph::complete, py::arg("n"))
      .def_static("cycle", &DiGraph::cycle, py::arg("n"))
      .def_static("from_edges",
                  [](int n, const std::vector<std::pair<ProcessId, ProcessId>>& edges) {
                    return DiGraph::from_edges(n, edges);
                  },
                  py::arg("n"), py::arg("edges"))
      .def_static("parse", &parse_graph, py::arg("text"))
      .def_property_readonly("n", &DiGraph::size)
      .def("add_edge", &DiGraph::add_edge)
      .def("remove_edge", &DiGraph::remove_edge)
      .def("has_edge", &DiGraph::has_edge)
      .def("edges", &DiGraph::edges)
      .def("to_dot", [](const DiGraph& g) { return to_dot(g); })
      .def("__eq__", [](const DiGraph& a, const DiGraph& b) { return a == b; })
      .def("__len__", &DiGraph::edge_count)
      .def("__repr__", [](const DiGraph& g) {
        return "DiGraph(n=" + std::to_string(g.size()) + ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("max_disjoint_paths", [](const DiGraph& g, ProcessId s, ProcessId t) {
    const DisjointPaths dp = max_disjoint_paths(g, s, t);
    return dp.witness;
  }, py::arg("g"), py::arg("s"), py::arg("t"), "Internally disjoint s->t paths of maximum count.");
  m.def("is_k_connected", &is_k_connected, py::arg("g"), py::arg("k"));
  m.def("is_strong_root", [](const DiGraph& g, const ProcessSet& roots, int k) { return is_strong_root(g, roots, k); },
        py::arg("g"), py::arg("roots"), py::arg("k"));
  m.def("is_co_root",
        [](const DiGraph& g, const ProcessSet& members, const ProcessSet& excluded, int k) {
          return is_co_root(g, members, excluded, k);
        },
        py::arg("g"), py::arg("members"), py::arg("excluded"), py::arg("k"));
  m.def("find_co_root",
        [](const DiGraph& g, const ProcessSet& excluded, int k, int size) { return find_co_root(g, excluded, k, size); },
        py::arg("g"), py::arg("excluded"), py::arg("k"), py::arg("size"));

  m.def("relay_solvable", &theorem4_holds, py::arg("g"), py::arg("f"),
        "True iff a repeating G lets FRR satisfy correctness, unforgeability and relay.");
  m.def("solvability_report", [](const DiGraph& g, int f) { return theorem4_report(g, f).to_text(); },
        py::arg("g"), py::arg("f"));

  m.def("knowledge_conditions", [](const DiGraph& g, int f) {
    const RunFamily fam = flood_family(g, f);
    return std::pair{eval_formula3(fam, f, fam.horizon), eval_formula6(fam, f, fam.horizon)};
  }, py::arg("g"), py::arg("f"), "The two knowledge conditions on the flooding runs over a repeating G.");

  m.def("run_scenario", [](const std::string& text) { return run_result(parse_scenario(text)); },
        py::arg("text"), "Execute a JSON scenario document; returns the trace and verdict.");
  m.def("run_scenario_file", [](const std::string& path) { return run_result(load_scenario(path)); },
        py::arg("path"));

  m.def("frimp", [](int n, int f, const std::string& protocol) {
    const FrimpScenario sc = scenario_frimp(n, f, std::nullopt, parse_protocol(protocol));
    const FrimpOutcome out = verify_frimp(sc);
    py::dict d;
    d["v"] = sc.v;
    d["views_identical"] = out.views_identical;
    d["violation_forced"] = out.violation_forced;
    d["report"] = out.report();
    return d;
  }, py::arg("n"), py::arg("f"), py::arg("protocol") = "FR");
  m.def("infinity", [](int n, int f, int k, const std::string& protocol) {
    const InfinityOutcome out = verify_infinity(scenario_infinity(n, f, k, parse_protocol(protocol)));
    py::dict d;
    d["all_hold"] = out.all_hold();
    d["relay_failed"] = out.verdict_r_prime.relay == Outcome::Fail;
    d["report"] = out.report();
    return d;
  }, py::arg("n"), py::arg("f"), py::arg("k"), py::arg("protocol") = "FRR");
}
