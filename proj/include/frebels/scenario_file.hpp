#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frebels/graph.hpp"
#include "frebels/sim.hpp"

namespace frebels {

/// Malformed or invalid scenario document.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A JSON scenario document, validated. Fields:
///
///   n, f, protocol ("FR" | "FRR" | "FLOOD"), seed, horizon, grace
///   schedule: { "graph_sequence": { graphs, phase_length, repeat,
///                                   start, repeat_from } }
///           | { "entries": [[p, q, send, delivery], ...], default_delay }
///   events:    [ { event, process, start, finish }, ... ]
///   adversary: { "<pid>": { policy: "silent" | "simulate_witness" |
///                           "selective" | "scripted", ... } }
///   outputs:   { trace, verdict }
///
/// A graph is an edge-list string, [[u, v], ...], {"complete": true} or
/// {"cycle": true}. Unknown fields are rejected.
struct ScenarioFile {
  SimConfig config;
  Time grace = 0;
  /// The graph sequence when the schedule came from one.
  std::vector<DiGraph> graphs;
  std::size_t repeat_from = 0;
  std::optional<std::string> trace_path;
  std::optional<std::string> verdict_path;
};

/// Command-line values that replace the document's own.
struct ScenarioOverrides {
  std::optional<Time> horizon;
  std::optional<std::uint64_t> seed;
};

ScenarioFile parse_scenario(const std::string& text, const ScenarioOverrides& overrides = {});
ScenarioFile load_scenario(const std::string& path, const ScenarioOverrides& overrides = {});

}  // namespace frebels
