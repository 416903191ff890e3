#include "frebels/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

namespace frebels {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw ScenarioError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ScenarioError(where + ": unknown field '" + key + "'");
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ScenarioError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

ProcessSet process_set(const json& value, const std::string& where) {
  if (!value.is_array()) throw ScenarioError(where + ": expected a list of process ids");
  ProcessSet out;
  for (const auto& v : value) {
    if (!v.is_number_integer()) throw ScenarioError(where + ": expected a list of process ids");
    out.push_back(v.get<ProcessId>());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Chain text as written by hand; whitespace is not part of the syntax.
std::string compact(std::string text) {
  std::erase_if(text, [](unsigned char c) { return std::isspace(c); });
  return text;
}

ChainSet chain_set(const json& value, const std::string& where) {
  ChainSet out;
  try {
    if (value.is_string()) return parse_payload(compact(value.get<std::string>()));
    if (!value.is_array()) throw ScenarioError(where + ": expected chains");
    for (const auto& c : value) {
      if (!c.is_string()) throw ScenarioError(where + ": expected chain strings");
      out.insert(parse_chain(compact(c.get<std::string>())));
    }
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  return out;
}

DiGraph graph_from(const json& value, int n, const std::string& where) {
  try {
    if (value.is_string()) {
      DiGraph g = parse_graph(value.get<std::string>());
      if (g.size() != n) throw ScenarioError(where + ": graph has " + std::to_string(g.size()) + " vertices, expected " + std::to_string(n));
      return g;
    }
    if (value.is_array()) {
      std::vector<std::pair<ProcessId, ProcessId>> edges;
      for (const auto& e : value) {
        if (!e.is_array() || e.size() != 2) throw ScenarioError(where + ": edges are [u, v] pairs");
        edges.emplace_back(e[0].get<ProcessId>(), e[1].get<ProcessId>());
      }
      return DiGraph::from_edges(n, edges);
    }
    if (value.is_object()) {
      check_keys(value, {"complete", "cycle"}, where);
      if (value.size() != 1) throw ScenarioError(where + ": give exactly one of complete, cycle");
      if (value.contains("complete")) return DiGraph::complete(n);
      return DiGraph::cycle(n);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  throw ScenarioError(where + ": unsupported graph form");
}

MessageSchedule schedule_from(const json& s, int n, Time horizon, ScenarioFile& out) {
  auto& graphs = out.graphs;
  const std::string where = "schedule";
  check_keys(s, {"graph_sequence", "entries", "default_delay"}, where);
  if (s.contains("graph_sequence") == (s.contains("entries") || s.contains("default_delay")))
    throw ScenarioError("schedule: give either graph_sequence or entries/default_delay");

  if (s.contains("graph_sequence")) {
    const json& gs = s.at("graph_sequence");
    const std::string w = "schedule.graph_sequence";
    check_keys(gs, {"graphs", "phase_length", "repeat", "start", "repeat_from"}, w);
    if (!gs.contains("graphs") || !gs.at("graphs").is_array()) throw ScenarioError(w + ": 'graphs' must be a list");
    for (std::size_t i = 0; i < gs.at("graphs").size(); ++i)
      graphs.push_back(graph_from(gs.at("graphs")[i], n, w + ".graphs[" + std::to_string(i) + "]"));
    Time phase = 1;
    for (const auto& g : graphs) phase = std::max(phase, min_phase_length(g));
    phase = get_or<Time>(gs, "phase_length", phase, w);
    int repeat = kUnbounded;
    if (gs.contains("repeat")) {
      const json& r = gs.at("repeat");
      if (r.is_string() && r.get<std::string>() == "unbounded") repeat = kUnbounded;
      else if (r.is_number_integer() && r.get<int>() >= 0) repeat = r.get<int>();
      else throw ScenarioError(w + ": repeat must be a non-negative integer or \"unbounded\"");
    }
    const Time start = get_or<Time>(gs, "start", 0, w);
    const auto repeat_from = get_or<std::size_t>(gs, "repeat_from", 0, w);
    out.repeat_from = repeat_from;
    try {
      return schedule_from_graph_sequence(n, graphs, phase, repeat, horizon, start, repeat_from);
    } catch (const std::exception& e) {
      throw ScenarioError(w + ": " + e.what());
    }
  }

  MessageSchedule schedule(n);
  try {
    if (s.contains("entries")) {
      for (const auto& e : s.at("entries")) {
        if (!e.is_array() || e.size() != 4) throw ScenarioError("schedule.entries: rows are [p, q, send, delivery]");
        schedule.set_entry(e[0].get<ProcessId>(), e[1].get<ProcessId>(), e[2].get<Time>(), e[3].get<Time>());
      }
    }
    if (s.contains("default_delay")) schedule.set_default_delay(get<Time>(s, "default_delay", where));
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("schedule.entries: ") + e.what());
  }
  return schedule;
}

std::vector<EventSchedule> events_from(const json& list) {
  if (!list.is_array()) throw ScenarioError("events: expected a list");
  std::map<std::string, EventSchedule> by_name;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "events[" + std::to_string(i) + "]";
    const json& e = list[i];
    check_keys(e, {"event", "process", "start", "finish"}, w);
    const auto name = get_or<std::string>(e, "event", kStartEvent, w);
    const auto p = get<ProcessId>(e, "process", w);
    const auto start = get<Time>(e, "start", w);
    std::optional<Time> finish;
    if (e.contains("finish")) finish = get<Time>(e, "finish", w);
    if (finish && *finish < start) throw ScenarioError(w + ": finish before start");
    auto& es = by_name[name];
    es.event = name;
    if (es.entries.count(p)) throw ScenarioError(w + ": duplicate occurrence of " + name + " at " + std::to_string(p));
    es.add(p, start, finish);
  }
  std::vector<EventSchedule> out;
  for (auto& [name, es] : by_name) out.push_back(std::move(es));
  return out;
}

AdversaryPolicy policy_from(const json& a, const std::string& w) {
  if (!a.is_object()) throw ScenarioError(w + ": expected an object");
  const auto kind = get<std::string>(a, "policy", w);
  if (kind == "silent") {
    check_keys(a, {"policy"}, w);
    return SilentPolicy{};
  }
  if (kind == "simulate_witness") {
    check_keys(a, {"policy", "start_at", "targets"}, w);
    SimulateWitnessPolicy p;
    p.start_at = get_or<Time>(a, "start_at", 0, w);
    if (a.contains("targets")) p.targets = process_set(a.at("targets"), w + ".targets");
    return p;
  }
  if (kind == "selective") {
    check_keys(a, {"policy", "targets", "forged", "from"}, w);
    SelectivePolicy p;
    if (!a.contains("targets")) throw ScenarioError(w + ": missing field 'targets'");
    p.targets = process_set(a.at("targets"), w + ".targets");
    if (a.contains("forged")) p.forged = chain_set(a.at("forged"), w + ".forged");
    p.from = get_or<Time>(a, "from", 0, w);
    return p;
  }
  if (kind == "scripted") {
    check_keys(a, {"policy", "sends"}, w);
    ScriptedPolicy p;
    if (!a.contains("sends") || !a.at("sends").is_array()) throw ScenarioError(w + ": 'sends' must be a list");
    for (std::size_t i = 0; i < a.at("sends").size(); ++i) {
      const json& s = a.at("sends")[i];
      const std::string ws = w + ".sends[" + std::to_string(i) + "]";
      check_keys(s, {"time", "to", "payload"}, ws);
      p.sends.push_back(ScriptedSend{get<Time>(s, "time", ws), get<ProcessId>(s, "to", ws),
                                     chain_set(s.contains("payload") ? s.at("payload") : json::array(), ws)});
    }
    return p;
  }
  throw ScenarioError(w + ": unknown policy '" + kind + "'");
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text, const ScenarioOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  check_keys(doc, {"n", "f", "protocol", "schedule", "events", "adversary", "seed", "horizon", "grace", "outputs"},
             "scenario");

  ScenarioFile out;
  SimConfig& c = out.config;
  c.n = get<int>(doc, "n", "scenario");
  c.f = get<int>(doc, "f", "scenario");
  if (c.n < 1 || c.n > kMaxProcesses) throw ScenarioError("scenario: n must be in 1..16");
  try {
    c.protocol = parse_protocol(get_or<std::string>(doc, "protocol", "FR", "scenario"));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  c.seed = overrides.seed ? *overrides.seed : get_or<std::uint64_t>(doc, "seed", 0, "scenario");
  c.horizon = overrides.horizon ? *overrides.horizon : get<Time>(doc, "horizon", "scenario");
  if (c.horizon < 0) throw ScenarioError("scenario: horizon must be non-negative");
  out.grace = get_or<Time>(doc, "grace", 0, "scenario");
  if (!doc.contains("schedule")) throw ScenarioError("scenario: missing field 'schedule'");
  c.schedule = schedule_from(doc.at("schedule"), c.n, c.horizon, out);
  if (doc.contains("events")) c.events = events_from(doc.at("events"));

  if (doc.contains("adversary")) {
    const json& adv = doc.at("adversary");
    if (!adv.is_object()) throw ScenarioError("adversary: expected an object keyed by process id");
    for (const auto& [key, value] : adv.items()) {
      ProcessId p = 0;
      std::istringstream in(key);
      if (!(in >> p) || !in.eof()) throw ScenarioError("adversary: key '" + key + "' is not a process id");
      c.adversary.policies[p] = policy_from(value, "adversary." + key);
    }
  }

  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    check_keys(o, {"trace", "verdict"}, "outputs");
    if (o.contains("trace")) out.trace_path = get<std::string>(o, "trace", "outputs");
    if (o.contains("verdict")) out.verdict_path = get<std::string>(o, "verdict", "outputs");
  }

  try {
    validate_config(c);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid configuration: ") + e.what());
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path, const ScenarioOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), overrides);
}

}  // namespace frebels
