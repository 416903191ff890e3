// frebels: run scenarios, check graphs and abstractions, replay the
// impossibility constructions, evaluate the knowledge conditions.
//
// Exit codes: 0 pass, 1 property FAIL, 2 usage or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "frebels/abstraction.hpp"
#include "frebels/epistemic.hpp"
#include "frebels/scenario_file.hpp"
#include "frebels/scenarios.hpp"
#include "frebels/sim.hpp"

namespace fs = std::filesystem;
using namespace frebels;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

DiGraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Common {
  std::optional<Time> horizon;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";

  ScenarioOverrides overrides() const { return {horizon, seed}; }
};

// run ------------------------------------------------------------------------

int run_one(const fs::path& path, const Common& opt, std::ostream& log) {
  const ScenarioFile sf = load_scenario(path.string(), opt.overrides());
  const Trace trace = execute(sf.config);
  const Verdict verdict = check_verdict(trace, sf.config.f, sf.config.horizon, sf.grace);

  const std::string stem = path.stem().string();
  const fs::path dir(opt.out_dir);
  const fs::path trace_path = dir / sf.trace_path.value_or(stem + ".trace");
  const fs::path verdict_path = dir / sf.verdict_path.value_or(stem + ".verdict");
  write_file(trace_path, trace.to_text());
  write_file(verdict_path, verdict.summary());

  log << stem << ":\n" << verdict.summary();
  log << "trace: " << trace_path.string() << '\n' << "verdict: " << verdict_path.string() << '\n';
  return verdict.any_fail() ? kFail : kPass;
}

int cmd_run(const std::string& input, const Common& opt) {
  const fs::path path(input);
  if (!fs::is_directory(path)) return run_one(path, opt, std::cout);

  // A batch is every .json file in the directory, in name order.
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .json scenarios in '" + input + "'");
  int worst = kPass;
  for (const auto& f : files) worst = std::max(worst, run_one(f, opt, std::cout));
  return worst;
}

// check-graph ------------------------------------------------------------------

int cmd_check_graph(const std::string& path, int f) {
  if (f < 0) throw UsageError("--f must be non-negative");
  const DiGraph g = load_graph(path);
  const SolvabilityReport report = theorem4_report(g, f);
  std::cout << report.to_text();
  return report.holds ? kPass : kFail;
}

// check-abstraction ----------------------------------------------------------

int cmd_check_abstraction(const std::string& path, const Common& opt, std::optional<std::size_t> depth,
                          bool from_run) {
  const ScenarioFile sf = load_scenario(path, opt.overrides());
  if (sf.graphs.empty()) throw UsageError("check-abstraction needs a graph_sequence schedule");
  const SimConfig& c = sf.config;
  const RunFragment fragment = from_run ? build_run_fragment(execute(c), c.schedule, c.events)
                                        : fragment_of(c.schedule, c.horizon, c.events);
  bool ok = true;
  auto line = [&](const std::string& what, bool holds) {
    std::cout << what << ": " << yes_no(holds) << '\n';
    ok = ok && holds;
  };

  for (std::size_t i = 0; i < sf.graphs.size(); ++i)
    line("path-closed G" + std::to_string(i + 1), is_path_closed(fragment, sf.graphs[i]));
  line("finite abstraction", is_finite_abstraction(fragment, sf.graphs));

  for (const auto& es : c.events) {
    if (es.event != kStartEvent) continue;
    ProcessSet witnesses;
    for (const auto& [p, w] : es.entries) witnesses.push_back(p);
    std::vector<AbstractionItem> items{EventGraph{c.n, kStartEvent, witnesses}};
    items.insert(items.end(), sf.graphs.begin(), sf.graphs.end());
    line("communication abstraction with " + std::string(kStartEvent), is_finite_comm_abstraction(fragment, items));
  }

  if (depth) {
    if (*depth == 0) throw UsageError("--depth must be positive");
    AbstractionSeq seq{{sf.graphs.begin(), sf.graphs.end()}, sf.repeat_from};
    line("dynamic abstraction to depth " + std::to_string(*depth), check_dynamic(fragment, seq, *depth));
  }
  return ok ? kPass : kFail;
}

// scenario -------------------------------------------------------------------

void dump_traces(const Common& opt, std::initializer_list<std::pair<const char*, const SimConfig*>> runs) {
  for (const auto& [name, config] : runs)
    write_file(fs::path(opt.out_dir) / (std::string(name) + ".trace"), execute(*config).to_text());
}

int cmd_scenario(const std::string& name, int n, int f, int k, const std::string& protocol_name,
                 const std::string& graph_path, const Common& opt, bool write_traces) {
  Protocol protocol;
  try {
    protocol = parse_protocol(protocol_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (name == "frimp") {
    std::optional<DiGraph> network;
    if (!graph_path.empty()) network = load_graph(graph_path);
    const FrimpScenario sc = scenario_frimp(n, f, network, protocol);
    const FrimpOutcome out = verify_frimp(sc);
    std::cout << out.report();
    if (write_traces) {
      write_file(fs::path(opt.out_dir) / "r1.trace", out.t1.to_text());
      write_file(fs::path(opt.out_dir) / "r2.trace", out.t2.to_text());
    }
    return out.views_identical && out.violation_forced ? kPass : kFail;
  }

  if (!graph_path.empty()) throw UsageError("--graph applies to frimp only");
  const InfinityScenario sc = scenario_infinity(n, f, k, protocol);
  const InfinityOutcome out = verify_infinity(sc);
  std::cout << out.report();
  if (write_traces)
    dump_traces(opt, {{"r", &sc.r}, {"r1", &sc.r1}, {"r_prime", &sc.r_prime}, {"r2", &sc.r2}});
  return out.all_hold() ? kPass : kFail;
}

// epistemic ------------------------------------------------------------------

int cmd_epistemic(const std::string& path, const Common& opt) {
  const ScenarioFile sf = load_scenario(path, opt.overrides());
  const SimConfig& c = sf.config;
  if (c.protocol != Protocol::Flood)
    throw UsageError("epistemic needs the FLOOD protocol, scenario uses " + std::string(to_string(c.protocol)));
  if (sf.graphs.empty()) throw UsageError("epistemic needs a graph_sequence schedule");

  const RunFamily family = flood_family(c.schedule, c.f, c.horizon, c.seed);
  const FormulaReport r3 = formula3_report(family);
  const FormulaReport r6 = formula6_report(family);
  const bool solvable = theorem4_holds(union_graph(sf.graphs), c.f);
  const bool agrees = (r3.holds && r6.holds) == solvable;

  std::cout << r3.to_text() << r6.to_text();
  std::cout << "formula3: " << (r3.holds ? "true" : "false") << '\n'
            << "formula6: " << (r6.holds ? "true" : "false") << '\n'
            << "solvable: " << yes_no(solvable) << '\n'
            << "agrees: " << yes_no(agrees) << '\n';
  return agrees ? kPass : kFail;
}

// export-dot -----------------------------------------------------------------

int cmd_export_dot(const std::string& path, const Common& opt, bool to_dir) {
  DiGraph g;
  if (fs::path(path).extension() == ".json") {
    const ScenarioFile sf = load_scenario(path, opt.overrides());
    if (sf.graphs.empty()) throw UsageError("scenario has no graph_sequence to export");
    g = union_graph(sf.graphs);
  } else {
    g = load_graph(path);
  }
  const std::string dot = to_dot(g);
  if (to_dir) {
    const fs::path out = fs::path(opt.out_dir) / (fs::path(path).stem().string() + ".dot");
    write_file(out, dot);
    std::cout << out.string() << '\n';
  } else {
    std::cout << dot;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Firing Rebels simulator and checkers"};
  app.require_subcommand(1);
  Common opt;

  auto add_common = [&](CLI::App* sub, bool out_dir) {
    sub->add_option("--horizon", opt.horizon, "Override the scenario horizon");
    sub->add_option("--seed", opt.seed, "Override the scenario seed");
    if (out_dir) sub->add_option("--out-dir", opt.out_dir, "Directory for written files");
  };

  std::string input;
  auto* run = app.add_subcommand("run", "Execute a scenario file, or every .json in a directory");
  run->add_option("scenario", input, "Scenario file or directory")->required();
  add_common(run, true);

  int f = 1;
  auto* check_graph = app.add_subcommand("check-graph", "Decide Relay solvability on a graph");
  check_graph->add_option("graph", input, "Edge-list file")->required();
  check_graph->add_option("--f", f, "Fault bound")->capture_default_str();

  std::optional<std::size_t> depth;
  bool from_run = false;
  auto* check_abs = app.add_subcommand("check-abstraction", "Check a scenario's schedule against its graph sequence");
  check_abs->add_option("scenario", input, "Scenario file")->required();
  check_abs->add_option("--depth", depth, "Dynamic-abstraction prefix depth");
  check_abs->add_flag("--from-run", from_run, "Use the executed run instead of every opportunity");
  add_common(check_abs, false);

  std::string name, protocol = "FRR", graph_path;
  int n = 4, k = 2;
  auto* scenario = app.add_subcommand("scenario", "Build and verify an impossibility construction");
  scenario->add_option("name", name, "frimp or infinity")->required()->check(CLI::IsMember({"frimp", "infinity"}));
  scenario->add_option("--n", n, "Processes")->capture_default_str();
  scenario->add_option("--f", f, "Fault bound")->capture_default_str();
  scenario->add_option("--k", k, "Phases before the cut (infinity)")->capture_default_str();
  scenario->add_option("--protocol", protocol, "FR, FRR or FLOOD")->capture_default_str();
  scenario->add_option("--graph", graph_path, "Network for frimp (edge-list file)");
  auto* scenario_out = scenario->add_option("--out-dir", opt.out_dir, "Write the runs' traces here");

  auto* epistemic = app.add_subcommand("epistemic", "Evaluate the knowledge conditions on a FLOOD scenario");
  epistemic->add_option("scenario", input, "Scenario file")->required();
  add_common(epistemic, false);

  auto* export_dot = app.add_subcommand("export-dot", "Print a graph, or a scenario's union graph, as DOT");
  export_dot->add_option("input", input, "Edge-list file or scenario .json")->required();
  auto* export_out = export_dot->add_option("--out-dir", opt.out_dir, "Write <name>.dot here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(input, opt);
    if (*check_graph) return cmd_check_graph(input, f);
    if (*check_abs) return cmd_check_abstraction(input, opt, depth, from_run);
    if (*scenario) return cmd_scenario(name, n, f, k, protocol, graph_path, opt, scenario_out->count() > 0);
    if (*epistemic) return cmd_epistemic(input, opt);
    if (*export_dot) return cmd_export_dot(input, opt, export_out->count() > 0);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
