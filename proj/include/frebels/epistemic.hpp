#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "frebels/graph.hpp"
#include "frebels/schedule.hpp"
#include "frebels/trace.hpp"

namespace frebels {

/// Nested hope H_{a1} H_{a2} ... H_{ak}(START) as held by some process:
/// agents[0] is the last relayer, agents.back() the originating witness.
struct HopeChain {
  std::vector<ProcessId> agents;
  std::string proposition = kStartEvent;

  auto operator<=>(const HopeChain&) const = default;
};

/// The START chains held by p at time t (replaying p's protocol state from
/// its deliveries and events up to t). Relays [4, 1] become agents [1, 4];
/// the direct attestation becomes [p].
std::set<HopeChain> extract_hope_chains(const Trace& trace, ProcessId p, Time t);

/// Whether `chains` contain f+1 pairwise agent-disjoint chains.
bool belief_gain(const std::set<HopeChain>& chains, int f);

/// One run per (2f+1)-set T of START witnesses, keyed by T, all sharing a
/// horizon. Runs are byzantine-free and use the flooding reference.
struct RunFamily {
  int n = 0;
  int f = 0;
  Time horizon = 0;
  std::map<ProcessSet, Trace> traces;
};

/// Builds the family over a fixed schedule: START at every member of T at
/// tick 0, flooding protocol.
RunFamily flood_family(const MessageSchedule& schedule, int f, Time horizon, std::uint64_t seed = 0);

/// Family over `g` repeated forever: one phase per period, sends from tick
/// 1, horizon covering n+2 periods.
RunFamily flood_family(const DiGraph& g, int f);

/// Hope formulas evaluated on the family's common time axis [0, horizon].
/// An atom says `holder` holds `chain` in the run keyed by `world`.
struct HopeFormula {
  enum class Kind { Atom, And, Or, Implies, Eventually, Always };

  Kind kind = Kind::Atom;
  ProcessSet world;
  ProcessId holder = 0;
  HopeChain chain;
  std::vector<HopeFormula> children;

  static HopeFormula atom(ProcessSet world, ProcessId holder, HopeChain chain);
  static HopeFormula all(std::vector<HopeFormula> children);
  static HopeFormula any(std::vector<HopeFormula> children);
  static HopeFormula implies(HopeFormula lhs, HopeFormula rhs);
  static HopeFormula eventually(HopeFormula child);
  static HopeFormula always(HopeFormula child);
};

std::string to_string(const HopeFormula& formula);

/// Truth value at every tick in [0, horizon].
std::vector<bool> evaluate(const HopeFormula& formula, const RunFamily& family);
bool holds(const HopeFormula& formula, const RunFamily& family);

/// Disjoint-hope liveness for T, b: whenever every a in T hopes START,
/// eventually b holds 2f+1 pairwise disjoint chains, one from each a.
HopeFormula formula3_instance(const RunFamily& family, const ProcessSet& t, ProcessId b);

/// Co-root liveness for B: some (f+1)-set avoiding B whose members each
/// directly hear from some 2f+1-set avoiding B, evaluated in that set's run.
HopeFormula formula6_instance(const RunFamily& family, const ProcessSet& b);

struct FormulaInstance {
  std::string label;
  bool holds = false;
};

struct FormulaReport {
  std::string name;
  bool holds = true;
  std::vector<FormulaInstance> instances;

  std::string to_text() const;
};

FormulaReport formula3_report(const RunFamily& family);
FormulaReport formula6_report(const RunFamily& family);

bool eval_formula3(const RunFamily& family, int f, Time horizon);
bool eval_formula6(const RunFamily& family, int f, Time horizon);

}  // namespace frebels
