#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frebels/protocol.hpp"
#include "frebels/schedule.hpp"
#include "frebels/trace.hpp"

namespace frebels {

/// Takes no protocol steps and sends nothing.
struct SilentPolicy {
  bool operator==(const SilentPolicy&) const = default;
};

/// Runs the protocol as if START had been witnessed at `start_at`, ignoring
/// real events; nothing leaves the process before `start_at`, and with
/// `targets` set only those receivers are served.
struct SimulateWitnessPolicy {
  Time start_at = 0;
  std::optional<ProcessSet> targets;
  bool operator==(const SimulateWitnessPolicy&) const = default;
};

/// Runs the protocol honestly but serves only `targets`, adding `forged`
/// chains to every send from `from` onwards.
struct SelectivePolicy {
  ProcessSet targets;
  ChainSet forged;
  Time from = 0;
  bool operator==(const SelectivePolicy&) const = default;
};

struct ScriptedSend {
  Time time = 0;
  ProcessId to = 0;
  ChainSet payload;
  bool operator==(const ScriptedSend&) const = default;
};

/// Emits exactly the listed sends (subject to the schedule) and nothing else.
struct ScriptedPolicy {
  std::vector<ScriptedSend> sends;
  bool operator==(const ScriptedPolicy&) const = default;
};

using AdversaryPolicy = std::variant<SilentPolicy, SimulateWitnessPolicy, SelectivePolicy, ScriptedPolicy>;

struct Adversary {
  std::map<ProcessId, AdversaryPolicy> policies;

  ProcessSet byzantine() const;
};

struct SimConfig {
  int n = 0;
  int f = 0;
  Protocol protocol = Protocol::FR;
  MessageSchedule schedule;
  std::vector<EventSchedule> events;
  Adversary adversary;
  std::uint64_t seed = 0;
  Time horizon = 0;
};

/// invalid_argument unless n >= 2f+1, n <= 16, the schedule matches n, the
/// horizon is finite and the adversary controls at most f known processes.
void validate_config(const SimConfig& config);

/// Runs ticks 0..horizon. Each tick activates every process once, in a
/// permutation drawn from the seed once per run. An activation logs the
/// process's events, consumes all deliveries due (ordered by send time,
/// then sender), and then takes the protocol's broadcast step; every
/// outgoing link is resolved against the schedule at the current tick.
Trace execute(const SimConfig& config);

enum class Outcome { Pass, Fail, Vacuous, HorizonLimited };

std::string_view to_string(Outcome outcome);

struct Verdict {
  Outcome correctness = Outcome::Vacuous;
  Outcome unforgeability = Outcome::Pass;
  Outcome relay = Outcome::Pass;
  std::string details;

  bool any_fail() const;
  std::string summary() const;
};

/// C: with >= 2f+1 START witnesses (correct or not) every correct process
/// fires by `horizon`. U: every correct FIRE has a START at a correct
/// process no later than it. R: all-or-nothing among correct processes; a
/// miss is HORIZON_LIMITED rather than FAIL when the first correct FIRE
/// lies within `grace` ticks of the horizon.
Verdict check_verdict(const Trace& trace, int f, Time horizon, Time grace = 0);

}  // namespace frebels
