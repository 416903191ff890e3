#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frebels/graph.hpp"

namespace frebels {

enum class Tag : std::uint8_t { Start, Ready };

/// A relay chain attesting to START or READY. `relays` lists the relayers,
/// most recent last; empty relays is the direct attestation, so S[4,1]
/// reads "1 heard from 4 that START happened".
struct MessageChain {
  Tag tag = Tag::Start;
  std::vector<ProcessId> relays;

  auto operator<=>(const MessageChain&) const = default;
};

using ChainSet = std::set<MessageChain>;

inline MessageChain start_chain(std::vector<ProcessId> relays = {}) { return {Tag::Start, std::move(relays)}; }
inline MessageChain ready_chain(std::vector<ProcessId> relays = {}) { return {Tag::Ready, std::move(relays)}; }

/// Maximum number of pairwise disjoint sets among `masks` (bit i = process
/// i). The empty mask is disjoint from everything. Stops early once
/// `limit` is reached.
int max_disjoint_sets(std::span<const std::uint32_t> masks,
                      int limit = std::numeric_limits<int>::max());

/// Largest sub-collection of chains with pairwise disjoint relay sets.
int count_disjoint(const ChainSet& chains, int limit = std::numeric_limits<int>::max());

/// count_disjoint(chains) >= threshold, with early exit.
bool has_disjoint(const ChainSet& chains, int threshold);

/// Well-formed for an n-process system: ids in range, no repeats, length
/// below n.
bool is_well_formed(const MessageChain& chain, int n);

std::string to_string(const MessageChain& chain);
std::string to_string(const ChainSet& payload);
MessageChain parse_chain(std::string_view text);
ChainSet parse_payload(std::string_view text);

/// Wire form: per chain, tag byte ('S'/'R'), length byte, relay id bytes;
/// chains in canonical order.
std::vector<std::uint8_t> encode_payload(const ChainSet& payload);
ChainSet decode_payload(std::span<const std::uint8_t> bytes);

enum class Protocol { FR, FRR, Flood };

std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view name);

struct ProcessState {
  ProcessId pid = 0;
  int n = 0;
  ChainSet H;  // START chains
  ChainSet V;  // READY chains
  bool wit = false;
  bool ready = false;
  bool fired = false;
  bool witnessed = false;

  bool operator==(const ProcessState&) const = default;
};

ProcessState initial_state(ProcessId pid, int n);

struct StartEvent {};
struct Delivery {
  ProcessId sender = 0;
  ChainSet chains;
};
struct Activation {};
using StepInput = std::variant<StartEvent, Delivery, Activation>;

enum class ActionKind { Fire, Broadcast };

struct Action {
  ActionKind kind = ActionKind::Broadcast;
  ChainSet payload;

  bool operator==(const Action&) const = default;
};

struct StepResult {
  ProcessState state;
  std::vector<Action> actions;
};

/// Firing Rebels without relay. Fires on witnessing START or on f+1
/// disjoint START chains, then only ever broadcasts the direct attestation.
StepResult fr_step(ProcessState state, const StepInput& input, int f);

/// Firing Rebels with relay: START chains in H, READY chains in V. Fires
/// on f+1 disjoint READY chains or 2f+1 disjoint START chains.
StepResult frr_step(ProcessState state, const StepInput& input, int f);

/// Full-information flooding reference: keeps every chain it learns and
/// rebroadcasts all of them each activation. Amplifies START on f+1
/// disjoint chains and declares READY (and fires) on the FRR guard.
StepResult flood_step(ProcessState state, const StepInput& input, int f);

StepResult protocol_step(Protocol protocol, ProcessState state, const StepInput& input, int f);

}  // namespace frebels
