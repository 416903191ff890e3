#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frebels/graph.hpp"
#include "frebels/schedule.hpp"

namespace frebels {

/// Loops-only graph marking where an event occurs.
struct EventGraph {
  int n = 0;
  std::string event = kStartEvent;
  ProcessSet participants;

  DiGraph graph() const { return DiGraph::loops(n, participants); }
  bool operator==(const EventGraph&) const = default;
};

using AbstractionItem = std::variant<DiGraph, EventGraph>;

/// Finite prefix `items`; if `repeat_suffix` is set, items from that index
/// on repeat forever.
struct AbstractionSeq {
  std::vector<AbstractionItem> items;
  std::optional<std::size_t> repeat_suffix;

  /// First `depth` items of the (possibly infinite) sequence.
  std::vector<AbstractionItem> unroll(std::size_t depth) const;
};

/// Every simple path of G has a causal chain of non-silent tuples in F.
/// The last hop may be undelivered; every earlier hop must deliver before
/// the next send.
bool is_path_closed(const RunFragment& fragment, const DiGraph& g);

/// Each G_i is path-closed and every path of P_1 + ... + P_k chains
/// causally with a delivered last hop.
bool is_finite_abstraction(const RunFragment& fragment, std::span<const DiGraph> seq);

/// Same with event graphs interleaved: a loop (p, p) consumes p's
/// occurrence of the event, which must start after the previous hop's
/// delivery, and the next hop must be sent after it finishes.
bool is_finite_comm_abstraction(const RunFragment& fragment, std::span<const AbstractionItem> seq);

/// Bounded check of a dynamic abstraction: every prefix of the unrolled
/// sequence up to `depth` items is a finite communication abstraction.
/// Only an approximation of the infinite definition.
bool check_dynamic(const RunFragment& fragment, const AbstractionSeq& seq, std::size_t depth);

/// Edge (u, v) iff some relay opportunity leaving S at or after `after`
/// reaches u in time to use a delivered (u, v) tuple.
DiGraph relay_graph_from(const RunFragment& fragment, std::span<const ProcessId> sources, Time after);

/// Fires-without-relay condition: with at least 2f+1 witnesses, their
/// relay graph (from the last witness's START) has them as a 2f+1-strong
/// root. Vacuously true otherwise.
bool theorem3_holds(const RunFragment& fragment, std::span<const ProcessId> witnesses, int f);

/// Fires-with-relay condition on a forever-repeating graph: 2f+1-connected
/// and, for every f-set B, an (f+1)-element 2f+1 co-root w.r.t. B.
bool theorem4_holds(const DiGraph& g, int f);

struct CoRootEntry {
  ProcessSet excluded;
  std::optional<ProcessSet> co_root;
};

struct SolvabilityReport {
  int f = 0;
  bool connected = false;
  std::vector<CoRootEntry> co_roots;
  bool holds = false;

  /// "yes", "no (connectivity)" or "no (co-root)".
  std::string verdict() const;
  std::string to_text() const;
};

SolvabilityReport theorem4_report(const DiGraph& g, int f);

}  // namespace frebels
