#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "frebels/graph.hpp"

namespace frebels {

/// Discrete global time. kInfinity means "never".
using Time = std::int64_t;
inline constexpr Time kInfinity = std::numeric_limits<Time>::max();

inline bool is_finite(Time t) { return t != kInfinity; }

/// A schedule entry or query violates delivery > send.
class ScheduleInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trace relies on a delivery that the schedule does not provide.
class ScheduleIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScheduleEntry {
  ProcessId sender = 0;
  ProcessId receiver = 0;
  Time send_time = 0;
  Time delivery_time = kInfinity;

  auto operator<=>(const ScheduleEntry&) const = default;
};

/// Message schedule: when a message sent from p to q at time t would be
/// received. Finite table plus an optional constant-delay rule; anything
/// else is never delivered.
class MessageSchedule {
 public:
  MessageSchedule() = default;
  explicit MessageSchedule(int n) : n_(n) {}

  int size() const { return n_; }

  void set_entry(ProcessId p, ProcessId q, Time send, Time delivery);
  void set_default_delay(std::optional<Time> delay);
  std::optional<Time> default_delay() const { return default_delay_; }

  Time delivery_time(ProcessId p, ProcessId q, Time t) const;
  bool has_entry(ProcessId p, ProcessId q, Time t) const;

  /// Tabled entries in (sender, receiver, send_time) order.
  std::vector<ScheduleEntry> entries() const;
  /// Latest tabled send time, or -1 for an empty table.
  Time last_tabled_send() const;

 private:
  void check_link(ProcessId p, ProcessId q) const;

  int n_ = 0;
  std::map<std::tuple<ProcessId, ProcessId, Time>, Time> table_;
  std::optional<Time> default_delay_;
};

struct EventWindow {
  Time start = 0;
  Time finish = 0;

  auto operator<=>(const EventWindow&) const = default;
};

/// When an external event (e.g. START) happens at each participating process.
struct EventSchedule {
  std::string event = "START";
  std::map<ProcessId, EventWindow> entries;

  /// Adds an occurrence; finish defaults to start (instantaneous).
  void add(ProcessId p, Time start, std::optional<Time> finish = std::nullopt);
  ProcessSet participants() const;
};

inline const std::string kStartEvent = "START";
inline const std::string kReadyEvent = "READY";

struct MessageTuple {
  ProcessId sender = 0;
  ProcessId receiver = 0;
  Time send_time = 0;
  Time delivery_time = kInfinity;
  bool silent = false;

  auto operator<=>(const MessageTuple&) const = default;
};

struct EventTuple {
  ProcessId process = 0;
  std::string event;
  Time start = 0;
  Time finish = 0;

  auto operator<=>(const EventTuple&) const = default;
};

/// M part (communication and deliberate silences) plus E part (events).
struct RunFragment {
  int n = 0;
  std::vector<MessageTuple> messages;
  std::vector<EventTuple> events;

  void canonicalize();
  Time max_time() const;
  const EventTuple* find_event(ProcessId p, const std::string& event) const;
  bool operator==(const RunFragment&) const = default;
};

/// Restriction to send/start times within [t1, t2].
RunFragment window(const RunFragment& fragment, Time t1, Time t2);

/// Every delivery opportunity the schedule offers up to `horizon`, as
/// non-silent tuples (the fragment of a run that uses all of them).
RunFragment fragment_of(const MessageSchedule& schedule, Time horizon,
                        std::span<const EventSchedule> events = {});

class Trace;

/// M: one tuple per (sender, receiver, activation time), silent unless the
/// sender emitted on that link. E: one tuple per scheduled event occurrence.
RunFragment build_run_fragment(const Trace& trace, const MessageSchedule& schedule,
                               std::span<const EventSchedule> events);

inline constexpr int kUnbounded = -1;

/// Phases of `phase_length` ticks, one graph per phase. Inside phase i each
/// edge of G_i gets one opportunity per relay round (rounds = longest
/// simple path of G_i, two ticks each, delay 1), so every path of G_i
/// chains within its phase and every delivery lands before the next phase.
/// Graphs before `repeat_from` are played once; the rest repeat `repeat`
/// times or, with kUnbounded, until `horizon`.
MessageSchedule schedule_from_graph_sequence(int n, std::span<const DiGraph> seq,
                                             Time phase_length, int repeat, Time horizon,
                                             Time start = 0, std::size_t repeat_from = 0);

/// Ticks needed so that every simple path of `g` chains inside one phase.
Time min_phase_length(const DiGraph& g);

/// Longest simple path of `g`, in edges.
int longest_simple_path(const DiGraph& g);

}  // namespace frebels
