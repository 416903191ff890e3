#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frebels/graph.hpp"
#include "frebels/protocol.hpp"
#include "frebels/schedule.hpp"

namespace frebels {

enum class RecordKind { Activate, Deliver, EventStart, EventEnd, Send, Silent, Fire };

std::string_view to_string(RecordKind kind);

/// One line of a run log. `peer`/`peer_time` carry the sender and send time
/// of a DELIVER, or the receiver and delivery time of a SEND; SILENT only
/// uses `peer`.
struct TraceRecord {
  Time time = 0;
  ProcessId process = 0;
  RecordKind kind = RecordKind::Activate;
  ProcessId peer = -1;
  Time peer_time = -1;
  std::string event;
  ChainSet payload;

  bool operator==(const TraceRecord&) const = default;
};

struct TraceHeader {
  int n = 0;
  int f = 0;
  Protocol protocol = Protocol::FR;
  ProcessSet byzantine;
  std::uint64_t seed = 0;
  Time horizon = 0;

  bool operator==(const TraceHeader&) const = default;
};

class Trace {
 public:
  Trace() = default;
  explicit Trace(TraceHeader header) : header_(std::move(header)) {}

  const TraceHeader& header() const { return header_; }
  const std::vector<TraceRecord>& records() const { return records_; }
  void add(TraceRecord record) { records_.push_back(std::move(record)); }

  bool is_byzantine(ProcessId p) const;
  ProcessSet correct() const;
  /// Processes with a START occurrence, whether correct or byzantine.
  ProcessSet start_witnesses() const;
  /// Time of p's FIRE, or kInfinity.
  Time fire_time(ProcessId p) const;

  /// Time-free projection at p: its activations, deliveries (sender and
  /// payload) and event records, in order.
  std::vector<std::string> local_view(ProcessId p) const;
  std::string local_view_text(ProcessId p) const;

  std::string to_text() const;
  static Trace parse(std::string_view text);

  bool operator==(const Trace&) const = default;

 private:
  TraceHeader header_;
  std::vector<TraceRecord> records_;
};

std::string to_string(const TraceRecord& record);

}  // namespace frebels
