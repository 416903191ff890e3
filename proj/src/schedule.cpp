#include "frebels/schedule.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "frebels/trace.hpp"

namespace frebels {

void MessageSchedule::check_link(ProcessId p, ProcessId q) const {
  if (p < 0 || p >= n_ || q < 0 || q >= n_)
    throw std::invalid_argument("schedule link (" + std::to_string(p) + ", " + std::to_string(q) +
                                ") out of range");
}

void MessageSchedule::set_entry(ProcessId p, ProcessId q, Time send, Time delivery) {
  check_link(p, q);
  if (send < 0 || !is_finite(send)) throw std::invalid_argument("send time must be finite and non-negative");
  if (delivery <= send)
    throw ScheduleInvalid("schedule entry (" + std::to_string(p) + ", " + std::to_string(q) + ", " +
                          std::to_string(send) + ") delivers at " + std::to_string(delivery) +
                          ", not after the send time");
  table_[{p, q, send}] = delivery;
}

void MessageSchedule::set_default_delay(std::optional<Time> delay) {
  if (delay && (*delay < 1 || !is_finite(*delay)))
    throw ScheduleInvalid("default delay must be a positive finite number of ticks");
  default_delay_ = delay;
}

Time MessageSchedule::delivery_time(ProcessId p, ProcessId q, Time t) const {
  check_link(p, q);
  if (t < 0 || !is_finite(t)) throw std::invalid_argument("delivery_time needs a finite send time");
  if (auto it = table_.find({p, q, t}); it != table_.end()) {
    if (it->second <= t) throw ScheduleInvalid("schedule entry does not deliver after its send time");
    return it->second;
  }
  if (default_delay_) return t + *default_delay_;
  return kInfinity;
}

bool MessageSchedule::has_entry(ProcessId p, ProcessId q, Time t) const {
  return table_.contains({p, q, t});
}

std::vector<ScheduleEntry> MessageSchedule::entries() const {
  std::vector<ScheduleEntry> out;
  out.reserve(table_.size());
  for (const auto& [key, delivery] : table_) {
    auto [p, q, t] = key;
    out.push_back({p, q, t, delivery});
  }
  return out;
}

Time MessageSchedule::last_tabled_send() const {
  Time last = -1;
  for (const auto& [key, delivery] : table_) last = std::max(last, std::get<2>(key));
  return last;
}

void EventSchedule::add(ProcessId p, Time start, std::optional<Time> finish) {
  const Time end = finish.value_or(start);
  if (start < 0) throw std::invalid_argument("event start must be non-negative");
  if (!is_finite(end)) throw std::invalid_argument("an event that never finishes has no participant");
  if (end < start) throw std::invalid_argument("event finishes before it starts");
  if (!entries.emplace(p, EventWindow{start, end}).second)
    throw std::invalid_argument("event " + event + " happens at most once per process");
}

ProcessSet EventSchedule::participants() const {
  ProcessSet out;
  for (const auto& [p, w] : entries) out.push_back(p);
  return out;
}

void RunFragment::canonicalize() {
  std::sort(messages.begin(), messages.end(), [](const MessageTuple& a, const MessageTuple& b) {
    return std::tie(a.send_time, a.sender, a.receiver, a.delivery_time, a.silent) <
           std::tie(b.send_time, b.sender, b.receiver, b.delivery_time, b.silent);
  });
  messages.erase(std::unique(messages.begin(), messages.end()), messages.end());
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
}

Time RunFragment::max_time() const {
  Time last = 0;
  for (const auto& m : messages) last = std::max(last, m.send_time);
  for (const auto& e : events) last = std::max(last, e.start);
  return last;
}

const EventTuple* RunFragment::find_event(ProcessId p, const std::string& event) const {
  for (const auto& e : events)
    if (e.process == p && e.event == event) return &e;
  return nullptr;
}

RunFragment window(const RunFragment& fragment, Time t1, Time t2) {
  if (t1 > t2) throw std::invalid_argument("window bounds out of order");
  RunFragment out;
  out.n = fragment.n;
  for (const auto& m : fragment.messages)
    if (m.send_time >= t1 && m.send_time <= t2) out.messages.push_back(m);
  for (const auto& e : fragment.events)
    if (e.start >= t1 && e.start <= t2) out.events.push_back(e);
  return out;
}

namespace {

void append_events(RunFragment& out, std::span<const EventSchedule> events) {
  for (const auto& schedule : events)
    for (const auto& [p, w] : schedule.entries) out.events.push_back({p, schedule.event, w.start, w.finish});
}

}  // namespace

RunFragment fragment_of(const MessageSchedule& schedule, Time horizon,
                        std::span<const EventSchedule> events) {
  RunFragment out;
  out.n = schedule.size();
  if (schedule.default_delay()) {
    for (Time t = 0; t <= horizon; ++t)
      for (ProcessId p = 0; p < out.n; ++p)
        for (ProcessId q = 0; q < out.n; ++q)
          if (p != q) out.messages.push_back({p, q, t, schedule.delivery_time(p, q, t), false});
  }
  for (const auto& e : schedule.entries())
    if (e.send_time <= horizon && is_finite(e.delivery_time) && e.sender != e.receiver)
      out.messages.push_back({e.sender, e.receiver, e.send_time, e.delivery_time, false});
  append_events(out, events);
  out.canonicalize();
  return out;
}

RunFragment build_run_fragment(const Trace& trace, const MessageSchedule& schedule,
                               std::span<const EventSchedule> events) {
  RunFragment out;
  out.n = trace.header().n;
  std::set<std::tuple<Time, ProcessId, ProcessId>> emitted;
  for (const auto& r : trace.records()) {
    if (r.kind != RecordKind::Send) continue;
    const Time d = schedule.delivery_time(r.process, r.peer, r.time);
    if (!is_finite(d) || d != r.peer_time)
      throw ScheduleIncomplete("trace delivers (" + std::to_string(r.process) + ", " +
                               std::to_string(r.peer) + ", " + std::to_string(r.time) +
                               ") but the schedule does not");
    emitted.emplace(r.time, r.process, r.peer);
  }
  for (const auto& r : trace.records()) {
    if (r.kind != RecordKind::Activate) continue;
    for (ProcessId q = 0; q < out.n; ++q) {
      if (q == r.process) continue;
      const bool sent = emitted.contains({r.time, r.process, q});
      out.messages.push_back({r.process, q, r.time, schedule.delivery_time(r.process, q, r.time), !sent});
    }
  }
  append_events(out, events);
  out.canonicalize();
  return out;
}

int longest_simple_path(const DiGraph& g) {
  const int n = g.size();
  if (g.edge_count() == 0) return 0;
  if (n > kMaxProcesses) throw std::invalid_argument("longest path search is capped at 16 processes");
  int best = 0;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::function<void(ProcessId, int)> walk = [&](ProcessId u, int length) {
    best = std::max(best, length);
    if (best == n - 1) return;
    for (ProcessId v = 0; v < n && best < n - 1; ++v) {
      if (on_path[static_cast<std::size_t>(v)] || !g.has_edge(u, v)) continue;
      on_path[static_cast<std::size_t>(v)] = 1;
      walk(v, length + 1);
      on_path[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (ProcessId s = 0; s < n && best < n - 1; ++s) {
    on_path[static_cast<std::size_t>(s)] = 1;
    walk(s, 0);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  return best;
}

Time min_phase_length(const DiGraph& g) {
  return std::max<Time>(1, 2 * static_cast<Time>(longest_simple_path(g)));
}

MessageSchedule schedule_from_graph_sequence(int n, std::span<const DiGraph> seq,
                                             Time phase_length, int repeat, Time horizon,
                                             Time start, std::size_t repeat_from) {
  if (phase_length < 1) throw std::invalid_argument("phase length must be at least 1");
  if (!is_finite(horizon) || horizon < 0) throw std::invalid_argument("horizon must be finite");
  if (start < 0) throw std::invalid_argument("start time must be non-negative");
  if (repeat != kUnbounded && repeat < 0) throw std::invalid_argument("repeat must be >= 0 or unbounded");
  if (repeat_from > seq.size()) throw std::invalid_argument("repeat_from beyond the sequence");
  MessageSchedule schedule(n);
  if (seq.empty()) return schedule;

  std::vector<int> rounds;
  for (const DiGraph& g : seq) {
    if (g.size() != n) throw std::invalid_argument("graph sequence over mismatched vertex sets");
    if (g.has_loops()) throw std::invalid_argument("event graphs carry no message opportunities");
    rounds.push_back(longest_simple_path(g));
    if (2 * static_cast<Time>(rounds.back()) > phase_length)
      throw std::invalid_argument("phase length " + std::to_string(phase_length) +
                                  " cannot chain paths of " + std::to_string(rounds.back()) +
                                  " hops (needs " + std::to_string(2 * rounds.back()) + ")");
  }

  const std::size_t prefix = repeat_from;
  const std::size_t cycle = seq.size() - prefix;
  auto fits = [&](std::size_t phases) {
    return start + static_cast<Time>(phases) * phase_length <= horizon + 1;
  };
  std::size_t total = 0;
  if (repeat == kUnbounded) {
    if (!fits(seq.size()))
      throw std::invalid_argument("horizon too small for one pass of the graph sequence");
    total = prefix;
    if (cycle > 0)
      while (fits(total + 1)) ++total;
  } else {
    total = prefix + cycle * static_cast<std::size_t>(repeat);
    if (!fits(total)) throw std::invalid_argument("horizon too small for the requested repetitions");
  }

  for (std::size_t phase = 0; phase < total; ++phase) {
    const std::size_t index = phase < prefix ? phase : prefix + (phase - prefix) % cycle;
    const DiGraph& g = seq[index];
    const Time base = start + static_cast<Time>(phase) * phase_length;
    for (int r = 0; r < rounds[index]; ++r)
      for (auto [u, v] : g.edges()) schedule.set_entry(u, v, base + 2 * r, base + 2 * r + 1);
  }
  return schedule;
}

}  // namespace frebels
