#include "frebels/abstraction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace frebels {

std::vector<AbstractionItem> AbstractionSeq::unroll(std::size_t depth) const {
  std::vector<AbstractionItem> out;
  for (std::size_t i = 0; i < items.size() && out.size() < depth; ++i) out.push_back(items[i]);
  if (!repeat_suffix || *repeat_suffix >= items.size()) return out;
  while (out.size() < depth)
    for (std::size_t i = *repeat_suffix; i < items.size() && out.size() < depth; ++i) out.push_back(items[i]);
  return out;
}

namespace {

constexpr Time kNoHop = -2;  // no usable tuple

// Per-link delivery opportunities, answering "earliest delivery among
// tuples sent strictly after `ready`".
class FragmentIndex {
 public:
  explicit FragmentIndex(const RunFragment& f) : n_(f.n), links_(static_cast<std::size_t>(f.n * f.n)) {
    for (const auto& m : f.messages) {
      if (m.silent || m.sender == m.receiver) continue;
      if (m.sender < 0 || m.sender >= n_ || m.receiver < 0 || m.receiver >= n_)
        throw std::invalid_argument("fragment tuple outside the process set");
      links_[static_cast<std::size_t>(m.sender * n_ + m.receiver)].push_back({m.send_time, m.delivery_time});
    }
    for (auto& link : links_) {
      std::sort(link.begin(), link.end());
      for (std::size_t i = link.size(); i-- > 1;) link[i - 1].second = std::min(link[i - 1].second, link[i].second);
    }
    for (const auto& e : f.events) events_[{e.process, e.event}] = {e.start, e.finish};
  }

  int size() const { return n_; }

  // Earliest delivery for a send after `ready`; kNoHop if nothing is sent
  // after it (kInfinity if only undelivered sends remain).
  Time hop(ProcessId u, ProcessId v, Time ready) const {
    if (ready == kInfinity) return kNoHop;
    const auto& link = links_[static_cast<std::size_t>(u * n_ + v)];
    auto it = std::upper_bound(link.begin(), link.end(), ready,
                               [](Time r, const std::pair<Time, Time>& entry) { return r < entry.first; });
    return it == link.end() ? kNoHop : it->second;
  }

  // Finish time of p's occurrence of `event` if it starts after `ready`.
  Time event_hop(ProcessId p, const std::string& event, Time ready) const {
    auto it = events_.find({p, event});
    if (it == events_.end() || ready == kInfinity || it->second.start <= ready) return kNoHop;
    return it->second.finish;
  }

  bool has_event(ProcessId p, const std::string& event) const { return events_.contains({p, event}); }

 private:
  int n_;
  std::vector<std::vector<std::pair<Time, Time>>> links_;
  std::map<std::pair<ProcessId, std::string>, EventWindow> events_;
};

void require_size(const DiGraph& g, int n) {
  if (g.size() != n) throw std::invalid_argument("graph and fragment are over different process sets");
}

bool path_closed(const FragmentIndex& index, const DiGraph& g) {
  if (g.has_loops()) throw std::invalid_argument("path-closedness is defined for loop-free graphs; use the communication checker");
  require_size(g, index.size());
  const int n = g.size();
  if (n > kMaxProcesses) throw std::invalid_argument("path enumeration is capped at 16 processes");
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  auto dfs = [&](auto&& self, ProcessId u, Time ready) -> bool {
    for (ProcessId v = 0; v < n; ++v) {
      if (v == u || on_path[static_cast<std::size_t>(v)] || !g.has_edge(u, v)) continue;
      const Time d = index.hop(u, v, ready);
      if (d == kNoHop) return false;
      on_path[static_cast<std::size_t>(v)] = 1;
      const bool ok = self(self, v, d);
      on_path[static_cast<std::size_t>(v)] = 0;
      if (!ok) return false;
    }
    return true;
  };
  for (ProcessId s = 0; s < n; ++s) {
    on_path[static_cast<std::size_t>(s)] = 1;
    const bool ok = dfs(dfs, s, -1);
    on_path[static_cast<std::size_t>(s)] = 0;
    if (!ok) return false;
  }
  return true;
}

struct Stage {
  const DiGraph* graph = nullptr;       // message stage
  const EventGraph* event = nullptr;    // event stage
};

// Walks every concatenated path stage by stage, carrying the greedy
// earliest-delivery time. A path ending in a stage >= `first_complete` is
// a member of that prefix's concatenation and must be feasible with a
// delivered (or event) last hop. Infeasible prefixes are carried along as
// `dead` because only completed paths are constrained.
class ConcatChecker {
 public:
  ConcatChecker(const FragmentIndex& index, std::vector<Stage> stages, std::size_t first_complete)
      : index_(index), stages_(std::move(stages)), first_complete_(first_complete),
        on_path_(static_cast<std::size_t>(index.size()), 0) {}

  bool run() {
    if (stages_.empty()) return true;
    for (ProcessId s = 0; s < index_.size(); ++s) {
      on_path_[static_cast<std::size_t>(s)] = 1;
      const bool ok = walk(0, s, -1, 0, false, false);
      on_path_[static_cast<std::size_t>(s)] = 0;
      if (!ok) return false;
    }
    return true;
  }

 private:
  bool after_hop(std::size_t j, ProcessId v, Time ready, int hops, bool dead, bool loop) {
    if (j >= first_complete_ && (dead || ready == kInfinity)) return false;
    return walk(j, v, ready, hops, dead, loop);
  }

  bool walk(std::size_t j, ProcessId u, Time ready, int hops, bool dead, bool last_loop) {
    const Stage& st = stages_[j];
    if (st.graph) {
      const DiGraph& g = *st.graph;
      for (ProcessId v = 0; v < g.size(); ++v) {
        if (v == u || on_path_[static_cast<std::size_t>(v)] || !g.has_edge(u, v)) continue;
        const Time d = dead ? kNoHop : index_.hop(u, v, ready);
        on_path_[static_cast<std::size_t>(v)] = 1;
        const bool ok = after_hop(j, v, d == kNoHop ? kInfinity : d, hops + 1, dead || d == kNoHop, false);
        on_path_[static_cast<std::size_t>(v)] = 0;
        if (!ok) return false;
      }
    } else if (hops == 0 && !last_loop &&
               std::binary_search(st.event->participants.begin(), st.event->participants.end(), u)) {
      const Time finish = dead ? kNoHop : index_.event_hop(u, st.event->event, ready);
      if (!after_hop(j, u, finish == kNoHop ? kInfinity : finish, 1, dead || finish == kNoHop, true)) return false;
    }
    if (hops >= 1 && j + 1 < stages_.size()) return walk(j + 1, u, ready, 0, dead, last_loop);
    return true;
  }

  const FragmentIndex& index_;
  std::vector<Stage> stages_;
  std::size_t first_complete_;
  std::vector<char> on_path_;
};

bool comm_check(const RunFragment& fragment, std::span<const AbstractionItem> seq, std::size_t first_complete) {
  FragmentIndex index(fragment);
  if (index.size() > kMaxProcesses) throw std::invalid_argument("path enumeration is capped at 16 processes");
  std::vector<Stage> stages;
  for (const auto& item : seq) {
    if (const auto* g = std::get_if<DiGraph>(&item)) {
      require_size(*g, index.size());
      if (!path_closed(index, *g)) return false;
      stages.push_back({g, nullptr});
    } else {
      const auto& e = std::get<EventGraph>(item);
      if (e.n != index.size()) throw std::invalid_argument("event graph and fragment are over different process sets");
      for (ProcessId p : e.participants)
        if (!index.has_event(p, e.event)) return false;
      stages.push_back({nullptr, &e});
    }
  }
  if (stages.empty()) return true;
  return ConcatChecker(index, std::move(stages), std::min(first_complete, seq.size() - 1)).run();
}

}  // namespace

bool is_path_closed(const RunFragment& fragment, const DiGraph& g) {
  return path_closed(FragmentIndex(fragment), g);
}

bool is_finite_abstraction(const RunFragment& fragment, std::span<const DiGraph> seq) {
  std::vector<AbstractionItem> items(seq.begin(), seq.end());
  for (const DiGraph& g : seq)
    if (g.has_loops()) throw std::invalid_argument("network abstractions carry no loops");
  if (items.empty()) return true;
  return comm_check(fragment, items, items.size() - 1);
}

bool is_finite_comm_abstraction(const RunFragment& fragment, std::span<const AbstractionItem> seq) {
  if (seq.empty()) return true;
  return comm_check(fragment, seq, seq.size() - 1);
}

bool check_dynamic(const RunFragment& fragment, const AbstractionSeq& seq, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  const auto items = seq.unroll(depth);
  if (items.empty()) return true;
  // Completing a path in stage j is exactly membership in prefix j+1, so
  // one walk covers every prefix.
  return comm_check(fragment, items, 0);
}

DiGraph relay_graph_from(const RunFragment& fragment, std::span<const ProcessId> sources, Time after) {
  const int n = fragment.n;
  DiGraph out(n);
  std::vector<Time> ready(static_cast<std::size_t>(n), kInfinity);
  for (ProcessId s : sources) {
    if (s < 0 || s >= n) throw std::invalid_argument("relay source out of range");
    ready[static_cast<std::size_t>(s)] = after - 1;
  }
  std::vector<MessageTuple> delivered;
  for (const auto& m : fragment.messages)
    if (!m.silent && is_finite(m.delivery_time) && m.sender != m.receiver) delivered.push_back(m);
  std::sort(delivered.begin(), delivered.end(), [](const MessageTuple& a, const MessageTuple& b) {
    return std::tie(a.send_time, a.sender, a.receiver) < std::tie(b.send_time, b.sender, b.receiver);
  });
  // A tuple sent at t is only enabled by deliveries before t, all of which
  // belong to tuples sent earlier, so one pass in send order suffices.
  for (const auto& m : delivered) {
    auto& r_u = ready[static_cast<std::size_t>(m.sender)];
    if (r_u == kInfinity || r_u >= m.send_time) continue;
    auto& r_v = ready[static_cast<std::size_t>(m.receiver)];
    r_v = std::min(r_v, m.delivery_time);
    if (!out.has_edge(m.sender, m.receiver)) out.add_edge(m.sender, m.receiver);
  }
  return out;
}

bool theorem3_holds(const RunFragment& fragment, std::span<const ProcessId> witnesses, int f) {
  if (static_cast<int>(witnesses.size()) < 2 * f + 1) return true;
  Time after = 0;
  for (ProcessId w : witnesses)
    if (const EventTuple* e = fragment.find_event(w, kStartEvent)) after = std::max(after, e->finish);
  const DiGraph relay = relay_graph_from(fragment, witnesses, after);
  return is_strong_root(relay, witnesses, 2 * f + 1);
}

SolvabilityReport theorem4_report(const DiGraph& g, int f) {
  if (f < 0) throw std::invalid_argument("f must be non-negative");
  SolvabilityReport report;
  report.f = f;
  report.connected = is_k_connected(g, 2 * f + 1);
  bool all = true;
  for (const auto& b : subsets_of_size(g.size(), f)) {
    auto c = find_co_root(g, b, 2 * f + 1, f + 1);
    all = all && c.has_value();
    report.co_roots.push_back({b, std::move(c)});
  }
  report.holds = report.connected && all;
  return report;
}

bool theorem4_holds(const DiGraph& g, int f) {
  if (f < 0) throw std::invalid_argument("f must be non-negative");
  if (!is_k_connected(g, 2 * f + 1)) return false;
  for (const auto& b : subsets_of_size(g.size(), f))
    if (!find_co_root(g, b, 2 * f + 1, f + 1)) return false;
  return true;
}

namespace {

std::string set_text(const ProcessSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + '}';
}

}  // namespace

std::string SolvabilityReport::verdict() const {
  if (holds) return "yes";
  return connected ? "no (co-root)" : "no (connectivity)";
}

std::string SolvabilityReport::to_text() const {
  std::string out = std::to_string(2 * f + 1) + "-connected: " + (connected ? "yes" : "no") + '\n';
  for (const auto& e : co_roots) {
    out += "co-root excluding " + set_text(e.excluded) + ": ";
    out += e.co_root ? set_text(*e.co_root) : std::string("none");
    out += '\n';
  }
  out += "solvable: " + verdict() + '\n';
  return out;
}

}  // namespace frebels
