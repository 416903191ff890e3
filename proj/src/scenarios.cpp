#include "frebels/scenarios.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace frebels {

namespace {

ProcessSet range(ProcessId from, ProcessId to) {  // [from, to)
  ProcessSet out;
  for (ProcessId x = from; x < to; ++x) out.push_back(x);
  return out;
}

bool contains(const ProcessSet& s, ProcessId x) { return std::binary_search(s.begin(), s.end(), x); }

// Can any of `sources` reach `target` in g with `removed` deleted?
bool reaches(const DiGraph& g, const ProcessSet& sources, ProcessId target, const ProcessSet& removed) {
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::deque<ProcessId> queue;
  for (ProcessId s : sources)
    if (!contains(removed, s)) {
      seen[static_cast<std::size_t>(s)] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const ProcessId u = queue.front();
    queue.pop_front();
    if (u == target) return true;
    for (ProcessId x : g.out_neighbors(u))
      if (!seen[static_cast<std::size_t>(x)] && !contains(removed, x)) {
        seen[static_cast<std::size_t>(x)] = 1;
        queue.push_back(x);
      }
  }
  return false;
}

int disjoint_from_set(const DiGraph& g, const ProcessSet& sources, ProcessId v, int limit) {
  const int n = g.size();
  DiGraph ext(n + 1);
  for (auto [a, b] : g.edges()) ext.add_edge(a, b);
  for (ProcessId s : sources) {
    ext.add_edge(n, s);
    ext.add_edge(s, n);
  }
  return count_disjoint_paths(ext, n, v, limit);
}

ProcessSet minus(const ProcessSet& a, const ProcessSet& b) {
  ProcessSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EventSchedule start_at(const ProcessSet& who, Time t) {
  EventSchedule e;
  for (ProcessId p : who) e.add(p, t);
  return e;
}

bool same_views(const Trace& a, const Trace& b, const ProcessSet& who) {
  return std::all_of(who.begin(), who.end(), [&](ProcessId x) { return a.local_view(x) == b.local_view(x); });
}

}  // namespace

FrimpScenario scenario_frimp(int n, int f, std::optional<DiGraph> network, Protocol protocol) {
  if (f < 1) throw std::invalid_argument("the construction needs f >= 1");
  if (n < 2 * f + 1) throw std::invalid_argument("n must be at least 2f+1");
  FrimpScenario sc;
  sc.s = range(0, 2 * f + 1);

  if (!network) {
    if (n < 2 * f + 2)
      throw std::invalid_argument("with n = 2f+1 every process witnesses, so the witnesses are trivially a strong root");
    DiGraph g(n);
    const ProcessId v = 2 * f + 1;
    const ProcessId w = 2 * f;
    for (ProcessId x = 0; x < 2 * f; ++x) g.add_edge(x, v);
    for (ProcessId u = f; u < 2 * f; ++u) g.add_edge(w, u);
    network = g;
  }
  if (network->size() != n) throw std::invalid_argument("network size differs from n");
  if (network->has_loops()) throw std::invalid_argument("the network cannot contain loops");
  sc.network = *network;
  const DiGraph& g = sc.network;
  const int k = 2 * f + 1;
  if (is_strong_root(g, sc.s, k))
    throw std::invalid_argument("the witnesses form a 2f+1-strong root of this network; no impossibility run exists");

  // v: first process with fewer than 2f+1 disjoint paths from S.
  sc.v = -1;
  for (ProcessId x = 0; x < n && sc.v < 0; ++x)
    if (!contains(sc.s, x) && disjoint_from_set(g, sc.s, x, k) < k) sc.v = x;

  // B: f witnesses, silent in r1 and correct in r2. U: smallest cut of
  // S \ B from v avoiding B, scripted in r2. In r2 every chain starts at U
  // (or at v, which repeats what it saw in r1), so v cannot tell the runs
  // apart as long as no b that might hear anything can reach v around U.
  bool found = false;
  for (const auto& b : subsets_of_size(n, f)) {
    if (!std::includes(sc.s.begin(), sc.s.end(), b.begin(), b.end())) continue;
    const ProcessSet rest = minus(sc.s, b);
    for (int size = 0; size <= f && !found; ++size)
      for (const auto& u : subsets_of_size(n, size)) {
        if (contains(u, sc.v) || std::any_of(u.begin(), u.end(), [&](ProcessId x) { return contains(b, x); })) continue;
        ProcessSet removed = u;
        removed.insert(removed.end(), b.begin(), b.end());
        std::sort(removed.begin(), removed.end());
        if (reaches(g, rest, sc.v, removed)) continue;
        ProcessSet talkers = u;
        talkers.push_back(sc.v);
        std::sort(talkers.begin(), talkers.end());
        const bool hidden = std::none_of(b.begin(), b.end(), [&](ProcessId x) {
          return reaches(g, talkers, x, {}) && reaches(g, {x}, sc.v, u);
        });
        if (!hidden) continue;
        sc.b = b;
        sc.u = u;
        found = true;
        break;
      }
    if (found) break;
  }
  if (!found)
    throw std::invalid_argument("no silent byzantine set with an f-cut to v exists in this network");

  const Time phase = min_phase_length(g);
  const Time horizon = static_cast<Time>(n + 2) * phase;
  const DiGraph seq[] = {g};
  const MessageSchedule schedule = schedule_from_graph_sequence(n, seq, phase, kUnbounded, horizon, 1);

  sc.r1.n = n;
  sc.r1.f = f;
  sc.r1.protocol = protocol;
  sc.r1.schedule = schedule;
  sc.r1.events = {start_at(sc.s, 0)};
  for (ProcessId x : sc.b) sc.r1.adversary.policies[x] = SilentPolicy{};
  sc.r1.horizon = horizon;

  // r2 replays whatever U sent in r1.
  const Trace t1 = execute(sc.r1);
  sc.r2 = sc.r1;
  sc.r2.events.clear();
  sc.r2.adversary.policies.clear();
  for (ProcessId x : sc.u) {
    ScriptedPolicy script;
    for (const auto& r : t1.records())
      if (r.process == x && r.kind == RecordKind::Send) script.sends.push_back({r.time, r.peer, r.payload});
    sc.r2.adversary.policies[x] = std::move(script);
  }
  return sc;
}

FrimpOutcome verify_frimp(const FrimpScenario& sc) {
  FrimpOutcome out;
  out.t1 = execute(sc.r1);
  out.t2 = execute(sc.r2);
  out.views_identical = out.t1.local_view(sc.v) == out.t2.local_view(sc.v);
  out.v1 = check_verdict(out.t1, sc.r1.f, sc.r1.horizon);
  out.v2 = check_verdict(out.t2, sc.r2.f, sc.r2.horizon);
  out.violation_forced = out.v1.correctness == Outcome::Fail || out.v2.unforgeability == Outcome::Fail;
  return out;
}

std::string FrimpOutcome::report() const {
  std::string out;
  out += std::string("local views identical at v: ") + (views_identical ? "yes" : "no") + '\n';
  out += "r1 correctness: " + std::string(to_string(v1.correctness)) + '\n';
  out += "r2 unforgeability: " + std::string(to_string(v2.unforgeability)) + '\n';
  out += std::string("violation forced: ") + (violation_forced ? "yes" : "no") + '\n';
  return out;
}

InfinityScenario scenario_infinity(int n, int f, int k, Protocol protocol) {
  if (f < 1) throw std::invalid_argument("the construction needs f >= 1");
  if (k < 1) throw std::invalid_argument("the finite graph sequence needs k >= 1");
  if (n < 2 * f + 2)
    throw std::invalid_argument("n = " + std::to_string(n) + " cannot hold p, B, D (f each) and a nonempty remainder");
  if (n > kMaxProcesses) throw std::invalid_argument("at most 16 processes are supported");
  InfinityScenario sc;
  sc.k = k;
  sc.p = 0;
  sc.b = range(1, f + 1);
  sc.d = range(f + 1, 2 * f + 1);
  sc.rest = range(2 * f + 1, n);

  DiGraph before = DiGraph::complete(n);
  for (ProcessId x : sc.b)
    for (ProcessId y = 0; y < n; ++y)
      if (before.has_edge(x, y)) before.remove_edge(x, y);
  DiGraph b_to_d(n);
  for (ProcessId x : sc.b)
    for (ProcessId y : sc.d) b_to_d.add_edge(x, y);
  ProcessSet inner = sc.d;
  inner.insert(inner.begin(), sc.p);
  DiGraph among(n);
  for (ProcessId x : inner)
    for (ProcessId y : inner)
      if (x != y) among.add_edge(x, y);
  DiGraph to_rest(n);
  ProcessSet informed = inner;
  informed.insert(informed.end(), sc.b.begin(), sc.b.end());
  for (ProcessId x : informed)
    for (ProcessId y : sc.rest) to_rest.add_edge(x, y);

  std::vector<DiGraph> seq(static_cast<std::size_t>(k), before);
  seq.push_back(b_to_d);
  seq.push_back(among);
  Time phase = 1;
  for (const auto& g : seq) phase = std::max(phase, min_phase_length(g));
  phase = std::max(phase, min_phase_length(to_rest));

  sc.t1 = 1 + static_cast<Time>(k) * phase;
  const Time end_r2 = 1 + static_cast<Time>(k + 3) * phase;
  const Time horizon = end_r2 + 2 * phase;
  const MessageSchedule finite = schedule_from_graph_sequence(n, seq, phase, 1, horizon, 1);
  seq.push_back(to_rest);
  const MessageSchedule extended = schedule_from_graph_sequence(n, seq, phase, 1, horizon, 1);

  sc.abstraction.push_back(EventGraph{n, kStartEvent, {sc.p}});
  for (int i = 0; i < k; ++i) sc.abstraction.emplace_back(before);

  SimConfig base;
  base.n = n;
  base.f = f;
  base.protocol = protocol;
  base.schedule = finite;
  base.horizon = horizon;

  sc.r = base;
  sc.r.events = {start_at({sc.p}, 0)};

  sc.r1 = base;
  sc.r1.adversary.policies[sc.p] = SimulateWitnessPolicy{0, std::nullopt};

  sc.r_prime = base;
  EventSchedule witnessed;
  witnessed.add(sc.p, 0);
  for (ProcessId x : sc.d) witnessed.add(x, sc.t1);
  sc.r_prime.events = {witnessed};
  for (ProcessId x : sc.b) sc.r_prime.adversary.policies[x] = SimulateWitnessPolicy{sc.t1, sc.d};

  sc.r2 = base;
  sc.r2.schedule = extended;
  EventSchedule all;
  all.add(sc.p, 0);
  for (ProcessId x : sc.d) all.add(x, sc.t1);
  for (ProcessId x : sc.b) all.add(x, sc.t1);
  sc.r2.events = {all};
  return sc;
}

bool InfinityOutcome::all_hold() const {
  return r_vs_r1 && r_prime_vs_r2 && r_prime_vs_r && abstraction_holds && relay_failed;
}

std::string InfinityOutcome::report() const {
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  std::string out;
  out += "r ~ r1 outside p: " + yn(r_vs_r1) + '\n';
  out += "r′ ~ r2 on D and p: " + yn(r_prime_vs_r2) + '\n';
  out += "r′ ~ r on the rest: " + yn(r_prime_vs_r) + '\n';
  out += "ST.G1..Gk finite communication abstraction: " + yn(abstraction_holds) + '\n';
  out += "relay in r′: " + std::string(to_string(verdict_r_prime.relay)) + '\n';
  out += std::string(relay_failed ? "Relay FAIL in r′" : "Relay held in r′") + '\n';
  return out;
}

InfinityOutcome verify_infinity(const InfinityScenario& sc) {
  InfinityOutcome out;
  const Trace r = execute(sc.r);
  const Trace r1 = execute(sc.r1);
  const Trace rp = execute(sc.r_prime);
  const Trace r2 = execute(sc.r2);
  const int n = sc.r.n;

  ProcessSet not_p = range(0, n);
  not_p.erase(std::remove(not_p.begin(), not_p.end(), sc.p), not_p.end());
  out.r_vs_r1 = same_views(r, r1, not_p);
  ProcessSet inner = sc.d;
  inner.insert(inner.begin(), sc.p);
  out.r_prime_vs_r2 = same_views(rp, r2, inner);
  out.r_prime_vs_r = same_views(rp, r, sc.rest);

  const EventSchedule st = sc.r.events.front();
  const EventSchedule events[] = {st};
  const RunFragment fragment = fragment_of(sc.r.schedule, sc.t1 - 1, events);
  out.abstraction_holds = is_finite_comm_abstraction(fragment, sc.abstraction);

  out.verdict_r_prime = check_verdict(rp, sc.r_prime.f, sc.r_prime.horizon);
  out.relay_failed = out.verdict_r_prime.relay == Outcome::Fail;
  return out;
}

}  // namespace frebels
