#include "frebels/sim.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace frebels {

ProcessSet Adversary::byzantine() const {
  ProcessSet out;
  for (const auto& [p, policy] : policies) out.push_back(p);
  return out;
}

namespace {

struct Pending {
  ProcessId sender;
  Time send_time;
  ChainSet payload;
};

}  // namespace

void validate_config(const SimConfig& c) {
  if (c.f < 0) throw std::invalid_argument("f must be non-negative");
  if (c.n < 2 * c.f + 1)
    throw std::invalid_argument("n = " + std::to_string(c.n) + " violates n >= 2f+1 for f = " + std::to_string(c.f));
  if (c.n > kMaxProcesses) throw std::invalid_argument("at most 16 processes are supported");
  if (c.schedule.size() != c.n) throw std::invalid_argument("schedule is over a different process count");
  if (c.horizon < 0 || !is_finite(c.horizon)) throw std::invalid_argument("horizon must be finite");
  if (static_cast<int>(c.adversary.policies.size()) > c.f)
    throw std::invalid_argument("more byzantine processes than f = " + std::to_string(c.f));
  for (const auto& [p, policy] : c.adversary.policies) {
    if (p < 0 || p >= c.n) throw std::invalid_argument("byzantine process id out of range");
    auto check_targets = [&](const ProcessSet& targets) {
      for (ProcessId q : targets)
        if (q < 0 || q >= c.n) throw std::invalid_argument("adversary target out of range");
    };
    if (const auto* sw = std::get_if<SimulateWitnessPolicy>(&policy); sw && sw->targets) check_targets(*sw->targets);
    if (const auto* sel = std::get_if<SelectivePolicy>(&policy)) check_targets(sel->targets);
    if (const auto* sc = std::get_if<ScriptedPolicy>(&policy))
      for (const auto& s : sc->sends)
        if (s.to < 0 || s.to >= c.n || s.to == p) throw std::invalid_argument("scripted send to an invalid receiver");
  }
  for (const auto& es : c.events)
    for (const auto& [p, w] : es.entries)
      if (p < 0 || p >= c.n) throw std::invalid_argument("event scheduled at an unknown process");
}

namespace {

std::vector<ProcessId> activation_order(int n, std::uint64_t seed) {
  std::vector<ProcessId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Hand-rolled Fisher-Yates: std::shuffle is not portable across libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

bool in(const ProcessSet& set, ProcessId p) { return std::find(set.begin(), set.end(), p) != set.end(); }

class Executor {
 public:
  explicit Executor(const SimConfig& c) : c_(c), trace_(header(c)) {
    for (ProcessId p = 0; p < c.n; ++p) states_.push_back(initial_state(p, c.n));
    fired_.assign(static_cast<std::size_t>(c.n), false);
  }

  Trace run() {
    const auto order = activation_order(c_.n, c_.seed);
    for (Time t = 0; t <= c_.horizon; ++t)
      for (ProcessId p : order) activate(p, t);
    return std::move(trace_);
  }

 private:
  static TraceHeader header(const SimConfig& c) {
    return {c.n, c.f, c.protocol, c.adversary.byzantine(), c.seed, c.horizon};
  }

  const AdversaryPolicy* policy(ProcessId p) const {
    auto it = c_.adversary.policies.find(p);
    return it == c_.adversary.policies.end() ? nullptr : &it->second;
  }

  bool runs_protocol(ProcessId p) const {
    const auto* pol = policy(p);
    return pol == nullptr || std::holds_alternative<SimulateWitnessPolicy>(*pol) ||
           std::holds_alternative<SelectivePolicy>(*pol);
  }

  bool takes_real_events(ProcessId p) const {
    const auto* pol = policy(p);
    return pol == nullptr || std::holds_alternative<SelectivePolicy>(*pol);
  }

  // Applies one protocol step; returns the merged broadcast payload.
  ChainSet step(ProcessId p, Time t, const StepInput& input) {
    ChainSet out;
    if (!runs_protocol(p)) return out;
    auto result = protocol_step(c_.protocol, std::move(states_[static_cast<std::size_t>(p)]), input, c_.f);
    states_[static_cast<std::size_t>(p)] = std::move(result.state);
    for (auto& a : result.actions) {
      if (a.kind == ActionKind::Fire) {
        if (policy(p) == nullptr && !fired_[static_cast<std::size_t>(p)]) {
          fired_[static_cast<std::size_t>(p)] = true;
          trace_.add({t, p, RecordKind::Fire, -1, -1, {}, {}});
        }
      } else {
        out.insert(a.payload.begin(), a.payload.end());
      }
    }
    return out;
  }

  void activate(ProcessId p, Time t) {
    trace_.add({t, p, RecordKind::Activate, -1, -1, {}, {}});

    for (const auto& es : c_.events) {
      auto it = es.entries.find(p);
      if (it == es.entries.end()) continue;
      const EventWindow w = it->second;
      if (w.start == t) trace_.add({t, p, RecordKind::EventStart, -1, -1, es.event, {}});
      if (w.finish == t) {
        trace_.add({t, p, RecordKind::EventEnd, -1, -1, es.event, {}});
        if (es.event == kStartEvent && takes_real_events(p)) step(p, t, StartEvent{});
      }
    }
    if (const auto* pol = policy(p)) {
      if (const auto* sw = std::get_if<SimulateWitnessPolicy>(pol); sw && sw->start_at == t)
        step(p, t, StartEvent{});
    }

    if (auto it = queue_.find({t, p}); it != queue_.end()) {
      auto due = std::move(it->second);
      queue_.erase(it);
      std::stable_sort(due.begin(), due.end(), [](const Pending& a, const Pending& b) {
        return std::tie(a.send_time, a.sender) < std::tie(b.send_time, b.sender);
      });
      for (auto& m : due) {
        trace_.add({t, p, RecordKind::Deliver, m.sender, m.send_time, {}, m.payload});
        step(p, t, Delivery{m.sender, std::move(m.payload)});
      }
    }

    const ChainSet payload = step(p, t, Activation{});
    for (ProcessId q = 0; q < c_.n; ++q) {
      if (q == p) continue;
      ChainSet out = outgoing(p, q, t, payload);
      if (out.empty()) continue;
      const Time d = c_.schedule.delivery_time(p, q, t);
      if (!is_finite(d)) {
        trace_.add({t, p, RecordKind::Silent, q, -1, {}, std::move(out)});
        continue;
      }
      trace_.add({t, p, RecordKind::Send, q, d, {}, out});
      if (d <= c_.horizon) queue_[{d, q}].push_back({p, t, std::move(out)});
    }
  }

  ChainSet outgoing(ProcessId p, ProcessId q, Time t, const ChainSet& payload) const {
    const auto* pol = policy(p);
    if (pol == nullptr) return payload;
    if (const auto* sw = std::get_if<SimulateWitnessPolicy>(pol)) {
      if (t < sw->start_at || (sw->targets && !in(*sw->targets, q))) return {};
      return payload;
    }
    if (const auto* sel = std::get_if<SelectivePolicy>(pol)) {
      if (!in(sel->targets, q)) return {};
      ChainSet out = payload;
      if (t >= sel->from) out.insert(sel->forged.begin(), sel->forged.end());
      return out;
    }
    if (const auto* sc = std::get_if<ScriptedPolicy>(pol)) {
      ChainSet out;
      for (const auto& s : sc->sends)
        if (s.time == t && s.to == q) out.insert(s.payload.begin(), s.payload.end());
      return out;
    }
    return {};
  }

  const SimConfig& c_;
  Trace trace_;
  std::vector<ProcessState> states_;
  std::vector<bool> fired_;
  std::map<std::pair<Time, ProcessId>, std::vector<Pending>> queue_;
};

}  // namespace

Trace execute(const SimConfig& config) {
  validate_config(config);
  return Executor(config).run();
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Vacuous: return "VACUOUS";
    case Outcome::HorizonLimited: return "HORIZON_LIMITED";
  }
  return "?";
}

bool Verdict::any_fail() const {
  return correctness == Outcome::Fail || unforgeability == Outcome::Fail || relay == Outcome::Fail;
}

std::string Verdict::summary() const {
  std::string out = "correctness: " + std::string(to_string(correctness)) + '\n' +
                    "unforgeability: " + std::string(to_string(unforgeability)) + '\n' +
                    "relay: " + std::string(to_string(relay)) + '\n';
  if (!details.empty()) out += "details: " + details + '\n';
  return out;
}

Verdict check_verdict(const Trace& trace, int f, Time horizon, Time grace) {
  Verdict v;
  const ProcessSet correct = trace.correct();
  auto fired_by_horizon = [&](ProcessId p) { return trace.fire_time(p) <= horizon; };
  auto note = [&](const std::string& what) {
    if (!v.details.empty()) v.details += "; ";
    v.details += what;
  };

  if (static_cast<int>(trace.start_witnesses().size()) >= 2 * f + 1) {
    v.correctness = Outcome::Pass;
    for (ProcessId p : correct)
      if (!fired_by_horizon(p)) {
        v.correctness = Outcome::Fail;
        note("correct process " + std::to_string(p) + " did not fire despite 2f+1 witnesses");
        break;
      }
  }

  Time first_correct_start = kInfinity;
  for (const auto& r : trace.records())
    if (r.kind == RecordKind::EventStart && r.event == kStartEvent && !trace.is_byzantine(r.process)) {
      first_correct_start = std::min(first_correct_start, r.time);
    }
  for (const auto& r : trace.records())
    if (r.kind == RecordKind::Fire && !trace.is_byzantine(r.process) && r.time <= horizon &&
        r.time < first_correct_start) {
      v.unforgeability = Outcome::Fail;
      note("no START at a correct process before: " + to_string(r));
      break;
    }

  Time first_fire = kInfinity;
  ProcessId laggard = -1;
  for (ProcessId p : correct) {
    const Time t = trace.fire_time(p);
    if (t <= horizon) first_fire = std::min(first_fire, t);
    else if (laggard < 0) laggard = p;
  }
  if (is_finite(first_fire) && laggard >= 0) {
    if (first_fire > horizon - grace) {
      v.relay = Outcome::HorizonLimited;
    } else {
      v.relay = Outcome::Fail;
      note("correct process " + std::to_string(laggard) + " never fired after a correct FIRE at t=" +
           std::to_string(first_fire));
    }
  }
  return v;
}

}  // namespace frebels
