#include "frebels/epistemic.hpp"

#include <algorithm>
#include <stdexcept>

#include "frebels/protocol.hpp"
#include "frebels/sim.hpp"

namespace frebels {

namespace {

ProcessState replay(const Trace& trace, ProcessId p, Time t) {
  const auto& h = trace.header();
  ProcessState state = initial_state(p, h.n);
  for (const auto& r : trace.records()) {
    if (r.time > t) break;
    if (r.process != p) continue;
    if (r.kind == RecordKind::EventEnd && r.event == kStartEvent) {
      state = protocol_step(h.protocol, std::move(state), StartEvent{}, h.f).state;
    } else if (r.kind == RecordKind::Deliver) {
      state = protocol_step(h.protocol, std::move(state), Delivery{r.peer, r.payload}, h.f).state;
    }
  }
  return state;
}

HopeChain to_hope(const MessageChain& chain, ProcessId holder) {
  HopeChain out;
  if (chain.relays.empty()) out.agents = {holder};
  else out.agents.assign(chain.relays.rbegin(), chain.relays.rend());
  return out;
}

// First time p holds each hope chain. Flooding state only grows, so this
// fully describes p's hope over time.
std::map<HopeChain, Time> first_hold_times(const Trace& trace, ProcessId p) {
  const auto& h = trace.header();
  ProcessState state = initial_state(p, h.n);
  std::map<HopeChain, Time> out;
  for (const auto& r : trace.records()) {
    if (r.process != p) continue;
    StepInput input;
    if (r.kind == RecordKind::EventEnd && r.event == kStartEvent) input = StartEvent{};
    else if (r.kind == RecordKind::Deliver) input = Delivery{r.peer, r.payload};
    else continue;
    state = protocol_step(h.protocol, std::move(state), input, h.f).state;
    for (const auto& c : state.H) out.emplace(to_hope(c, p), r.time);
  }
  return out;
}

std::uint32_t agent_mask(const HopeChain& c) {
  std::uint32_t mask = 0;
  for (ProcessId a : c.agents) {
    if (a < 0 || a >= 32) throw std::invalid_argument("hope chain agent out of range");
    mask |= 1U << a;
  }
  return mask;
}

std::string set_text(const ProcessSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + '}';
}

std::string chain_text(const HopeChain& c) {
  std::string out;
  for (ProcessId a : c.agents) out += "H" + std::to_string(a) + " ";
  return out + c.proposition;
}

}  // namespace

std::set<HopeChain> extract_hope_chains(const Trace& trace, ProcessId p, Time t) {
  if (p < 0 || p >= trace.header().n) throw std::invalid_argument("process id out of range");
  std::set<HopeChain> out;
  for (const auto& c : replay(trace, p, t).H) out.insert(to_hope(c, p));
  return out;
}

bool belief_gain(const std::set<HopeChain>& chains, int f) {
  if (chains.empty()) return false;
  const std::string& prop = chains.begin()->proposition;
  std::vector<std::uint32_t> masks;
  for (const auto& c : chains) {
    if (c.proposition != prop) throw std::invalid_argument("belief_gain over chains of different propositions");
    masks.push_back(agent_mask(c));
  }
  return max_disjoint_sets(masks, f + 1) >= f + 1;
}

RunFamily flood_family(const MessageSchedule& schedule, int f, Time horizon, std::uint64_t seed) {
  RunFamily family;
  family.n = schedule.size();
  family.f = f;
  family.horizon = horizon;
  for (const auto& t : subsets_of_size(family.n, 2 * f + 1)) {
    SimConfig c;
    c.n = family.n;
    c.f = f;
    c.protocol = Protocol::Flood;
    c.schedule = schedule;
    EventSchedule start;
    for (ProcessId p : t) start.add(p, 0);
    c.events = {start};
    c.seed = seed;
    c.horizon = horizon;
    family.traces.emplace(t, execute(c));
  }
  return family;
}

RunFamily flood_family(const DiGraph& g, int f) {
  const Time phase = min_phase_length(g);
  const Time horizon = static_cast<Time>(g.size() + 2) * phase;
  const DiGraph seq[] = {g};
  return flood_family(schedule_from_graph_sequence(g.size(), seq, phase, kUnbounded, horizon, 1), f, horizon);
}

HopeFormula HopeFormula::atom(ProcessSet world, ProcessId holder, HopeChain chain) {
  HopeFormula h;
  h.kind = Kind::Atom;
  h.world = std::move(world);
  h.holder = holder;
  h.chain = std::move(chain);
  return h;
}

HopeFormula HopeFormula::all(std::vector<HopeFormula> children) {
  HopeFormula h;
  h.kind = Kind::And;
  h.children = std::move(children);
  return h;
}

HopeFormula HopeFormula::any(std::vector<HopeFormula> children) {
  HopeFormula h;
  h.kind = Kind::Or;
  h.children = std::move(children);
  return h;
}

HopeFormula HopeFormula::implies(HopeFormula lhs, HopeFormula rhs) {
  HopeFormula h;
  h.kind = Kind::Implies;
  h.children = {std::move(lhs), std::move(rhs)};
  return h;
}

HopeFormula HopeFormula::eventually(HopeFormula child) {
  HopeFormula h;
  h.kind = Kind::Eventually;
  h.children = {std::move(child)};
  return h;
}

HopeFormula HopeFormula::always(HopeFormula child) {
  HopeFormula h;
  h.kind = Kind::Always;
  h.children = {std::move(child)};
  return h;
}

std::string to_string(const HopeFormula& h) {
  auto join = [&](std::string_view op) {
    if (h.children.empty()) return std::string(h.kind == HopeFormula::Kind::And ? "true" : "false");
    std::string out = "(";
    for (std::size_t i = 0; i < h.children.size(); ++i) {
      if (i) out += std::string(" ") + std::string(op) + " ";
      out += to_string(h.children[i]);
    }
    return out + ")";
  };
  switch (h.kind) {
    case HopeFormula::Kind::Atom:
      return "H" + std::to_string(h.holder) + "[" + chain_text(h.chain) + "]@" + set_text(h.world);
    case HopeFormula::Kind::And: return join("&");
    case HopeFormula::Kind::Or: return join("|");
    case HopeFormula::Kind::Implies: return "(" + to_string(h.children[0]) + " -> " + to_string(h.children[1]) + ")";
    case HopeFormula::Kind::Eventually: return "<>" + to_string(h.children[0]);
    case HopeFormula::Kind::Always: return "[]" + to_string(h.children[0]);
  }
  return "?";
}

namespace {

class Evaluator {
 public:
  Evaluator(const RunFamily& family, Time horizon) : family_(family), horizon_(horizon) {}

  std::vector<bool> eval(const HopeFormula& h) {
    const std::size_t len = static_cast<std::size_t>(horizon_ + 1);
    switch (h.kind) {
      case HopeFormula::Kind::Atom: {
        std::vector<bool> out(len, false);
        const auto& times = holds_for(h.world, h.holder);
        auto it = times.find(h.chain);
        if (it != times.end())
          for (Time t = std::max<Time>(it->second, 0); t <= horizon_; ++t) out[static_cast<std::size_t>(t)] = true;
        return out;
      }
      case HopeFormula::Kind::And: {
        std::vector<bool> out(len, true);
        for (const auto& c : h.children) {
          auto v = eval(c);
          for (std::size_t i = 0; i < len; ++i) out[i] = out[i] && v[i];
        }
        return out;
      }
      case HopeFormula::Kind::Or: {
        std::vector<bool> out(len, false);
        for (const auto& c : h.children) {
          auto v = eval(c);
          for (std::size_t i = 0; i < len; ++i) out[i] = out[i] || v[i];
        }
        return out;
      }
      case HopeFormula::Kind::Implies: {
        auto lhs = eval(h.children[0]);
        auto rhs = eval(h.children[1]);
        for (std::size_t i = 0; i < len; ++i) lhs[i] = !lhs[i] || rhs[i];
        return lhs;
      }
      case HopeFormula::Kind::Eventually: {
        auto v = eval(h.children[0]);
        for (std::size_t i = len - 1; i-- > 0;) v[i] = v[i] || v[i + 1];
        return v;
      }
      case HopeFormula::Kind::Always: {
        auto v = eval(h.children[0]);
        for (std::size_t i = len - 1; i-- > 0;) v[i] = v[i] && v[i + 1];
        return v;
      }
    }
    throw std::logic_error("unknown formula kind");
  }

 private:
  const std::map<HopeChain, Time>& holds_for(const ProcessSet& world, ProcessId p) {
    auto key = std::make_pair(world, p);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto trace = family_.traces.find(world);
    if (trace == family_.traces.end()) throw std::invalid_argument("formula refers to a run missing from the family: " + set_text(world));
    return cache_.emplace(key, first_hold_times(trace->second, p)).first->second;
  }

  const RunFamily& family_;
  Time horizon_;
  std::map<std::pair<ProcessSet, ProcessId>, std::map<HopeChain, Time>> cache_;
};

// All hope chains b could hold that originate at `origin` and avoid
// `blocked`, as agent lists (last relayer first, origin last).
void chains_from(int n, ProcessId origin, std::uint32_t blocked, std::vector<ProcessId>& walk,
                 std::vector<HopeChain>& out) {
  HopeChain c;
  c.agents.assign(walk.rbegin(), walk.rend());
  out.push_back(std::move(c));
  for (ProcessId x = 0; x < n; ++x) {
    if (blocked & (1U << x)) continue;
    walk.push_back(x);
    chains_from(n, origin, blocked | (1U << x), walk, out);
    walk.pop_back();
  }
}

void disjoint_families(const std::vector<std::vector<HopeChain>>& per_origin, std::size_t i, std::uint32_t used,
                       std::vector<HopeChain>& current, std::vector<std::vector<HopeChain>>& out) {
  if (i == per_origin.size()) {
    out.push_back(current);
    return;
  }
  for (const auto& c : per_origin[i]) {
    const std::uint32_t m = agent_mask(c);
    if (m & used) continue;
    current.push_back(c);
    disjoint_families(per_origin, i + 1, used | m, current, out);
    current.pop_back();
  }
}

void check_family(const RunFamily& family, int f) {
  if (f != family.f) throw std::invalid_argument("family was generated for a different f");
  if (family.n > kMaxProcesses) throw std::invalid_argument("formula expansion is capped at 16 processes");
  for (const auto& t : subsets_of_size(family.n, 2 * f + 1)) {
    auto it = family.traces.find(t);
    if (it == family.traces.end()) throw std::invalid_argument("family lacks the run for witnesses " + set_text(t));
    if (it->second.header().protocol != Protocol::Flood)
      throw std::invalid_argument("formula evaluation needs runs of the flooding reference protocol");
    if (!it->second.header().byzantine.empty())
      throw std::invalid_argument("formula evaluation needs byzantine-free runs");
  }
}

bool holds_within(const HopeFormula& h, const RunFamily& family, Time horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  return Evaluator(family, std::min(horizon, family.horizon)).eval(h).front();
}

}  // namespace

std::vector<bool> evaluate(const HopeFormula& formula, const RunFamily& family) {
  return Evaluator(family, family.horizon).eval(formula);
}

bool holds(const HopeFormula& formula, const RunFamily& family) { return evaluate(formula, family).front(); }

HopeFormula formula3_instance(const RunFamily& family, const ProcessSet& t, ProcessId b) {
  const int n = family.n;
  std::uint32_t t_mask = 0;
  for (ProcessId a : t) t_mask |= 1U << a;
  if (t_mask & (1U << b)) throw std::invalid_argument("b must lie outside T");

  std::vector<HopeFormula> antecedent;
  std::vector<std::vector<HopeChain>> per_origin;
  for (ProcessId a : t) {
    antecedent.push_back(HopeFormula::atom(t, a, HopeChain{{a}}));
    std::vector<ProcessId> walk{a};
    std::vector<HopeChain> chains;
    // Relays through other members of T could never be disjoint from
    // their own chains, so they are left out.
    chains_from(n, a, t_mask | (1U << b), walk, chains);
    per_origin.push_back(std::move(chains));
  }
  std::vector<std::vector<HopeChain>> families;
  std::vector<HopeChain> current;
  disjoint_families(per_origin, 0, 0, current, families);

  std::vector<HopeFormula> options;
  for (const auto& fam : families) {
    std::vector<HopeFormula> held;
    for (const auto& c : fam) held.push_back(HopeFormula::atom(t, b, c));
    options.push_back(HopeFormula::all(std::move(held)));
  }
  return HopeFormula::always(HopeFormula::implies(HopeFormula::all(std::move(antecedent)),
                                                  HopeFormula::eventually(HopeFormula::any(std::move(options)))));
}

HopeFormula formula6_instance(const RunFamily& family, const ProcessSet& b_set) {
  const int n = family.n;
  const int f = family.f;
  std::uint32_t b_mask = 0;
  for (ProcessId x : b_set) b_mask |= 1U << x;
  std::vector<HopeFormula> sigmas;
  for (const auto& sigma : subsets_of_size(n, f + 1)) {
    if (std::any_of(sigma.begin(), sigma.end(), [&](ProcessId x) { return b_mask & (1U << x); })) continue;
    std::vector<HopeFormula> members;
    for (ProcessId a : sigma) {
      std::vector<HopeFormula> deltas;
      for (const auto& delta : subsets_of_size(n, 2 * f + 1)) {
        if (std::any_of(delta.begin(), delta.end(), [&](ProcessId x) { return x == a || (b_mask & (1U << x)); }))
          continue;
        std::vector<HopeFormula> heard;
        for (ProcessId b : delta)
          heard.push_back(HopeFormula::implies(HopeFormula::atom(delta, b, HopeChain{{b}}),
                                               HopeFormula::eventually(HopeFormula::atom(delta, a, HopeChain{{b}}))));
        deltas.push_back(HopeFormula::all(std::move(heard)));
      }
      members.push_back(HopeFormula::any(std::move(deltas)));
    }
    sigmas.push_back(HopeFormula::all(std::move(members)));
  }
  return HopeFormula::always(HopeFormula::any(std::move(sigmas)));
}

FormulaReport formula3_report(const RunFamily& family) {
  check_family(family, family.f);
  FormulaReport report;
  report.name = "disjoint hope chains";
  for (const auto& t : subsets_of_size(family.n, 2 * family.f + 1))
    for (ProcessId b = 0; b < family.n; ++b) {
      if (std::binary_search(t.begin(), t.end(), b)) continue;
      const bool ok = holds(formula3_instance(family, t, b), family);
      report.instances.push_back({"T=" + set_text(t) + " b=" + std::to_string(b), ok});
      report.holds = report.holds && ok;
    }
  return report;
}

FormulaReport formula6_report(const RunFamily& family) {
  check_family(family, family.f);
  FormulaReport report;
  report.name = "co-root hope";
  for (const auto& b : subsets_of_size(family.n, family.f)) {
    const bool ok = holds(formula6_instance(family, b), family);
    report.instances.push_back({"B=" + set_text(b), ok});
    report.holds = report.holds && ok;
  }
  return report;
}

std::string FormulaReport::to_text() const {
  std::string out = name + ": " + (holds ? "true" : "false") + '\n';
  for (const auto& i : instances) out += "  " + i.label + ": " + (i.holds ? "pass" : "fail") + '\n';
  return out;
}

bool eval_formula3(const RunFamily& family, int f, Time horizon) {
  check_family(family, f);
  for (const auto& t : subsets_of_size(family.n, 2 * f + 1))
    for (ProcessId b = 0; b < family.n; ++b) {
      if (std::binary_search(t.begin(), t.end(), b)) continue;
      if (!holds_within(formula3_instance(family, t, b), family, horizon)) return false;
    }
  return true;
}

bool eval_formula6(const RunFamily& family, int f, Time horizon) {
  check_family(family, f);
  for (const auto& b : subsets_of_size(family.n, f))
    if (!holds_within(formula6_instance(family, b), family, horizon)) return false;
  return true;
}

}  // namespace frebels
