#include "frebels/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace frebels {

namespace {

struct Packer {
  std::vector<std::uint32_t> masks;
  int limit;
  int best = 0;

  void search(std::size_t i, std::uint32_t used, int taken) {
    if (best >= limit) return;
    if (taken > best) best = taken;
    if (i == masks.size()) return;
    if (taken + static_cast<int>(masks.size() - i) <= best) return;
    // Upper bound: remaining disjoint sets cannot exceed free vertices.
    const int free_vertices = 32 - std::popcount(used);
    if (taken + free_vertices <= best) return;
    if ((masks[i] & used) == 0) search(i + 1, used | masks[i], taken + 1);
    search(i + 1, used, taken);
  }
};

}  // namespace

int max_disjoint_sets(std::span<const std::uint32_t> masks, int limit) {
  if (limit <= 0) return 0;
  std::vector<std::uint32_t> sorted(masks.begin(), masks.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  int empty = 0;
  if (!sorted.empty() && sorted.front() == 0) {
    empty = 1;
    sorted.erase(sorted.begin());
  }
  // A set containing another nonempty set can always be swapped for it.
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t m : sorted) {
    bool dominated = false;
    for (std::uint32_t other : sorted)
      if (other != m && (other & m) == other) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(m);
  }
  std::stable_sort(minimal.begin(), minimal.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  Packer packer{std::move(minimal), limit - empty};
  if (packer.limit > 0) packer.search(0, 0, 0);
  return std::min(limit, packer.best + empty);
}

namespace {

std::uint32_t relay_mask(const MessageChain& chain) {
  std::uint32_t mask = 0;
  for (ProcessId id : chain.relays) {
    if (id < 0 || id >= 32) throw std::invalid_argument("relay id out of range for packing");
    mask |= 1U << id;
  }
  return mask;
}

}  // namespace

int count_disjoint(const ChainSet& chains, int limit) {
  if (chains.empty()) return 0;
  const Tag tag = chains.begin()->tag;
  std::vector<std::uint32_t> masks;
  masks.reserve(chains.size());
  for (const auto& c : chains) {
    if (c.tag != tag) throw std::invalid_argument("count_disjoint over mixed START/READY chains");
    masks.push_back(relay_mask(c));
  }
  return max_disjoint_sets(masks, limit);
}

bool has_disjoint(const ChainSet& chains, int threshold) {
  return count_disjoint(chains, threshold) >= threshold;
}

bool is_well_formed(const MessageChain& chain, int n) {
  if (static_cast<int>(chain.relays.size()) >= n) return false;
  std::uint32_t seen = 0;
  for (ProcessId id : chain.relays) {
    if (id < 0 || id >= n || id >= 32) return false;
    if (seen & (1U << id)) return false;
    seen |= 1U << id;
  }
  return true;
}

std::string to_string(const MessageChain& chain) {
  std::string out(1, chain.tag == Tag::Start ? 'S' : 'R');
  out += '[';
  for (std::size_t i = 0; i < chain.relays.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(chain.relays[i]);
  }
  out += ']';
  return out;
}

std::string to_string(const ChainSet& payload) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : payload) {
    if (!first) out += ',';
    first = false;
    out += to_string(c);
  }
  out += '}';
  return out;
}

namespace {

[[noreturn]] void bad_chain(std::string_view text) {
  throw std::invalid_argument("malformed chain text '" + std::string(text) + "'");
}

// Parses one chain starting at `pos`, advancing it past the closing ']'.
MessageChain parse_chain_at(std::string_view text, std::size_t& pos) {
  if (pos + 2 > text.size()) bad_chain(text);
  MessageChain chain;
  if (text[pos] == 'S') chain.tag = Tag::Start;
  else if (text[pos] == 'R') chain.tag = Tag::Ready;
  else bad_chain(text);
  if (text[pos + 1] != '[') bad_chain(text);
  pos += 2;
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    return chain;
  }
  while (true) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), id);
    if (ec != std::errc{}) bad_chain(text);
    pos = static_cast<std::size_t>(ptr - text.data());
    chain.relays.push_back(id);
    if (pos >= text.size()) bad_chain(text);
    if (text[pos] == ']') {
      ++pos;
      return chain;
    }
    if (text[pos] != ',') bad_chain(text);
    ++pos;
  }
}

}  // namespace

MessageChain parse_chain(std::string_view text) {
  std::size_t pos = 0;
  MessageChain chain = parse_chain_at(text, pos);
  if (pos != text.size()) bad_chain(text);
  return chain;
}

ChainSet parse_payload(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw std::invalid_argument("malformed payload text '" + std::string(text) + "'");
  ChainSet out;
  std::size_t pos = 1;
  const std::size_t end = text.size() - 1;
  if (pos == end) return out;
  std::string_view body = text.substr(0, end);
  while (true) {
    out.insert(parse_chain_at(body, pos));
    if (pos == end) return out;
    if (body[pos] != ',') throw std::invalid_argument("malformed payload text '" + std::string(text) + "'");
    ++pos;
  }
}

std::vector<std::uint8_t> encode_payload(const ChainSet& payload) {
  std::vector<std::uint8_t> out;
  for (const auto& c : payload) {
    if (c.relays.size() > 255) throw std::invalid_argument("chain too long for the wire format");
    out.push_back(c.tag == Tag::Start ? 'S' : 'R');
    out.push_back(static_cast<std::uint8_t>(c.relays.size()));
    for (ProcessId id : c.relays) {
      if (id < 0 || id > 255) throw std::invalid_argument("relay id does not fit the wire format");
      out.push_back(static_cast<std::uint8_t>(id));
    }
  }
  return out;
}

ChainSet decode_payload(std::span<const std::uint8_t> bytes) {
  ChainSet out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (pos + 2 > bytes.size()) throw std::invalid_argument("truncated chain header");
    MessageChain chain;
    if (bytes[pos] == 'S') chain.tag = Tag::Start;
    else if (bytes[pos] == 'R') chain.tag = Tag::Ready;
    else throw std::invalid_argument("unknown chain tag byte");
    const std::size_t len = bytes[pos + 1];
    pos += 2;
    if (pos + len > bytes.size()) throw std::invalid_argument("truncated chain body");
    for (std::size_t i = 0; i < len; ++i) chain.relays.push_back(bytes[pos + i]);
    pos += len;
    out.insert(std::move(chain));
  }
  return out;
}

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::FR: return "FR";
    case Protocol::FRR: return "FRR";
    case Protocol::Flood: return "FLOOD";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "FR") return Protocol::FR;
  if (name == "FRR") return Protocol::FRR;
  if (name == "FLOOD") return Protocol::Flood;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "' (expected FR, FRR or FLOOD)");
}

ProcessState initial_state(ProcessId pid, int n) {
  if (n < 1 || pid < 0 || pid >= n) throw std::invalid_argument("process id out of range");
  ProcessState s;
  s.pid = pid;
  s.n = n;
  return s;
}

namespace {

bool contains(const std::vector<ProcessId>& v, ProcessId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Stores temp.chain + temp.sendid for every acceptable chain of `tag` in
// the delivery. Chains naming the receiver are skipped (the protocol's own
// guard); malformed ones are dropped.
void absorb(const ProcessState& s, const Delivery& d, Tag tag, ChainSet& into) {
  if (d.sender < 0 || d.sender >= s.n || d.sender == s.pid) return;
  for (const auto& c : d.chains) {
    if (c.tag != tag || !is_well_formed(c, s.n)) continue;
    if (contains(c.relays, s.pid)) continue;
    if (contains(c.relays, d.sender)) continue;
    MessageChain extended = c;
    extended.relays.push_back(d.sender);
    into.insert(std::move(extended));
  }
}

void fire(StepResult& r) {
  r.state.fired = true;
  r.actions.push_back({ActionKind::Fire, {}});
}

void broadcast(StepResult& r, ChainSet payload) {
  if (!payload.empty()) r.actions.push_back({ActionKind::Broadcast, std::move(payload)});
}

}  // namespace

StepResult fr_step(ProcessState state, const StepInput& input, int f) {
  StepResult r{std::move(state), {}};
  ProcessState& s = r.state;
  if (std::holds_alternative<Activation>(input)) {
    broadcast(r, s.H);
    return r;
  }
  if (s.fired) {
    if (std::holds_alternative<StartEvent>(input)) s.witnessed = true;
    return r;
  }
  if (std::holds_alternative<StartEvent>(input)) s.witnessed = true;
  if (const auto* d = std::get_if<Delivery>(&input)) absorb(s, *d, Tag::Start, s.H);
  if (s.witnessed || has_disjoint(s.H, f + 1)) {
    s.H = {start_chain()};
    fire(r);
  }
  return r;
}

StepResult frr_step(ProcessState state, const StepInput& input, int f) {
  StepResult r{std::move(state), {}};
  ProcessState& s = r.state;
  if (std::holds_alternative<Activation>(input)) {
    if (s.ready) {
      broadcast(r, s.H);
      broadcast(r, s.V);
    } else {
      broadcast(r, s.wit ? ChainSet{start_chain()} : s.H);
      broadcast(r, s.V);
    }
    return r;
  }
  if (std::holds_alternative<StartEvent>(input)) s.witnessed = true;
  if (s.ready) return r;
  if (const auto* d = std::get_if<Delivery>(&input)) {
    absorb(s, *d, Tag::Start, s.H);
    absorb(s, *d, Tag::Ready, s.V);
  }
  if (!s.wit && (s.witnessed || has_disjoint(s.H, f + 1))) {
    s.wit = true;
    s.H.insert(start_chain());
  }
  if (has_disjoint(s.V, f + 1) || has_disjoint(s.H, 2 * f + 1)) {
    s.ready = true;
    s.H = {start_chain()};
    s.V = {ready_chain()};
    fire(r);
  }
  return r;
}

StepResult flood_step(ProcessState state, const StepInput& input, int f) {
  StepResult r{std::move(state), {}};
  ProcessState& s = r.state;
  if (std::holds_alternative<Activation>(input)) {
    ChainSet all = s.H;
    all.insert(s.V.begin(), s.V.end());
    broadcast(r, std::move(all));
    return r;
  }
  if (std::holds_alternative<StartEvent>(input)) s.witnessed = true;
  if (const auto* d = std::get_if<Delivery>(&input)) {
    absorb(s, *d, Tag::Start, s.H);
    absorb(s, *d, Tag::Ready, s.V);
  }
  if (!s.wit && (s.witnessed || has_disjoint(s.H, f + 1))) {
    s.wit = true;
    s.H.insert(start_chain());
  }
  if (!s.ready && (has_disjoint(s.V, f + 1) || has_disjoint(s.H, 2 * f + 1))) {
    s.ready = true;
    s.V.insert(ready_chain());
    fire(r);
  }
  return r;
}

StepResult protocol_step(Protocol protocol, ProcessState state, const StepInput& input, int f) {
  switch (protocol) {
    case Protocol::FR: return fr_step(std::move(state), input, f);
    case Protocol::FRR: return frr_step(std::move(state), input, f);
    case Protocol::Flood: return flood_step(std::move(state), input, f);
  }
  throw std::invalid_argument("unknown protocol");
}

}  // namespace frebels
