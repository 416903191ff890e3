#include "frebels/trace.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace frebels {

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::Activate: return "ACTIVATE";
    case RecordKind::Deliver: return "DELIVER";
    case RecordKind::EventStart: return "EVENT_START";
    case RecordKind::EventEnd: return "EVENT_END";
    case RecordKind::Send: return "SEND";
    case RecordKind::Silent: return "SILENT";
    case RecordKind::Fire: return "FIRE";
  }
  return "?";
}

namespace {

RecordKind parse_kind(std::string_view s) {
  for (RecordKind k : {RecordKind::Activate, RecordKind::Deliver, RecordKind::EventStart,
                       RecordKind::EventEnd, RecordKind::Send, RecordKind::Silent, RecordKind::Fire})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown trace record kind '" + std::string(s) + "'");
}

template <typename Int>
Int parse_int(std::string_view s, std::string_view what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "' in trace");
  return value;
}

// "key=value" with the expected key.
std::string_view field(std::string_view token, std::string_view key) {
  if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=')
    throw std::invalid_argument("expected " + std::string(key) + "=... in trace, got '" + std::string(token) + "'");
  return token.substr(key.size() + 1);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_ids(const ProcessSet& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const TraceRecord& r) {
  std::string out = std::to_string(r.time) + ' ' + std::to_string(r.process) + ' ' + std::string(to_string(r.kind));
  switch (r.kind) {
    case RecordKind::Activate:
    case RecordKind::Fire:
      break;
    case RecordKind::Deliver:
      out += " from=" + std::to_string(r.peer) + " sent=" + std::to_string(r.peer_time) + ' ' + to_string(r.payload);
      break;
    case RecordKind::Send:
      out += " to=" + std::to_string(r.peer) + " at=" + std::to_string(r.peer_time) + ' ' + to_string(r.payload);
      break;
    case RecordKind::Silent:
      out += " to=" + std::to_string(r.peer) + ' ' + to_string(r.payload);
      break;
    case RecordKind::EventStart:
    case RecordKind::EventEnd:
      out += ' ' + r.event;
      break;
  }
  return out;
}

bool Trace::is_byzantine(ProcessId p) const {
  return std::binary_search(header_.byzantine.begin(), header_.byzantine.end(), p);
}

ProcessSet Trace::correct() const {
  ProcessSet out;
  for (ProcessId p = 0; p < header_.n; ++p)
    if (!is_byzantine(p)) out.push_back(p);
  return out;
}

ProcessSet Trace::start_witnesses() const {
  std::set<ProcessId> out;
  for (const auto& r : records_)
    if (r.kind == RecordKind::EventStart && r.event == kStartEvent) out.insert(r.process);
  return {out.begin(), out.end()};
}

Time Trace::fire_time(ProcessId p) const {
  for (const auto& r : records_)
    if (r.kind == RecordKind::Fire && r.process == p) return r.time;
  return kInfinity;
}

std::vector<std::string> Trace::local_view(ProcessId p) const {
  std::vector<std::string> out;
  for (const auto& r : records_) {
    if (r.process != p) continue;
    switch (r.kind) {
      case RecordKind::Activate:
        out.emplace_back("ACTIVATE");
        break;
      case RecordKind::Deliver:
        out.push_back("DELIVER from=" + std::to_string(r.peer) + ' ' + to_string(r.payload));
        break;
      case RecordKind::EventStart:
      case RecordKind::EventEnd:
        out.push_back(std::string(to_string(r.kind)) + ' ' + r.event);
        break;
      default:
        break;
    }
  }
  return out;
}

std::string Trace::local_view_text(ProcessId p) const {
  std::string out;
  for (const auto& line : local_view(p)) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string Trace::to_text() const {
  std::string out;
  out += "# n " + std::to_string(header_.n) + '\n';
  out += "# f " + std::to_string(header_.f) + '\n';
  out += "# protocol " + std::string(to_string(header_.protocol)) + '\n';
  out += "# byzantine " + join_ids(header_.byzantine) + '\n';
  out += "# seed " + std::to_string(header_.seed) + '\n';
  out += "# horizon " + std::to_string(header_.horizon) + '\n';
  for (const auto& r : records_) {
    out += to_string(r);
    out += '\n';
  }
  return out;
}

Trace Trace::parse(std::string_view text) {
  TraceHeader header;
  std::vector<TraceRecord> records;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    auto tokens = split_spaces(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "#") {
      if (tokens.size() < 2) continue;
      const std::string_view key = tokens[1];
      const std::string_view value = tokens.size() > 2 ? tokens[2] : std::string_view{};
      if (key == "n") header.n = parse_int<int>(value, "n");
      else if (key == "f") header.f = parse_int<int>(value, "f");
      else if (key == "protocol") header.protocol = parse_protocol(value);
      else if (key == "seed") header.seed = parse_int<std::uint64_t>(value, "seed");
      else if (key == "horizon") header.horizon = parse_int<Time>(value, "horizon");
      else if (key == "byzantine") {
        std::size_t i = 0;
        while (i < value.size()) {
          std::size_t j = value.find(',', i);
          if (j == std::string_view::npos) j = value.size();
          header.byzantine.push_back(parse_int<int>(value.substr(i, j - i), "byzantine id"));
          i = j + 1;
        }
      }
      continue;
    }
    if (tokens.size() < 3) throw std::invalid_argument("short trace line '" + std::string(line) + "'");
    TraceRecord r;
    r.time = parse_int<Time>(tokens[0], "time");
    r.process = parse_int<int>(tokens[1], "process");
    r.kind = parse_kind(tokens[2]);
    auto need = [&](std::size_t count) {
      if (tokens.size() != count) throw std::invalid_argument("malformed trace line '" + std::string(line) + "'");
    };
    switch (r.kind) {
      case RecordKind::Activate:
      case RecordKind::Fire:
        need(3);
        break;
      case RecordKind::Deliver:
        need(6);
        r.peer = parse_int<int>(field(tokens[3], "from"), "sender");
        r.peer_time = parse_int<Time>(field(tokens[4], "sent"), "send time");
        r.payload = parse_payload(tokens[5]);
        break;
      case RecordKind::Send:
        need(6);
        r.peer = parse_int<int>(field(tokens[3], "to"), "receiver");
        r.peer_time = parse_int<Time>(field(tokens[4], "at"), "delivery time");
        r.payload = parse_payload(tokens[5]);
        break;
      case RecordKind::Silent:
        need(5);
        r.peer = parse_int<int>(field(tokens[3], "to"), "receiver");
        r.payload = parse_payload(tokens[4]);
        break;
      case RecordKind::EventStart:
      case RecordKind::EventEnd:
        need(4);
        r.event = std::string(tokens[3]);
        break;
    }
    records.push_back(std::move(r));
  }
  Trace trace(std::move(header));
  for (auto& r : records) trace.add(std::move(r));
  return trace;
}

}  // namespace frebels
