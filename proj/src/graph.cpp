#include "frebels/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace frebels {

DiGraph::DiGraph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("graph size must be non-negative");
  adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

DiGraph DiGraph::complete(int n) {
  DiGraph g(n);
  for (ProcessId u = 0; u < n; ++u)
    for (ProcessId v = 0; v < n; ++v)
      if (u != v) g.add_edge(u, v);
  return g;
}

DiGraph DiGraph::cycle(int n) {
  DiGraph g(n);
  if (n < 2) return g;
  for (ProcessId u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

DiGraph DiGraph::from_edges(int n, std::span<const std::pair<ProcessId, ProcessId>> edges) {
  DiGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

DiGraph DiGraph::loops(int n, std::span<const ProcessId> participants) {
  DiGraph g(n);
  g.loops_ = true;
  for (ProcessId p : participants) g.add_edge(p, p);
  return g;
}

void DiGraph::check_vertex(ProcessId v) const {
  if (v < 0 || v >= n_)
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

void DiGraph::add_edge(ProcessId u, ProcessId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v && !loops_) throw std::invalid_argument("self-loops are only allowed in event graphs");
  if (u != v && loops_) throw std::invalid_argument("event graphs contain loops only");
  adj_[static_cast<std::size_t>(u * n_ + v)] = 1;
}

void DiGraph::remove_edge(ProcessId u, ProcessId v) {
  check_vertex(u);
  check_vertex(v);
  adj_[static_cast<std::size_t>(u * n_ + v)] = 0;
}

bool DiGraph::has_loops() const {
  for (ProcessId v = 0; v < n_; ++v)
    if (has_edge(v, v)) return true;
  return false;
}

std::size_t DiGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1));
}

std::vector<std::pair<ProcessId, ProcessId>> DiGraph::edges() const {
  std::vector<std::pair<ProcessId, ProcessId>> out;
  for (ProcessId u = 0; u < n_; ++u)
    for (ProcessId v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<ProcessId> DiGraph::out_neighbors(ProcessId u) const {
  check_vertex(u);
  std::vector<ProcessId> out;
  for (ProcessId v = 0; v < n_; ++v)
    if (has_edge(u, v)) out.push_back(v);
  return out;
}

std::vector<ProcessId> DiGraph::in_neighbors(ProcessId v) const {
  check_vertex(v);
  std::vector<ProcessId> out;
  for (ProcessId u = 0; u < n_; ++u)
    if (has_edge(u, v)) out.push_back(u);
  return out;
}

DiGraph DiGraph::without(std::span<const ProcessId> removed) const {
  DiGraph g = *this;
  for (ProcessId r : removed) {
    check_vertex(r);
    for (ProcessId x = 0; x < n_; ++x) {
      g.adj_[static_cast<std::size_t>(r * n_ + x)] = 0;
      g.adj_[static_cast<std::size_t>(x * n_ + r)] = 0;
    }
  }
  return g;
}

namespace {

// Unit-capacity flow network over split vertices: v_in = 2v, v_out = 2v+1.
class SplitNetwork {
 public:
  SplitNetwork(const DiGraph& g, ProcessId s, ProcessId t) : adj_(2 * g.size()) {
    const int n = g.size();
    for (ProcessId v = 0; v < n; ++v) {
      const int through = (v == s || v == t) ? n : 1;
      add_arc(2 * v, 2 * v + 1, through);
    }
    for (auto [u, v] : g.edges())
      if (u != v) add_arc(2 * u + 1, 2 * v, 1);
    source_ = 2 * s + 1;
    sink_ = 2 * t;
  }

  int augment(int limit) {
    int flow = 0;
    while (flow < limit && bfs_augment()) ++flow;
    return flow;
  }

  std::vector<Path> decompose() {
    std::vector<Path> paths;
    std::vector<int> used(arcs_.size(), 0);
    for (;;) {
      Path path{source_ / 2};
      int node = source_;
      bool found = false;
      while (node != sink_) {
        found = false;
        for (int id : adj_[node]) {
          Arc& a = arcs_[static_cast<std::size_t>(id)];
          if (a.capacity > 0 && a.flow - used[static_cast<std::size_t>(id)] > 0) {
            ++used[static_cast<std::size_t>(id)];
            node = a.to;
            found = true;
            break;
          }
        }
        if (!found) break;
        if (node % 2 == 0) path.push_back(node / 2);
      }
      if (!found) break;
      paths.push_back(std::move(path));
    }
    return paths;
  }

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
  };

  void add_arc(int from, int to, int capacity) {
    adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, capacity, 0});
    adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0, 0});
  }

  bool bfs_augment() {
    std::vector<int> via(adj_.size(), -1);
    std::vector<char> seen(adj_.size(), 0);
    std::deque<int> queue{source_};
    seen[static_cast<std::size_t>(source_)] = 1;
    while (!queue.empty() && !seen[static_cast<std::size_t>(sink_)]) {
      int node = queue.front();
      queue.pop_front();
      for (int id : adj_[static_cast<std::size_t>(node)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.capacity - a.flow > 0 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          via[static_cast<std::size_t>(a.to)] = id;
          queue.push_back(a.to);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(sink_)]) return false;
    for (int node = sink_; node != source_;) {
      int id = via[static_cast<std::size_t>(node)];
      arcs_[static_cast<std::size_t>(id)].flow += 1;
      arcs_[static_cast<std::size_t>(id ^ 1)].flow -= 1;
      node = arcs_[static_cast<std::size_t>(id ^ 1)].to;
    }
    return true;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  int source_ = 0;
  int sink_ = 0;
};

void check_endpoints(const DiGraph& g, ProcessId s, ProcessId t) {
  if (s < 0 || s >= g.size() || t < 0 || t >= g.size())
    throw std::invalid_argument("path endpoint out of range");
  if (s == t) throw std::invalid_argument("disjoint paths need distinct endpoints");
}

}  // namespace

DisjointPaths max_disjoint_paths(const DiGraph& g, ProcessId s, ProcessId t) {
  check_endpoints(g, s, t);
  SplitNetwork net(g, s, t);
  DisjointPaths result;
  result.count = net.augment(g.size());
  result.witness = net.decompose();
  std::sort(result.witness.begin(), result.witness.end());
  return result;
}

int count_disjoint_paths(const DiGraph& g, ProcessId s, ProcessId t, int limit) {
  check_endpoints(g, s, t);
  SplitNetwork net(g, s, t);
  return net.augment(limit);
}

bool is_strongly_connected(const DiGraph& g, std::span<const ProcessId> removed) {
  const int n = g.size();
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  for (ProcessId r : removed) gone[static_cast<std::size_t>(r)] = 1;
  ProcessId start = -1;
  int alive = 0;
  for (ProcessId v = 0; v < n; ++v)
    if (!gone[static_cast<std::size_t>(v)]) {
      if (start < 0) start = v;
      ++alive;
    }
  if (alive <= 1) return true;

  auto reach = [&](bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<ProcessId> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    int count = 1;
    while (!stack.empty()) {
      ProcessId u = stack.back();
      stack.pop_back();
      for (ProcessId v = 0; v < n; ++v) {
        if (gone[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)]) continue;
        if (forward ? g.has_edge(u, v) : g.has_edge(v, u)) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count;
  };
  return reach(true) == alive && reach(false) == alive;
}

bool is_k_connected(const DiGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("connectivity order must be at least 1");
  const int n = g.size();
  if (n <= k) return false;
  for (ProcessId u = 0; u < n; ++u)
    for (ProcessId v = 0; v < n; ++v)
      if (u != v && count_disjoint_paths(g, u, v, k) < k) return false;
  return true;
}

namespace {

std::vector<char> membership(int n, std::span<const ProcessId> set, const char* what) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (ProcessId p : set) {
    if (p < 0 || p >= n) throw std::invalid_argument(std::string(what) + " contains an unknown vertex");
    in[static_cast<std::size_t>(p)] = 1;
  }
  return in;
}

}  // namespace

bool is_strong_root(const DiGraph& g, std::span<const ProcessId> roots, int k) {
  if (roots.empty()) throw std::invalid_argument("strong root must be nonempty");
  if (k < 1) throw std::invalid_argument("strong root order must be at least 1");
  const int n = g.size();
  auto in_root = membership(n, roots, "root set");
  const auto distinct = std::count(in_root.begin(), in_root.end(), 1);
  if (distinct == n) return true;
  if (k > distinct) return false;

  // Auxiliary vertex w = n joined both ways to every root.
  DiGraph extended(n + 1);
  for (auto [u, v] : g.edges())
    if (u != v) extended.add_edge(u, v);
  const ProcessId w = n;
  for (ProcessId s = 0; s < n; ++s)
    if (in_root[static_cast<std::size_t>(s)]) {
      extended.add_edge(w, s);
      extended.add_edge(s, w);
    }
  for (ProcessId v = 0; v < n; ++v)
    if (!in_root[static_cast<std::size_t>(v)] && count_disjoint_paths(extended, w, v, k) < k)
      return false;
  return true;
}

bool is_co_root(const DiGraph& g, std::span<const ProcessId> members,
                std::span<const ProcessId> excluded, int k) {
  const int n = g.size();
  auto in_members = membership(n, members, "co-root");
  auto in_excluded = membership(n, excluded, "excluded set");
  for (ProcessId v = 0; v < n; ++v)
    if (in_members[static_cast<std::size_t>(v)] && in_excluded[static_cast<std::size_t>(v)])
      throw std::invalid_argument("co-root must not intersect the excluded set");
  for (ProcessId v = 0; v < n; ++v) {
    if (!in_members[static_cast<std::size_t>(v)]) continue;
    int degree = 0;
    for (ProcessId u = 0; u < n; ++u)
      if (u != v && !in_excluded[static_cast<std::size_t>(u)] && g.has_edge(u, v)) ++degree;
    if (degree < k) return false;
  }
  return true;
}

std::optional<ProcessSet> find_co_root(const DiGraph& g, std::span<const ProcessId> excluded,
                                       int k, int size) {
  if (size < 1) throw std::invalid_argument("co-root size must be at least 1");
  const int n = g.size();
  auto in_excluded = membership(n, excluded, "excluded set");
  // Membership of each vertex is independent, so the lexicographically
  // smallest qualifying set is the first `size` qualifying vertices.
  ProcessSet chosen;
  for (ProcessId v = 0; v < n && static_cast<int>(chosen.size()) < size; ++v) {
    if (in_excluded[static_cast<std::size_t>(v)]) continue;
    const ProcessId single[] = {v};
    if (is_co_root(g, single, excluded, k)) chosen.push_back(v);
  }
  if (static_cast<int>(chosen.size()) < size) return std::nullopt;
  return chosen;
}

DiGraph union_graph(std::span<const DiGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("union of an empty graph list");
  DiGraph out(graphs.front().size());
  for (const DiGraph& g : graphs) {
    if (g.size() != out.size()) throw std::invalid_argument("union over mismatched vertex sets");
    for (auto [u, v] : g.edges()) {
      if (u == v) throw std::invalid_argument("union of event graphs is not defined");
      out.add_edge(u, v);
    }
  }
  return out;
}

std::vector<Path> simple_paths(const DiGraph& g) {
  const int n = g.size();
  std::vector<Path> out;
  if (g.allows_loops()) {
    for (ProcessId v = 0; v < n; ++v)
      if (g.has_edge(v, v)) out.push_back({v, v});
    return out;
  }
  if (n > kMaxProcesses) throw std::invalid_argument("simple-path enumeration is capped at 16 processes");
  Path current;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::function<void(ProcessId)> extend = [&](ProcessId u) {
    for (ProcessId v = 0; v < n; ++v) {
      if (on_path[static_cast<std::size_t>(v)] || !g.has_edge(u, v)) continue;
      current.push_back(v);
      on_path[static_cast<std::size_t>(v)] = 1;
      out.push_back(current);
      extend(v);
      on_path[static_cast<std::size_t>(v)] = 0;
      current.pop_back();
    }
  };
  for (ProcessId s = 0; s < n; ++s) {
    current = {s};
    on_path[static_cast<std::size_t>(s)] = 1;
    extend(s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

bool is_simple_path(const Path& p, bool loops_are_simple) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] != p[j]) continue;
      if (!loops_are_simple || j != i + 1) return false;
      if (i > 0 && p[i - 1] == p[i]) return false;  // at most one loop per vertex
    }
  return true;
}

std::set<Path> path_concat(const std::set<Path>& first, const std::set<Path>& second,
                           bool loops_are_simple) {
  std::set<Path> out;
  for (const Path& a : first) {
    if (a.size() < 2) continue;
    for (const Path& b : second) {
      if (b.size() < 2 || b.front() != a.back()) continue;
      Path glued = a;
      glued.insert(glued.end(), b.begin() + 1, b.end());
      if (is_simple_path(glued, loops_are_simple)) out.insert(std::move(glued));
    }
  }
  return out;
}

std::vector<ProcessSet> subsets_of_size(int n, int k) {
  std::vector<ProcessSet> out;
  if (k < 0 || k > n) return out;
  ProcessSet current;
  std::function<void(ProcessId)> pick = [&](ProcessId from) {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (ProcessId v = from; v <= n - (k - static_cast<int>(current.size())); ++v) {
      current.push_back(v);
      pick(v + 1);
      current.pop_back();
    }
  };
  pick(0);
  return out;
}

std::string to_dot(const DiGraph& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (ProcessId v = 0; v < g.size(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

DiGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int declared = -1;
  int max_id = -1;
  std::vector<std::pair<ProcessId, ProcessId>> edges;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("graph line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok.front() == "digraph" || tok.front() == "}") continue;
    auto number = [&](const std::string& s) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(s, &used);
      } catch (const std::exception&) {
        fail("expected an integer, got '" + s + "'");
      }
      if (used != s.size() || value < 0) fail("expected a non-negative integer, got '" + s + "'");
      return value;
    };
    if (tok.front() == "n") {
      if (tok.size() != 2) fail("expected 'n <count>'");
      declared = number(tok[1]);
      continue;
    }
    if (tok.size() == 1) {
      max_id = std::max(max_id, number(tok[0]));
      continue;
    }
    if (tok.size() == 3 && tok[1] == "->") tok.erase(tok.begin() + 1);
    if (tok.size() != 2) fail("expected an edge 'u v' or 'u -> v;'");
    ProcessId u = number(tok[0]);
    ProcessId v = number(tok[1]);
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
  }
  const int n = declared >= 0 ? declared : max_id + 1;
  if (max_id >= n) throw std::invalid_argument("edge endpoint exceeds the declared vertex count");
  return DiGraph::from_edges(n, edges);
}

}  // namespace frebels
