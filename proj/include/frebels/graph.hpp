#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frebels {

using ProcessId = int;
using ProcessSet = std::vector<ProcessId>;  // sorted, unique
using Path = std::vector<ProcessId>;

// Simple-path enumeration is exponential; the checkers are meant for
// desk-scale process sets.
inline constexpr int kMaxProcesses = 16;

/// Directed graph on the process set {0, ..., n-1}.
///
/// At most one edge per ordered pair. Self-loops are rejected unless the
/// graph was built as an event graph (loops only), see `DiGraph::loops`.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(int n);

  static DiGraph complete(int n);
  static DiGraph cycle(int n);
  static DiGraph from_edges(int n, std::span<const std::pair<ProcessId, ProcessId>> edges);
  /// Graph whose only edges are the loops (p, p) for p in `participants`.
  static DiGraph loops(int n, std::span<const ProcessId> participants);

  int size() const { return n_; }
  bool allows_loops() const { return loops_; }

  void add_edge(ProcessId u, ProcessId v);
  void remove_edge(ProcessId u, ProcessId v);
  bool has_edge(ProcessId u, ProcessId v) const {
    return adj_[static_cast<std::size_t>(u * n_ + v)] != 0;
  }
  bool has_loops() const;
  std::size_t edge_count() const;

  /// Edges in lexicographic order.
  std::vector<std::pair<ProcessId, ProcessId>> edges() const;
  std::vector<ProcessId> out_neighbors(ProcessId u) const;
  std::vector<ProcessId> in_neighbors(ProcessId v) const;

  /// Subgraph induced by V \ removed, keeping vertex ids (removed vertices
  /// become isolated).
  DiGraph without(std::span<const ProcessId> removed) const;

  bool operator==(const DiGraph&) const = default;

 private:
  void check_vertex(ProcessId v) const;

  int n_ = 0;
  bool loops_ = false;
  std::vector<std::uint8_t> adj_;
};

struct DisjointPaths {
  int count = 0;
  std::vector<Path> witness;
};

/// Maximum number of internally vertex-disjoint s->t paths, with one
/// witnessing family. Unit-capacity vertex-split max-flow.
DisjointPaths max_disjoint_paths(const DiGraph& g, ProcessId s, ProcessId t);

/// Same as max_disjoint_paths(g, s, t).count but stops once `limit` paths
/// are found.
int count_disjoint_paths(const DiGraph& g, ProcessId s, ProcessId t, int limit);

/// True iff |V| > k and every ordered pair has k internally disjoint paths.
bool is_k_connected(const DiGraph& g, int k);

/// Strong connectivity of the subgraph induced by the vertices not in
/// `removed`.
bool is_strongly_connected(const DiGraph& g, std::span<const ProcessId> removed = {});

/// True iff every v outside `roots` is reached by k fully vertex-disjoint
/// paths starting in `roots`.
bool is_strong_root(const DiGraph& g, std::span<const ProcessId> roots, int k);

/// True iff every v in `members` has in-degree >= k in G \ excluded.
bool is_co_root(const DiGraph& g, std::span<const ProcessId> members,
                std::span<const ProcessId> excluded, int k);

/// Lexicographically smallest co-root of the given size, if any.
std::optional<ProcessSet> find_co_root(const DiGraph& g, std::span<const ProcessId> excluded,
                                       int k, int size);

DiGraph union_graph(std::span<const DiGraph> graphs);

/// All simple paths with at least one edge. Loops (v, v) of an event graph
/// are returned as two-element paths.
std::vector<Path> simple_paths(const DiGraph& g);

/// Path concatenation: glue p1 in `first` and p2 in `second` at a shared
/// vertex, keeping only simple results. With `loops_are_simple`, a vertex
/// may repeat in adjacent positions (an event hop) but nowhere else.
std::set<Path> path_concat(const std::set<Path>& first, const std::set<Path>& second,
                           bool loops_are_simple = false);

/// True iff no vertex repeats except in adjacent positions when
/// `loops_are_simple` is set.
bool is_simple_path(const Path& p, bool loops_are_simple = false);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<ProcessSet> subsets_of_size(int n, int k);

std::string to_dot(const DiGraph& g);

/// Parses an edge list: optional `n <count>` line, `u v` or `u -> v;`
/// lines, `#` comments; `digraph ... {` / `}` wrappers and bare `v;` node
/// lines are accepted so that to_dot output reads back.
DiGraph parse_graph(const std::string& text);

}  // namespace frebels
