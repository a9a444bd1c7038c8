#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/layering.hpp"

namespace strata {

/// Granularity of a dependency graph. Every node of one graph shares it.
enum class Level { Class, Package };

const char* to_string(Level level) noexcept;
/// Accepts "class" or "package"; throws ParseError otherwise.
Level parse_level(std::string_view text);

struct EntityId {
  std::string name;
  Level kind = Level::Package;

  bool operator==(const EntityId&) const = default;
};

using NodeIndex = std::uint32_t;

struct Edge {
  NodeIndex from = 0;
  NodeIndex to = 0;

  auto operator<=>(const Edge&) const = default;
};

using NamedEdge = std::pair<std::string, std::string>;

/// Immutable directed dependency graph. An edge u->v means "u depends on v".
///
/// Nodes are stored in lexicographic order, so node indices are a function of
/// the node set alone. Edges are deduplicated and sorted by (from, to).
class DependencyGraph {
 public:
  DependencyGraph() = default;

  /// Endpoints of `edges` are added to `nodes` implicitly. Throws
  /// ValidationError on self-loops and on names that are empty or contain
  /// whitespace.
  DependencyGraph(Level level, std::vector<std::string> nodes, std::vector<NamedEdge> edges);

  Level level() const noexcept { return level_; }
  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  std::span<const std::string> nodes() const noexcept { return names_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::string& name(NodeIndex v) const { return names_.at(v); }
  EntityId entity(NodeIndex v) const { return {name(v), level_}; }

  std::optional<NodeIndex> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  /// Throws ValidationError naming the entity when it is absent.
  NodeIndex index_of(std::string_view name) const;

  std::span<const NodeIndex> successors(NodeIndex v) const { return out_.at(v); }
  std::span<const NodeIndex> predecessors(NodeIndex v) const { return in_.at(v); }
  std::size_t out_degree(NodeIndex v) const { return out_.at(v).size(); }
  std::size_t in_degree(NodeIndex v) const { return in_.at(v).size(); }

  std::vector<NamedEdge> named_edges() const;

  bool operator==(const DependencyGraph& other) const {
    return level_ == other.level_ && names_ == other.names_ && edges_ == other.edges_;
  }

 private:
  Level level_ = Level::Package;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::vector<NodeIndex>> in_;
};

/// Maps every node of `graph` to its 0-based layer in `arch`. Throws
/// ValidationError listing the symmetric difference when the covered node
/// sets differ.
std::vector<std::size_t> layer_assignment(const DependencyGraph& graph,
                                          const LayeredArchitecture& arch);

// --- file formats -----------------------------------------------------------

/// TSV edge list: `from<TAB>to` per line, `#` comments, optional
/// `%level class|package` header, and `%node name` lines for isolated nodes.
DependencyGraph parse_edge_list(std::string_view text);
std::string to_edge_list(const DependencyGraph& graph);

/// JSON {"level": ..., "nodes": [{"name": ...}], "edges": [{"from", "to"}]}.
DependencyGraph parse_graph_json(std::string_view text);
std::string to_graph_json(const DependencyGraph& graph);

/// Picks the JSON or edge-list reader from the first non-blank character.
DependencyGraph parse_graph(std::string_view text);

/// Graphviz digraph. With a layering, each layer becomes a `rank=same` group
/// (top layer first), back-calls are drawn red and skip-calls blue.
std::string export_dot(const DependencyGraph& graph,
                       const std::optional<LayeredArchitecture>& layering = std::nullopt);

// --- analysis ---------------------------------------------------------------

struct CycleReport {
  /// Nontrivial strongly connected components, each sorted, ordered by first name.
  std::vector<std::vector<std::string>> cycles;
  /// Components spanning at least two layers; set only when a layering was given.
  std::optional<std::size_t> cross_layer_cycles;

  std::size_t scc_count() const noexcept { return cycles.size(); }
  bool operator==(const CycleReport&) const = default;
};

/// Strongly connected components in the order they are completed by Tarjan's
/// algorithm, which is a reverse topological order of the condensation.
std::vector<std::vector<NodeIndex>> strongly_connected_components(const DependencyGraph& graph);

CycleReport detect_cycles(const DependencyGraph& graph,
                          const std::optional<LayeredArchitecture>& layering = std::nullopt);

/// Node count of the longest path through the condensation, each component
/// weighted by its size. Throws ValidationError on an empty graph.
std::size_t dependency_depth(const DependencyGraph& graph);

/// Package owning a dot-qualified class name; "(default)" when there is no dot.
std::string package_of(std::string_view class_name);

/// Collapses a class-level graph onto packages, dropping intra-package edges.
DependencyGraph aggregate_to_packages(const DependencyGraph& class_graph);

}  // namespace strata
