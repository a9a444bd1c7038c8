#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "strata/graph.hpp"
#include "strata/layering.hpp"

namespace strata {

/// Three-slot neighbourhood of one node: callers above, the ego, callees below.
///
/// `top` and `bottom` are sorted node indices of the graph the layer was built
/// from. They intersect exactly when the ego and a neighbour depend on each
/// other.
struct EgoLayer {
  NodeIndex ego = 0;
  std::vector<NodeIndex> top;
  std::vector<NodeIndex> bottom;

  bool operator==(const EgoLayer&) const = default;
};

/// One EgoLayer per graph node, indexed by node.
using EgoLayerSet = std::vector<EgoLayer>;

struct RecoveryConfig {
  double alpha = 1.0;           ///< weight of back-calls
  double beta = 1.0;            ///< weight of skip-calls
  std::size_t threshold = 2;    ///< layers smaller than this get merged
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  bool single_pass = false;     ///< one top-to-bottom optimization sweep only

  /// Throws ValidationError on negative weights, alpha + beta == 0,
  /// threshold == 0 or trials == 0.
  void validate() const;
};

struct RecoveryResult {
  LayeredArchitecture architecture;
  double score = 0.0;
  std::uint64_t seed_used = 0;
  std::size_t merged_layer_count_pre_optimization = 0;
};

EgoLayer build_ego_layer(const DependencyGraph& graph, NodeIndex ego);
/// Throws ValidationError when `ego` is not a node of `graph`.
EgoLayer build_ego_layer(const DependencyGraph& graph, std::string_view ego);

/// Throws ValidationError on an empty graph.
EgoLayerSet create_ego_layers(const DependencyGraph& graph);

/// Merges ego layers into one layered structure, visiting nodes in `order`.
///
/// The first node of `order` seeds a structure. Every node that is already
/// placed pushes its unplaced callers one layer up and its unplaced callees
/// one layer down; placed nodes never move, and unplaced nodes are revisited
/// on the next round. When a whole round places nothing, the next waiting
/// node seeds a new structure. Structures are finally stacked with their
/// bottom layers aligned. Throws ValidationError unless `order` is a
/// permutation of the graph's nodes.
LayeredArchitecture merge_ego_layers(const EgoLayerSet& ego_layers, const DependencyGraph& graph,
                                     std::span<const NodeIndex> order);

/// alpha * back-calls + beta * skip-calls.
double violation_score(const LayeredArchitecture& arch, const DependencyGraph& graph,
                       double alpha, double beta);

/// Folds layers smaller than `config.threshold` into a neighbour, picking the
/// side with the lower score (upward on ties). Runs to a fixed point unless
/// `config.single_pass` is set.
LayeredArchitecture optimize_layers(const LayeredArchitecture& arch, const DependencyGraph& graph,
                                    const RecoveryConfig& config);

/// Lexicographic node order shuffled with a generator seeded by `seed`.
std::vector<NodeIndex> shuffled_order(const DependencyGraph& graph, std::uint64_t seed);

/// Full pipeline, keeping the lowest-scoring of `config.trials` seeds
/// (seed, seed+1, ...); ties go to the lowest seed.
RecoveryResult recover(const DependencyGraph& graph, const RecoveryConfig& config = {});

namespace detail {

/// Placement state shared by the merge step and incremental updates: a level
/// per node (relative to its structure) and the structure it belongs to.
class LayerPlacement {
 public:
  explicit LayerPlacement(std::size_t node_count);

  bool placed(NodeIndex v) const { return structure_[v] >= 0; }
  void place(NodeIndex v, int structure, long level);
  int new_structure() { return structure_count_++; }

  /// Places the unplaced neighbours of an already placed ego.
  void expand(const EgoLayer& ego);

  /// Processes `queue` round-robin as described for merge_ego_layers.
  /// `seed_first` seeds a structure from the head of the queue before the
  /// first round.
  void run(const EgoLayerSet& ego_layers, std::vector<NodeIndex> queue, bool seed_first);

  /// Bottom-aligned union of all structures, top layer first.
  LayeredArchitecture to_architecture(const DependencyGraph& graph) const;

 private:
  std::vector<int> structure_;
  std::vector<long> level_;
  int structure_count_ = 0;
};

}  // namespace detail

}  // namespace strata
