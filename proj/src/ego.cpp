#include "strata/ego.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "strata/error.hpp"
#include "strata/random.hpp"

namespace strata {

void RecoveryConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ValidationError("alpha and beta must be non-negative");
  if (!(alpha + beta > 0.0)) throw ValidationError("alpha + beta must be positive");
  if (threshold == 0) throw ValidationError("threshold must be a positive integer");
  if (trials == 0) throw ValidationError("trials must be a positive integer");
}

EgoLayer build_ego_layer(const DependencyGraph& graph, NodeIndex ego) {
  if (ego >= graph.node_count()) throw ValidationError("unknown node index " + std::to_string(ego));
  const auto callers = graph.predecessors(ego);
  const auto callees = graph.successors(ego);
  return {ego, {callers.begin(), callers.end()}, {callees.begin(), callees.end()}};
}

EgoLayer build_ego_layer(const DependencyGraph& graph, std::string_view ego) {
  return build_ego_layer(graph, graph.index_of(ego));
}

EgoLayerSet create_ego_layers(const DependencyGraph& graph) {
  if (graph.empty()) throw ValidationError("cannot build ego layers of an empty graph");
  EgoLayerSet set;
  set.reserve(graph.node_count());
  for (NodeIndex v = 0; v < graph.node_count(); ++v) set.push_back(build_ego_layer(graph, v));
  return set;
}

namespace detail {

LayerPlacement::LayerPlacement(std::size_t node_count)
    : structure_(node_count, -1), level_(node_count, 0) {}

void LayerPlacement::place(NodeIndex v, int structure, long level) {
  structure_[v] = structure;
  level_[v] = level;
}

void LayerPlacement::expand(const EgoLayer& ego) {
  const auto structure = structure_[ego.ego];
  const auto level = level_[ego.ego];
  for (const auto u : ego.top) {
    if (!placed(u)) place(u, structure, level - 1);
  }
  for (const auto u : ego.bottom) {
    if (!placed(u)) place(u, structure, level + 1);
  }
}

void LayerPlacement::run(const EgoLayerSet& ego_layers, std::vector<NodeIndex> queue,
                         bool seed_first) {
  auto seed_head = [&] {
    const auto v = queue.front();
    queue.erase(queue.begin());
    if (!placed(v)) place(v, new_structure(), 0);
    expand(ego_layers[v]);
  };
  if (seed_first && !queue.empty()) seed_head();

  std::vector<NodeIndex> waiting;
  while (!queue.empty()) {
    bool progress = false;
    waiting.clear();
    for (const auto v : queue) {
      if (placed(v)) {
        expand(ego_layers[v]);
        progress = true;
      } else {
        waiting.push_back(v);
      }
    }
    queue.swap(waiting);
    if (!progress && !queue.empty()) seed_head();
  }
}

LayeredArchitecture LayerPlacement::to_architecture(const DependencyGraph& graph) const {
  std::vector<long> bottom_level(structure_count_, std::numeric_limits<long>::min());
  std::vector<long> top_level(structure_count_, std::numeric_limits<long>::max());
  for (std::size_t v = 0; v < structure_.size(); ++v) {
    if (structure_[v] < 0) continue;
    bottom_level[structure_[v]] = std::max(bottom_level[structure_[v]], level_[v]);
    top_level[structure_[v]] = std::min(top_level[structure_[v]], level_[v]);
  }
  long height = 0;
  for (int s = 0; s < structure_count_; ++s) {
    if (bottom_level[s] != std::numeric_limits<long>::min()) height = std::max(height, bottom_level[s] - top_level[s] + 1);
  }
  std::vector<std::vector<std::string>> layers(static_cast<std::size_t>(height));
  for (std::size_t v = 0; v < structure_.size(); ++v) {
    if (structure_[v] < 0) continue;
    const auto from_bottom = bottom_level[structure_[v]] - level_[v];
    layers[static_cast<std::size_t>(height - 1 - from_bottom)].push_back(graph.name(static_cast<NodeIndex>(v)));
  }
  std::erase_if(layers, [](const auto& layer) { return layer.empty(); });
  return LayeredArchitecture(std::move(layers));
}

}  // namespace detail

LayeredArchitecture merge_ego_layers(const EgoLayerSet& ego_layers, const DependencyGraph& graph,
                                     std::span<const NodeIndex> order) {
  const auto n = graph.node_count();
  if (ego_layers.size() != n) throw ValidationError("ego layer set does not match the graph");
  std::vector<bool> seen(n, false);
  for (const auto v : order) {
    if (v >= n || seen[v]) throw ValidationError("merge order is not a permutation of the graph's nodes");
    seen[v] = true;
  }
  if (order.size() != n) throw ValidationError("merge order is not a permutation of the graph's nodes");

  detail::LayerPlacement placement(n);
  placement.run(ego_layers, {order.begin(), order.end()}, true);
  return placement.to_architecture(graph);
}

namespace {

// Score of a per-node layer assignment, optionally with layers `merged` and
// `merged + 1` fused.
double score_assignment(const DependencyGraph& graph, const std::vector<std::size_t>& layer,
                        double alpha, double beta,
                        std::size_t merged = std::numeric_limits<std::size_t>::max()) {
  auto remap = [merged](std::size_t x) { return x > merged ? x - 1 : x; };
  std::size_t back = 0;
  std::size_t skip = 0;
  for (const auto& e : graph.edges()) {
    switch (classify_edge(remap(layer[e.from]), remap(layer[e.to]))) {
      case EdgeKind::Back: ++back; break;
      case EdgeKind::Skip: ++skip; break;
      default: break;
    }
  }
  return alpha * static_cast<double>(back) + beta * static_cast<double>(skip);
}

}  // namespace

double violation_score(const LayeredArchitecture& arch, const DependencyGraph& graph, double alpha,
                       double beta) {
  return score_assignment(graph, layer_assignment(graph, arch), alpha, beta);
}

LayeredArchitecture optimize_layers(const LayeredArchitecture& arch, const DependencyGraph& graph,
                                    const RecoveryConfig& config) {
  config.validate();
  auto layer = layer_assignment(graph, arch);
  std::vector<std::vector<NodeIndex>> layers(arch.layer_count());
  for (NodeIndex v = 0; v < graph.node_count(); ++v) layers[layer[v]].push_back(v);

  auto fuse = [&](std::size_t upper) {
    auto& into = layers[upper];
    into.insert(into.end(), layers[upper + 1].begin(), layers[upper + 1].end());
    layers.erase(layers.begin() + static_cast<std::ptrdiff_t>(upper) + 1);
    for (auto& l : layer) {
      if (l > upper) --l;
    }
  };

  bool changed = true;
  while (changed && layers.size() > 1) {
    changed = false;
    std::size_t c = 0;
    while (c < layers.size() && layers.size() > 1) {
      if (layers[c].size() >= config.threshold) {
        ++c;
        continue;
      }
      bool upward;
      if (c == 0) {
        upward = false;
      } else if (c + 1 == layers.size()) {
        upward = true;
      } else {
        const auto v1 = score_assignment(graph, layer, config.alpha, config.beta, c - 1);
        const auto v2 = score_assignment(graph, layer, config.alpha, config.beta, c);
        upward = v1 <= v2;
      }
      if (upward) {
        fuse(c - 1);  // the next unexamined layer slides into slot c
      } else {
        fuse(c);
        ++c;
      }
      changed = true;
    }
    if (config.single_pass) break;
  }

  std::vector<std::vector<std::string>> named;
  named.reserve(layers.size());
  for (const auto& l : layers) {
    auto& out = named.emplace_back();
    for (const auto v : l) out.push_back(graph.name(v));
  }
  return LayeredArchitecture(std::move(named));
}

std::vector<NodeIndex> shuffled_order(const DependencyGraph& graph, std::uint64_t seed) {
  std::vector<NodeIndex> order(graph.node_count());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  Rng rng(seed);
  shuffle(std::span<NodeIndex>(order), rng);
  return order;
}

RecoveryResult recover(const DependencyGraph& graph, const RecoveryConfig& config) {
  config.validate();
  const auto ego_layers = create_ego_layers(graph);

  RecoveryResult best;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = config.seed + t;
    const auto order = shuffled_order(graph, seed);
    auto merged = merge_ego_layers(ego_layers, graph, order);
    const auto merged_count = merged.layer_count();
    auto optimized = optimize_layers(merged, graph, config);
    const auto score = violation_score(optimized, graph, config.alpha, config.beta);
    if (t == 0 || score < best.score) {
      best = {std::move(optimized), score, seed, merged_count};
    }
  }
  return best;
}

}  // namespace strata
