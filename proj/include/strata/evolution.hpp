#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/ego.hpp"
#include "strata/graph.hpp"
#include "strata/layering.hpp"
#include "strata/metrics.hpp"

namespace strata {

/// Unordered clustering; a layering projects to one by forgetting layer order.
class Partition {
 public:
  Partition() = default;
  /// Throws ValidationError on empty or overlapping groups.
  explicit Partition(std::vector<std::vector<std::string>> groups);
  static Partition from_layers(const LayeredArchitecture& arch);

  const std::vector<std::vector<std::string>>& groups() const noexcept { return groups_; }
  std::vector<std::string> elements() const;
  /// Keeps only the listed elements, dropping groups that become empty.
  Partition restricted_to(const std::vector<std::string>& keep) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::vector<std::string>> groups_;  // each sorted; groups sorted
};

/// Minimum number of Move and Join operations turning `source` into `target`,
/// both restricted to their common elements. Throws ValidationError when they
/// share no element.
std::size_t mojo_distance(const Partition& source, const Partition& target);

/// Largest MoJo distance any partition of the same elements can have to `target`.
std::size_t max_mojo_distance(const Partition& target);

/// 100 * (1 - mojo / max_mojo) over the common elements; 100 when max_mojo is 0.
double mojofm(const Partition& source, const Partition& target);

/// Depth-discounted reach of a node, normalised by its out-degree and
/// clamped to 1: min(1, (1/k) * sum over reachable u of 1/dist(v, u)).
double node_impact(const DependencyGraph& graph, NodeIndex v);
double node_impact(const DependencyGraph& graph, std::string_view name);

struct Stability {
  double impact_pct = 0.0;
  double stability_pct = 100.0;  ///< impact_pct + stability_pct == 100 exactly
};

/// Throws ValidationError on an empty graph.
Stability stability(const DependencyGraph& graph);

/// Carries `previous` over to a new version of the graph: vanished nodes are
/// dropped, surviving nodes keep their layers, new nodes are placed through
/// their ego layers, then the result is optimised.
LayeredArchitecture incremental_update(const LayeredArchitecture& previous,
                                       const DependencyGraph& graph, const RecoveryConfig& config);

struct Version {
  std::string label;
  DependencyGraph graph;
};

using VersionSeries = std::vector<Version>;

/// Reads a JSON manifest `[{"label": ..., "graph_path": ...}]`. Relative
/// paths resolve against the manifest's directory.
VersionSeries load_manifest(const std::filesystem::path& manifest_path);

enum class EvolutionMode { Traditional, Incremental, Both };
EvolutionMode parse_evolution_mode(std::string_view text);

struct ModeColumns {
  LayeredArchitecture architecture;
  TierDistribution distribution;
  /// Unset for the first version and when consecutive versions share no node.
  std::optional<std::size_t> mojo_ops;
  std::optional<double> mojofm;
  bool reseeded = false;  ///< incremental mode only
};

struct EvolutionRow {
  std::string label;
  std::size_t old_count = 0;
  std::size_t new_count = 0;
  std::size_t total_count = 0;
  double changed_pct = 0.0;
  double impact_pct = 0.0;
  double stability_pct = 100.0;
  std::optional<ModeColumns> traditional;
  std::optional<ModeColumns> incremental;
};

struct EvolutionConfig {
  RecoveryConfig recovery;
  EvolutionMode mode = EvolutionMode::Both;
  double reseed_threshold_pct = 90.0;
};

/// Throws ValidationError on an empty series or duplicate labels.
std::vector<EvolutionRow> evolve_report(const VersionSeries& series, const EvolutionConfig& config);

std::string evolution_to_csv(const std::vector<EvolutionRow>& rows);
std::string evolution_to_json(const std::vector<EvolutionRow>& rows);
std::string evolution_to_table(const std::vector<EvolutionRow>& rows);

}  // namespace strata
