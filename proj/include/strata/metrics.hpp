#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "strata/graph.hpp"
#include "strata/layering.hpp"

namespace strata {

struct ViolatingEdge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::Back;

  bool operator==(const ViolatingEdge&) const = default;
};

struct ViolationReport {
  std::size_t back_calls = 0;
  std::size_t skip_calls = 0;
  std::size_t adjacent_calls = 0;
  std::size_t intra_calls = 0;
  std::size_t edge_count = 0;
  double back_rate = 0.0;  ///< percent of all edges
  double skip_rate = 0.0;  ///< percent of all edges
  CycleReport cyclic;
  /// In graph edge order, each violating edge exactly once.
  std::vector<ViolatingEdge> violating_edges;
};

/// Throws ValidationError when `arch` does not cover exactly the graph's nodes.
ViolationReport count_violations(const LayeredArchitecture& arch, const DependencyGraph& graph);

/// Maps each predicted layer (0-based) to a truth layer (0-based).
using LayerAlignment = std::vector<std::size_t>;

/// Order-preserving alignment of predicted onto truth layers maximising the
/// total node overlap. Among optimal alignments the one that is
/// lexicographically smallest (earliest truth layers first) is returned.
LayerAlignment align_layers(const LayeredArchitecture& predicted, const LayeredArchitecture& truth);

struct LayerScore {
  std::size_t truth_layer = 0;  ///< 0-based
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct ClassificationReport {
  double precision = 0.0;  ///< macro average over truth layers
  double recall = 0.0;     ///< macro average over truth layers
  double f_score = 0.0;    ///< harmonic mean of the macro pair
  double accuracy = 0.0;   ///< percent of correctly labelled nodes
  std::vector<LayerScore> per_layer;
  LayerAlignment alignment;
};

ClassificationReport classification_metrics(const LayeredArchitecture& predicted,
                                            const LayeredArchitecture& truth);

struct TierDistribution {
  std::size_t bottom = 0;
  std::size_t middle = 0;
  std::size_t top = 0;

  bool operator==(const TierDistribution&) const = default;
};

/// First layer is Top, last is Bottom, the rest Middle. A single layer counts
/// entirely as Middle.
TierDistribution tier_distribution(const LayeredArchitecture& arch);

// --- report emission --------------------------------------------------------
// JSON keeps full precision; CSV and text tables print percentages and ratios
// with two decimals. CSV column order: back,skip,cyclic / recall,precision,
// f_score,accuracy / bottom,middle,top.

std::string violations_to_json(const ViolationReport& report);
std::string violations_to_csv(const ViolationReport& report);
std::string violations_to_table(const ViolationReport& report);

std::string classification_to_json(const ClassificationReport& report, const TierDistribution& tiers);
std::string classification_to_csv(const ClassificationReport& report, const TierDistribution& tiers);
std::string classification_to_table(const ClassificationReport& report, const TierDistribution& tiers);

}  // namespace strata
