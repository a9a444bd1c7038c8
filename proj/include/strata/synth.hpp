#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "strata/graph.hpp"
#include "strata/layering.hpp"

namespace strata {

struct SynthSpec {
  std::vector<std::size_t> layer_sizes;  ///< top layer first
  double p_adjacent = 0.4;               ///< edge from layer i to i+1, per node pair
  double p_skip = 0.0;                   ///< edge from layer i to j > i+1
  double p_back = 0.0;                   ///< edge from layer i to j < i
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthResult {
  DependencyGraph graph;
  LayeredArchitecture truth;
  std::size_t injected_back = 0;
  std::size_t injected_skip = 0;
};

/// Random layered graph with known ground truth. Nodes are named
/// `l{layer}_n{index}` (both 1-based). Every node below the top layer has a
/// caller in the layer directly above, and every node above the bottom layer
/// has a callee directly below; missing edges are forced after sampling.
SynthResult generate(const SynthSpec& spec);

}  // namespace strata
