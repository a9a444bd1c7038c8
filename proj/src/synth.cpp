#include "strata/synth.hpp"

#include <algorithm>

#include "strata/error.hpp"
#include "strata/random.hpp"

namespace strata {

void SynthSpec::validate() const {
  if (layer_sizes.empty()) throw ValidationError("synthetic spec needs at least one layer");
  if (std::any_of(layer_sizes.begin(), layer_sizes.end(), [](auto s) { return s == 0; })) {
    throw ValidationError("layer sizes must be positive");
  }
  for (const double p : {p_adjacent, p_skip, p_back}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probabilities must lie in [0, 1]");
  }
}

SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  const auto layer_count = spec.layer_sizes.size();

  std::vector<std::vector<std::string>> layers(layer_count);
  for (std::size_t i = 0; i < layer_count; ++i) {
    for (std::size_t j = 0; j < spec.layer_sizes[i]; ++j) {
      layers[i].push_back("l" + std::to_string(i + 1) + "_n" + std::to_string(j + 1));
    }
  }

  Rng rng(spec.seed);
  SynthResult result;
  std::vector<NamedEdge> edges;
  // Adjacent-edge bookkeeping for the connectivity repair.
  std::vector<std::vector<bool>> has_caller(layer_count), has_callee(layer_count);
  for (std::size_t i = 0; i < layer_count; ++i) {
    has_caller[i].assign(layers[i].size(), false);
    has_callee[i].assign(layers[i].size(), false);
  }

  for (std::size_t from = 0; from < layer_count; ++from) {
    for (std::size_t a = 0; a < layers[from].size(); ++a) {
      for (std::size_t to = 0; to < layer_count; ++to) {
        if (to == from) continue;
        const double p = to == from + 1 ? spec.p_adjacent : (to > from ? spec.p_skip : spec.p_back);
        for (std::size_t b = 0; b < layers[to].size(); ++b) {
          if (!bernoulli(rng, p)) continue;
          edges.emplace_back(layers[from][a], layers[to][b]);
          if (to == from + 1) {
            has_callee[from][a] = true;
            has_caller[to][b] = true;
          } else if (to > from) {
            ++result.injected_skip;
          } else {
            ++result.injected_back;
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i + 1 < layer_count; ++i) {
    for (std::size_t a = 0; a < layers[i].size(); ++a) {
      if (has_callee[i][a]) continue;
      const auto b = uniform_index(rng, layers[i + 1].size());
      edges.emplace_back(layers[i][a], layers[i + 1][b]);
      has_caller[i + 1][b] = true;
    }
  }
  for (std::size_t i = 1; i < layer_count; ++i) {
    for (std::size_t b = 0; b < layers[i].size(); ++b) {
      if (has_caller[i][b]) continue;
      const auto a = uniform_index(rng, layers[i - 1].size());
      edges.emplace_back(layers[i - 1][a], layers[i][b]);
    }
  }

  std::vector<std::string> nodes;
  for (const auto& layer : layers) nodes.insert(nodes.end(), layer.begin(), layer.end());
  result.graph = DependencyGraph(Level::Package, std::move(nodes), std::move(edges));
  result.truth = LayeredArchitecture(std::move(layers));
  return result;
}

}  // namespace strata
