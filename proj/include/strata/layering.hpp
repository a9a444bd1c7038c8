#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

/// Ordered partition of entities into layers; index 0 is the top layer.
///
/// Layers are pairwise disjoint and never empty. Names inside each layer are
/// kept sorted so two architectures with the same content compare equal.
class LayeredArchitecture {
 public:
  LayeredArchitecture() = default;

  /// Throws ValidationError on an empty layer or a name listed twice.
  explicit LayeredArchitecture(std::vector<std::vector<std::string>> layers);

  const std::vector<std::vector<std::string>>& layers() const noexcept { return layers_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  std::size_t node_count() const noexcept;
  bool empty() const noexcept { return layers_.empty(); }

  /// 0-based layer index of `name`, if covered.
  std::optional<std::size_t> layer_of(std::string_view name) const;

  /// All covered names, sorted.
  std::vector<std::string> nodes() const;

  bool operator==(const LayeredArchitecture&) const = default;

 private:
  std::vector<std::vector<std::string>> layers_;
};

/// How one dependency edge relates to the layering.
enum class EdgeKind { Intra, Adjacent, Skip, Back };

/// Classifies an edge going from layer `from` to layer `to` (0-based, top first).
constexpr EdgeKind classify_edge(std::size_t from, std::size_t to) noexcept {
  if (to == from) return EdgeKind::Intra;
  if (to < from) return EdgeKind::Back;
  return to == from + 1 ? EdgeKind::Adjacent : EdgeKind::Skip;
}

const char* to_string(EdgeKind kind) noexcept;

// Layering file formats: JSON {"layers": [[...], ...]} top first, and CSV
// rows `entity,layer_index` with 1-based indices and an optional header.
LayeredArchitecture parse_layering_json(std::string_view text);
LayeredArchitecture parse_layering_csv(std::string_view text);
/// Picks the JSON or CSV reader from the first non-blank character.
LayeredArchitecture parse_layering(std::string_view text);
std::string layering_to_json(const LayeredArchitecture& arch);
std::string layering_to_csv(const LayeredArchitecture& arch);

}  // namespace strata
