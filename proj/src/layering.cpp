#include "strata/layering.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "strata/error.hpp"
#include "text_util.hpp"

namespace strata {

LayeredArchitecture::LayeredArchitecture(std::vector<std::vector<std::string>> layers)
    : layers_(std::move(layers)) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto& layer = layers_[i];
    if (layer.empty()) {
      throw ValidationError("layer " + std::to_string(i + 1) + " is empty");
    }
    std::sort(layer.begin(), layer.end());
    for (const auto& name : layer) {
      if (!seen.insert(name).second) {
        throw ValidationError("entity listed in more than one layer: " + name);
      }
    }
  }
}

std::size_t LayeredArchitecture::node_count() const noexcept {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.size();
  return total;
}

std::optional<std::size_t> LayeredArchitecture::layer_of(std::string_view name) const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (std::binary_search(layers_[i].begin(), layers_[i].end(), name)) return i;
  }
  return std::nullopt;
}

std::vector<std::string> LayeredArchitecture::nodes() const {
  std::vector<std::string> all;
  all.reserve(node_count());
  for (const auto& layer : layers_) all.insert(all.end(), layer.begin(), layer.end());
  std::sort(all.begin(), all.end());
  return all;
}

const char* to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case EdgeKind::Intra: return "intra";
    case EdgeKind::Adjacent: return "adjacent";
    case EdgeKind::Skip: return "skip";
    case EdgeKind::Back: return "back";
  }
  return "unknown";
}

LayeredArchitecture parse_layering_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) {
    throw ParseError("layering JSON must be an object with a \"layers\" array");
  }
  std::vector<std::vector<std::string>> layers;
  for (const auto& layer : doc["layers"]) {
    if (!layer.is_array()) throw ParseError("each layer must be an array of names");
    auto& out = layers.emplace_back();
    for (const auto& name : layer) {
      if (!name.is_string()) throw ParseError("layer members must be strings");
      out.push_back(name.get<std::string>());
    }
  }
  return LayeredArchitecture(std::move(layers));
}

LayeredArchitecture parse_layering_csv(std::string_view text) {
  std::map<std::size_t, std::vector<std::string>> by_index;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) throw ParseError("expected entity,layer_index", line_no);
    const auto entity = detail::trim(line.substr(0, comma));
    const auto index_text = detail::trim(line.substr(comma + 1));
    if (line_no == 1 && entity == "entity" && index_text == "layer_index") continue;
    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc{} || ptr != index_text.data() + index_text.size() || index == 0) {
      throw ParseError("layer index must be a positive integer", line_no);
    }
    if (entity.empty()) throw ParseError("empty entity name", line_no);
    by_index[index].emplace_back(entity);
  }
  // Indices may have gaps; only their order matters.
  std::vector<std::vector<std::string>> layers;
  for (auto& [index, names] : by_index) layers.push_back(std::move(names));
  return LayeredArchitecture(std::move(layers));
}

LayeredArchitecture parse_layering(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return parse_layering_json(text);
  return parse_layering_csv(text);
}

std::string layering_to_json(const LayeredArchitecture& arch) {
  nlohmann::json doc;
  doc["layers"] = arch.layers();
  return doc.dump(2) + "\n";
}

std::string layering_to_csv(const LayeredArchitecture& arch) {
  std::ostringstream out;
  out << "entity,layer_index\n";
  for (std::size_t i = 0; i < arch.layer_count(); ++i) {
    for (const auto& name : arch.layers()[i]) out << name << ',' << (i + 1) << '\n';
  }
  return out.str();
}

}  // namespace strata
