#include "strata/graph.hpp"

#include <algorithm>
#include <sstream>

#include "strata/error.hpp"

namespace strata {

namespace {

void check_name(const std::string& name) {
  if (name.empty()) throw ValidationError("empty entity name");
  if (name.find_first_of(" \t\r\n\v\f") != std::string::npos) {
    throw ValidationError("entity name contains whitespace: '" + name + "'");
  }
}

}  // namespace

const char* to_string(Level level) noexcept {
  return level == Level::Class ? "class" : "package";
}

Level parse_level(std::string_view text) {
  if (text == "class") return Level::Class;
  if (text == "package") return Level::Package;
  throw ParseError("unknown level: " + std::string(text));
}

DependencyGraph::DependencyGraph(Level level, std::vector<std::string> nodes,
                                 std::vector<NamedEdge> edges)
    : level_(level), names_(std::move(nodes)) {
  for (const auto& [from, to] : edges) {
    if (from == to) throw ValidationError("self-loop: " + from);
    names_.push_back(from);
    names_.push_back(to);
  }
  for (const auto& name : names_) check_name(name);
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());

  edges_.reserve(edges.size());
  for (const auto& [from, to] : edges) edges_.push_back({*find(from), *find(to)});
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  out_.resize(names_.size());
  in_.resize(names_.size());
  for (const auto& e : edges_) {
    out_[e.from].push_back(e.to);
    in_[e.to].push_back(e.from);
  }
  for (auto& preds : in_) std::sort(preds.begin(), preds.end());
}

std::optional<NodeIndex> DependencyGraph::find(std::string_view name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

NodeIndex DependencyGraph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ValidationError("unknown node: " + std::string(name));
}

std::vector<NamedEdge> DependencyGraph::named_edges() const {
  std::vector<NamedEdge> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(names_[e.from], names_[e.to]);
  return out;
}

std::vector<std::size_t> layer_assignment(const DependencyGraph& graph,
                                          const LayeredArchitecture& arch) {
  constexpr auto unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> layer(graph.node_count(), unassigned);
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < arch.layer_count(); ++i) {
    for (const auto& name : arch.layers()[i]) {
      if (auto v = graph.find(name)) {
        layer[*v] = i;
      } else {
        extra.push_back(name);
      }
    }
  }
  std::vector<std::string> missing;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (layer[v] == unassigned) missing.push_back(graph.name(v));
  }
  if (!missing.empty() || !extra.empty()) {
    std::sort(extra.begin(), extra.end());
    std::ostringstream msg;
    msg << "layering does not cover the graph's nodes";
    if (!missing.empty()) {
      msg << "; missing from layering:";
      for (const auto& n : missing) msg << ' ' << n;
    }
    if (!extra.empty()) {
      msg << "; not in graph:";
      for (const auto& n : extra) msg << ' ' << n;
    }
    throw ValidationError(msg.str());
  }
  return layer;
}

}  // namespace strata
