#include <set>
#include <sstream>

#include <json.hpp>

#include "strata/error.hpp"
#include "strata/graph.hpp"
#include "text_util.hpp"

namespace strata {

DependencyGraph parse_edge_list(std::string_view text) {
  Level level = Level::Package;
  std::vector<std::string> nodes;
  std::vector<NamedEdge> edges;
  std::size_t line_no = 0;
  for (const auto raw : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(raw).empty() || raw.front() == '#') continue;

    if (raw.front() == '%') {
      const auto directive = detail::trim(raw.substr(1));
      const auto space = directive.find_first_of(" \t");
      const auto key = directive.substr(0, space);
      const auto value =
          space == std::string_view::npos ? std::string_view{} : detail::trim(directive.substr(space));
      if (key == "level") {
        try {
          level = parse_level(value);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no);
        }
      } else if (key == "node") {
        if (value.empty()) throw ParseError("%node needs a name", line_no);
        nodes.emplace_back(value);
      } else {
        throw ParseError("unknown directive: %" + std::string(key), line_no);
      }
      continue;
    }

    const auto tab = raw.find('\t');
    if (tab == std::string_view::npos || raw.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected 2 tab-separated fields", line_no);
    }
    const auto from = detail::trim(raw.substr(0, tab));
    const auto to = detail::trim(raw.substr(tab + 1));
    if (from.empty() || to.empty()) throw ParseError("empty field", line_no);
    edges.emplace_back(std::string(from), std::string(to));
  }
  return DependencyGraph(level, std::move(nodes), std::move(edges));
}

std::string to_edge_list(const DependencyGraph& graph) {
  std::ostringstream out;
  out << "%level " << to_string(graph.level()) << '\n';
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (graph.in_degree(v) == 0 && graph.out_degree(v) == 0) out << "%node " << graph.name(v) << '\n';
  }
  for (const auto& e : graph.edges()) out << graph.name(e.from) << '\t' << graph.name(e.to) << '\n';
  return out.str();
}

DependencyGraph parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph JSON must be an object");

  Level level = Level::Package;
  if (doc.contains("level")) {
    if (!doc["level"].is_string()) throw ParseError("\"level\" must be a string");
    level = parse_level(doc["level"].get<std::string>());
  }

  std::vector<std::string> nodes;
  std::set<std::string> listed;
  for (const auto& node : doc.value("nodes", nlohmann::json::array())) {
    if (!node.is_object() || !node.contains("name") || !node["name"].is_string()) {
      throw ParseError("each node must be an object with a string \"name\"");
    }
    nodes.push_back(node["name"].get<std::string>());
    listed.insert(nodes.back());
  }

  std::vector<NamedEdge> edges;
  for (const auto& edge : doc.value("edges", nlohmann::json::array())) {
    if (!edge.is_object() || !edge.contains("from") || !edge.contains("to") ||
        !edge["from"].is_string() || !edge["to"].is_string()) {
      throw ParseError("each edge must be an object with string \"from\" and \"to\"");
    }
    auto from = edge["from"].get<std::string>();
    auto to = edge["to"].get<std::string>();
    for (const auto* end : {&from, &to}) {
      if (!listed.contains(*end)) throw ValidationError("unknown node: " + *end);
    }
    edges.emplace_back(std::move(from), std::move(to));
  }
  return DependencyGraph(level, std::move(nodes), std::move(edges));
}

std::string to_graph_json(const DependencyGraph& graph) {
  nlohmann::json doc;
  doc["level"] = to_string(graph.level());
  auto nodes = nlohmann::json::array();
  for (const auto& name : graph.nodes()) nodes.push_back({{"name", name}});
  doc["nodes"] = std::move(nodes);
  auto edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"from", graph.name(e.from)}, {"to", graph.name(e.to)}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

DependencyGraph parse_graph(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return parse_graph_json(text);
  return parse_edge_list(text);
}

namespace {

std::string quoted(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string export_dot(const DependencyGraph& graph,
                       const std::optional<LayeredArchitecture>& layering) {
  std::vector<std::size_t> layer;
  if (layering) layer = layer_assignment(graph, *layering);

  std::ostringstream out;
  out << "digraph dependencies {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box];\n";
  if (layering) {
    const auto& layers = layering->layers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
      out << "  subgraph layer_" << (i + 1) << " {\n";
      out << "    rank=same;\n";
      for (const auto& name : layers[i]) out << "    " << quoted(name) << ";\n";
      out << "  }\n";
    }
    // Invisible edges pin the vertical order of the rank groups.
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
      out << "  " << quoted(layers[i].front()) << " -> " << quoted(layers[i + 1].front())
          << " [style=invis];\n";
    }
  } else {
    for (const auto& name : graph.nodes()) out << "  " << quoted(name) << ";\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  " << quoted(graph.name(e.from)) << " -> " << quoted(graph.name(e.to));
    if (layering) {
      switch (classify_edge(layer[e.from], layer[e.to])) {
        case EdgeKind::Back: out << " [color=red]"; break;
        case EdgeKind::Skip: out << " [color=blue]"; break;
        default: break;
      }
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace strata
