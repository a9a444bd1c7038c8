#include <algorithm>
#include <limits>
#include <set>

#include "strata/error.hpp"
#include "strata/graph.hpp"

namespace strata {

std::vector<std::vector<NodeIndex>> strongly_connected_components(const DependencyGraph& graph) {
  // Iterative Tarjan; recursion depth would otherwise track the longest path.
  constexpr auto unvisited = std::numeric_limits<std::size_t>::max();
  const auto n = graph.node_count();
  std::vector<std::size_t> index(n, unvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeIndex> stack;
  std::vector<std::vector<NodeIndex>> components;
  std::size_t counter = 0;

  struct Frame {
    NodeIndex node;
    std::size_t next_child;
  };
  std::vector<Frame> call_stack;

  for (NodeIndex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      auto& frame = call_stack.back();
      const auto v = frame.node;
      const auto succ = graph.successors(v);
      if (frame.next_child < succ.size()) {
        const auto w = succ[frame.next_child++];
        if (index[w] == unvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        auto& component = components.emplace_back();
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const auto parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return components;
}

CycleReport detect_cycles(const DependencyGraph& graph,
                          const std::optional<LayeredArchitecture>& layering) {
  std::vector<std::size_t> layer;
  if (layering) layer = layer_assignment(graph, *layering);

  CycleReport report;
  std::size_t cross = 0;
  for (const auto& component : strongly_connected_components(graph)) {
    if (component.size() < 2) continue;
    auto& names = report.cycles.emplace_back();
    std::set<std::size_t> layers_touched;
    for (const auto v : component) {
      names.push_back(graph.name(v));
      if (layering) layers_touched.insert(layer[v]);
    }
    if (layers_touched.size() >= 2) ++cross;
  }
  std::sort(report.cycles.begin(), report.cycles.end());
  if (layering) report.cross_layer_cycles = cross;
  return report;
}

std::size_t dependency_depth(const DependencyGraph& graph) {
  if (graph.empty()) throw ValidationError("dependency depth of an empty graph");
  const auto components = strongly_connected_components(graph);
  std::vector<std::size_t> component_of(graph.node_count());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const auto v : components[c]) component_of[v] = c;
  }
  // Tarjan completes a component only after everything reachable from it, so
  // successors' longest paths are final by the time a component is visited.
  std::vector<std::size_t> longest(components.size(), 0);
  std::size_t best = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    std::size_t tail = 0;
    for (const auto v : components[c]) {
      for (const auto w : graph.successors(v)) {
        if (component_of[w] != c) tail = std::max(tail, longest[component_of[w]]);
      }
    }
    longest[c] = components[c].size() + tail;
    best = std::max(best, longest[c]);
  }
  return best;
}

std::string package_of(std::string_view class_name) {
  const auto dot = class_name.rfind('.');
  if (dot == std::string_view::npos) return "(default)";
  return std::string(class_name.substr(0, dot));
}

DependencyGraph aggregate_to_packages(const DependencyGraph& class_graph) {
  if (class_graph.level() != Level::Class) {
    throw ValidationError("aggregate_to_packages expects a class-level graph");
  }
  std::vector<std::string> packages;
  packages.reserve(class_graph.node_count());
  for (const auto& name : class_graph.nodes()) packages.push_back(package_of(name));

  std::vector<NamedEdge> edges;
  for (const auto& e : class_graph.edges()) {
    if (packages[e.from] != packages[e.to]) edges.emplace_back(packages[e.from], packages[e.to]);
  }
  return DependencyGraph(Level::Package, std::move(packages), std::move(edges));
}

}  // namespace strata
