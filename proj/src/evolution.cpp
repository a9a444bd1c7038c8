#include "strata/evolution.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "strata/error.hpp"
#include "text_util.hpp"

namespace strata {

// --- Partition ----------------------------------------------------------------

Partition::Partition(std::vector<std::vector<std::string>> groups) : groups_(std::move(groups)) {
  std::set<std::string_view> seen;
  for (auto& g : groups_) {
    if (g.empty()) throw ValidationError("partition groups must be nonempty");
    std::sort(g.begin(), g.end());
    for (const auto& e : g) {
      if (!seen.insert(e).second) throw ValidationError("element in more than one group: " + e);
    }
  }
  std::sort(groups_.begin(), groups_.end());
}

Partition Partition::from_layers(const LayeredArchitecture& arch) { return Partition(arch.layers()); }

std::vector<std::string> Partition::elements() const {
  std::vector<std::string> all;
  for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  return all;
}

Partition Partition::restricted_to(const std::vector<std::string>& keep) const {
  std::set<std::string_view> wanted(keep.begin(), keep.end());
  std::vector<std::vector<std::string>> out;
  for (const auto& g : groups_) {
    std::vector<std::string> kept;
    for (const auto& e : g) {
      if (wanted.contains(e)) kept.push_back(e);
    }
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  return Partition(std::move(out));
}

// --- MoJo ---------------------------------------------------------------------

namespace {

std::vector<std::string> common_elements(const Partition& a, const Partition& b) {
  const auto left = a.elements();
  const auto right = b.elements();
  std::vector<std::string> common;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(common));
  if (common.empty()) throw ValidationError("partitions share no element");
  return common;
}

// Kuhn's augmenting-path matching on a bipartite graph given as adjacency
// lists from the left side.
std::size_t maximum_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                             std::size_t right_count) {
  constexpr auto free = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(right_count, free);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t left) -> bool {
    for (const auto right : adjacency[left]) {
      if (visited[right]) continue;
      visited[right] = 1;
      if (match_right[right] == free || self(self, match_right[right])) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t left = 0; left < adjacency.size(); ++left) {
    visited.assign(right_count, 0);
    if (augment(augment, left)) ++size;
  }
  return size;
}

// Both partitions must already cover the same elements.
std::size_t mojo_same_elements(const Partition& source, const Partition& target) {
  std::map<std::string_view, std::size_t> target_group;
  for (std::size_t j = 0; j < target.groups().size(); ++j) {
    for (const auto& e : target.groups()[j]) target_group[e] = j;
  }
  // Each source group is tagged with a target group of maximal overlap;
  // elements outside the tag must move, and groups sharing a tag must join.
  // Spreading tags over as many distinct targets as possible (a maximum
  // matching among maximal-overlap ties) minimises the joins.
  std::size_t n = 0;
  std::size_t kept = 0;
  std::vector<std::vector<std::size_t>> ties;
  for (const auto& group : source.groups()) {
    std::map<std::size_t, std::size_t> overlap;
    for (const auto& e : group) ++overlap[target_group.at(e)];
    std::size_t best = 0;
    for (const auto& [j, count] : overlap) best = std::max(best, count);
    auto& tie = ties.emplace_back();
    for (const auto& [j, count] : overlap) {
      if (count == best) tie.push_back(j);
    }
    n += group.size();
    kept += best;
  }
  const auto distinct = maximum_matching(ties, target.groups().size());
  const auto moves = n - kept;
  const auto joins = source.groups().size() - distinct;
  return moves + joins;
}

}  // namespace

std::size_t mojo_distance(const Partition& source, const Partition& target) {
  const auto common = common_elements(source, target);
  return mojo_same_elements(source.restricted_to(common), target.restricted_to(common));
}

std::size_t max_mojo_distance(const Partition& target) {
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (const auto& g : target.groups()) {
    sizes.push_back(g.size());
    n += g.size();
  }
  std::sort(sizes.begin(), sizes.end());
  std::size_t guaranteed = 0;
  for (const auto s : sizes) {
    if (guaranteed < s) ++guaranteed;
  }
  return n - guaranteed;
}

double mojofm(const Partition& source, const Partition& target) {
  const auto common = common_elements(source, target);
  const auto src = source.restricted_to(common);
  const auto tgt = target.restricted_to(common);
  const auto worst = max_mojo_distance(tgt);
  if (worst == 0) return 100.0;
  const auto distance = mojo_same_elements(src, tgt);
  return 100.0 * (1.0 - static_cast<double>(distance) / static_cast<double>(worst));
}

// --- stability ----------------------------------------------------------------

double node_impact(const DependencyGraph& graph, NodeIndex v) {
  if (v >= graph.node_count()) throw ValidationError("unknown node index " + std::to_string(v));
  const auto k = graph.out_degree(v);
  if (k == 0) return 0.0;
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(graph.node_count(), unseen);
  std::deque<NodeIndex> frontier{v};
  depth[v] = 0;
  double sum = 0.0;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop_front();
    for (const auto w : graph.successors(u)) {
      if (depth[w] != unseen) continue;
      depth[w] = depth[u] + 1;
      sum += 1.0 / static_cast<double>(depth[w]);
      frontier.push_back(w);
    }
  }
  return std::min(1.0, sum / static_cast<double>(k));
}

double node_impact(const DependencyGraph& graph, std::string_view name) {
  return node_impact(graph, graph.index_of(name));
}

Stability stability(const DependencyGraph& graph) {
  if (graph.empty()) throw ValidationError("stability of an empty graph");
  double total = 0.0;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) total += node_impact(graph, v);
  const double average = total / static_cast<double>(graph.node_count());
  Stability s;
  s.stability_pct = 100.0 - 100.0 * average;
  // Recomputing impact from the rounded stability makes the pair sum to 100
  // exactly in floating point.
  s.impact_pct = 100.0 - s.stability_pct;
  return s;
}

// --- incremental layering -------------------------------------------------------

namespace {

LayeredArchitecture incremental_once(const LayeredArchitecture& previous, const DependencyGraph& graph,
                                     const EgoLayerSet& ego_layers, const RecoveryConfig& config,
                                     std::uint64_t seed) {
  detail::LayerPlacement placement(graph.node_count());
  std::optional<int> existing;
  long level = 0;
  for (const auto& layer : previous.layers()) {
    bool any = false;
    for (const auto& name : layer) {
      if (auto v = graph.find(name)) {
        if (!existing) existing = placement.new_structure();
        placement.place(*v, *existing, level);
        any = true;
      }
    }
    if (any) ++level;
  }
  placement.run(ego_layers, shuffled_order(graph, seed), false);
  return optimize_layers(placement.to_architecture(graph), graph, config);
}

}  // namespace

LayeredArchitecture incremental_update(const LayeredArchitecture& previous,
                                       const DependencyGraph& graph, const RecoveryConfig& config) {
  config.validate();
  if (graph.empty()) throw ValidationError("incremental update onto an empty graph");
  const auto ego_layers = create_ego_layers(graph);

  LayeredArchitecture best;
  double best_score = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    auto arch = incremental_once(previous, graph, ego_layers, config, config.seed + t);
    const auto score = violation_score(arch, graph, config.alpha, config.beta);
    if (t == 0 || score < best_score) {
      best = std::move(arch);
      best_score = score;
    }
  }
  return best;
}

// --- series -----------------------------------------------------------------------

VersionSeries load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw ValidationError("cannot read manifest " + manifest_path.string());
  std::ostringstream buf;
  buf << in.rdbuf();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid manifest JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("manifest must be a JSON array");

  VersionSeries series;
  const auto base = manifest_path.parent_path();
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("label") || !entry.contains("graph_path") ||
        !entry["label"].is_string() || !entry["graph_path"].is_string()) {
      throw ParseError("manifest entries need string \"label\" and \"graph_path\"");
    }
    std::filesystem::path path = entry["graph_path"].get<std::string>();
    if (path.is_relative()) path = base / path;
    std::ifstream graph_in(path, std::ios::binary);
    if (!graph_in) throw ValidationError("cannot read graph " + path.string());
    std::ostringstream graph_text;
    graph_text << graph_in.rdbuf();
    series.push_back({entry["label"].get<std::string>(), parse_graph(graph_text.str())});
  }
  return series;
}

EvolutionMode parse_evolution_mode(std::string_view text) {
  if (text == "traditional") return EvolutionMode::Traditional;
  if (text == "incremental") return EvolutionMode::Incremental;
  if (text == "both") return EvolutionMode::Both;
  throw ParseError("unknown mode: " + std::string(text));
}

namespace {

std::vector<std::string> common_nodes(const DependencyGraph& a, const DependencyGraph& b) {
  std::vector<std::string> common;
  std::set_intersection(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
                        std::back_inserter(common));
  return common;
}

void compare_with_previous(ModeColumns& current, const ModeColumns& previous, bool share_nodes) {
  if (!share_nodes) return;
  const auto source = Partition::from_layers(previous.architecture);
  const auto target = Partition::from_layers(current.architecture);
  current.mojo_ops = mojo_distance(source, target);
  current.mojofm = mojofm(source, target);
}

}  // namespace

std::vector<EvolutionRow> evolve_report(const VersionSeries& series, const EvolutionConfig& config) {
  config.recovery.validate();
  if (series.empty()) throw ValidationError("version series is empty");
  std::set<std::string_view> labels;
  for (const auto& v : series) {
    if (!labels.insert(v.label).second) throw ValidationError("duplicate version label: " + v.label);
  }
  const bool traditional = config.mode != EvolutionMode::Incremental;
  const bool incremental = config.mode != EvolutionMode::Traditional;

  std::vector<EvolutionRow> rows;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& graph = series[k].graph;
    EvolutionRow row;
    row.label = series[k].label;
    row.total_count = graph.node_count();
    const bool first = k == 0;
    const auto common = first ? std::vector<std::string>(graph.nodes().begin(), graph.nodes().end())
                              : common_nodes(series[k - 1].graph, graph);
    row.old_count = common.size();
    row.new_count = row.total_count - row.old_count;
    row.changed_pct = row.total_count == 0 ? 0.0
                                           : 100.0 * static_cast<double>(row.new_count) /
                                                 static_cast<double>(row.total_count);
    const auto s = stability(graph);
    row.impact_pct = s.impact_pct;
    row.stability_pct = s.stability_pct;
    const bool share_nodes = !first && !common.empty();

    if (traditional) {
      ModeColumns cols;
      cols.architecture = recover(graph, config.recovery).architecture;
      cols.distribution = tier_distribution(cols.architecture);
      if (!first) compare_with_previous(cols, *rows.back().traditional, share_nodes);
      row.traditional = std::move(cols);
    }
    if (incremental) {
      ModeColumns cols;
      if (first || !share_nodes || row.changed_pct > config.reseed_threshold_pct) {
        cols.architecture = recover(graph, config.recovery).architecture;
        cols.reseeded = !first;
      } else {
        cols.architecture =
            incremental_update(rows.back().incremental->architecture, graph, config.recovery);
      }
      cols.distribution = tier_distribution(cols.architecture);
      if (!first) compare_with_previous(cols, *rows.back().incremental, share_nodes);
      row.incremental = std::move(cols);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- emission -----------------------------------------------------------------------

namespace {

std::string or_dash(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }
std::string or_dash(const std::optional<double>& v) { return v ? detail::fixed2(*v) : "-"; }

struct ModeView {
  const char* name;
  const std::optional<ModeColumns> EvolutionRow::*columns;
};

std::vector<ModeView> modes_present(const std::vector<EvolutionRow>& rows) {
  std::vector<ModeView> modes;
  if (!rows.empty() && rows.front().traditional) modes.push_back({"traditional", &EvolutionRow::traditional});
  if (!rows.empty() && rows.front().incremental) modes.push_back({"incremental", &EvolutionRow::incremental});
  return modes;
}

}  // namespace

std::string evolution_to_csv(const std::vector<EvolutionRow>& rows) {
  const auto modes = modes_present(rows);
  std::ostringstream out;
  out << "version,old,new,all,changed_pct";
  for (const auto& m : modes) out << ',' << m.name << "_fm," << m.name << "_mojo";
  out << ",impact,stability";
  for (const auto& m : modes) out << ',' << m.name << "_b," << m.name << "_m," << m.name << "_t";
  out << '\n';
  for (const auto& row : rows) {
    out << row.label << ',' << row.old_count << ',' << row.new_count << ',' << row.total_count << ','
        << detail::fixed2(row.changed_pct);
    for (const auto& m : modes) {
      const auto& cols = *(row.*m.columns);
      out << ',' << or_dash(cols.mojofm) << ',' << or_dash(cols.mojo_ops);
    }
    out << ',' << detail::fixed2(row.impact_pct) << ',' << detail::fixed2(row.stability_pct);
    for (const auto& m : modes) {
      const auto& d = (row.*m.columns)->distribution;
      out << ',' << d.bottom << ',' << d.middle << ',' << d.top;
    }
    out << '\n';
  }
  return out.str();
}

std::string evolution_to_json(const std::vector<EvolutionRow>& rows) {
  auto doc = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r;
    r["version"] = row.label;
    r["old"] = row.old_count;
    r["new"] = row.new_count;
    r["all"] = row.total_count;
    r["changed_pct"] = row.changed_pct;
    r["impact_pct"] = row.impact_pct;
    r["stability_pct"] = row.stability_pct;
    for (const auto& m : modes_present(rows)) {
      const auto& cols = *(row.*m.columns);
      nlohmann::json c;
      c["layers"] = cols.architecture.layers();
      c["distribution"] = {{"bottom", cols.distribution.bottom},
                           {"middle", cols.distribution.middle},
                           {"top", cols.distribution.top}};
      c["mojo_ops"] = cols.mojo_ops ? nlohmann::json(*cols.mojo_ops) : nlohmann::json(nullptr);
      c["mojofm"] = cols.mojofm ? nlohmann::json(*cols.mojofm) : nlohmann::json(nullptr);
      c["reseeded"] = cols.reseeded;
      r[m.name] = std::move(c);
    }
    doc.push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string evolution_to_table(const std::vector<EvolutionRow>& rows) {
  const auto modes = modes_present(rows);
  std::ostringstream out;
  out << std::left << std::setw(14) << "Version" << std::right << std::setw(5) << "Old" << std::setw(5)
      << "New" << std::setw(5) << "All" << std::setw(8) << "%";
  for (const auto& m : modes) {
    const std::string tag = m.name[0] == 't' ? "T." : "I.";
    out << std::setw(9) << (tag + "Fm") << std::setw(7) << (tag + "MoJo");
  }
  out << std::setw(8) << "Imp" << std::setw(8) << "Stab";
  for (const auto& m : modes) {
    const std::string tag = m.name[0] == 't' ? "T." : "I.";
    out << std::setw(6) << (tag + "B") << std::setw(6) << (tag + "M") << std::setw(6) << (tag + "T");
  }
  out << '\n';
  for (const auto& row : rows) {
    out << std::left << std::setw(14) << row.label << std::right << std::setw(5) << row.old_count
        << std::setw(5) << row.new_count << std::setw(5) << row.total_count << std::setw(8)
        << detail::fixed2(row.changed_pct);
    for (const auto& m : modes) {
      const auto& cols = *(row.*m.columns);
      out << std::setw(9) << or_dash(cols.mojofm) << std::setw(7) << or_dash(cols.mojo_ops);
    }
    out << std::setw(8) << detail::fixed2(row.impact_pct) << std::setw(8)
        << detail::fixed2(row.stability_pct);
    for (const auto& m : modes) {
      const auto& d = (row.*m.columns)->distribution;
      out << std::setw(6) << d.bottom << std::setw(6) << d.middle << std::setw(6) << d.top;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace strata
