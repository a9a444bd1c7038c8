#include "strata/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "strata/error.hpp"
#include "text_util.hpp"

namespace strata {

namespace {

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

void require_same_nodes(const LayeredArchitecture& a, const LayeredArchitecture& b) {
  const auto left = a.nodes();
  const auto right = b.nodes();
  if (left == right) return;
  std::vector<std::string> only_left;
  std::vector<std::string> only_right;
  std::set_difference(left.begin(), left.end(), right.begin(), right.end(),
                      std::back_inserter(only_left));
  std::set_difference(right.begin(), right.end(), left.begin(), left.end(),
                      std::back_inserter(only_right));
  std::ostringstream msg;
  msg << "layerings cover different nodes";
  if (!only_left.empty()) {
    msg << "; only in predicted:";
    for (const auto& n : only_left) msg << ' ' << n;
  }
  if (!only_right.empty()) {
    msg << "; only in truth:";
    for (const auto& n : only_right) msg << ' ' << n;
  }
  throw ValidationError(msg.str());
}

}  // namespace

ViolationReport count_violations(const LayeredArchitecture& arch, const DependencyGraph& graph) {
  const auto layer = layer_assignment(graph, arch);
  ViolationReport report;
  report.edge_count = graph.edge_count();
  for (const auto& e : graph.edges()) {
    const auto kind = classify_edge(layer[e.from], layer[e.to]);
    switch (kind) {
      case EdgeKind::Back: ++report.back_calls; break;
      case EdgeKind::Skip: ++report.skip_calls; break;
      case EdgeKind::Adjacent: ++report.adjacent_calls; break;
      case EdgeKind::Intra: ++report.intra_calls; break;
    }
    if (kind == EdgeKind::Back || kind == EdgeKind::Skip) {
      report.violating_edges.push_back({graph.name(e.from), graph.name(e.to), kind});
    }
  }
  report.back_rate = percent(report.back_calls, report.edge_count);
  report.skip_rate = percent(report.skip_calls, report.edge_count);
  report.cyclic = detect_cycles(graph, arch);
  return report;
}

LayerAlignment align_layers(const LayeredArchitecture& predicted, const LayeredArchitecture& truth) {
  require_same_nodes(predicted, truth);
  const auto P = predicted.layer_count();
  const auto T = truth.layer_count();
  if (P == 0) return {};

  std::vector<std::vector<long>> overlap(P, std::vector<long>(T, 0));
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& name : truth.layers()[t]) overlap[*predicted.layer_of(name)][t] += 1;
  }

  // best[p][t]: maximum overlap of predicted layers p.. when layer p maps to
  // a truth layer >= t.
  constexpr long impossible = std::numeric_limits<long>::min() / 4;
  std::vector<std::vector<long>> best(P + 1, std::vector<long>(T + 1, impossible));
  std::fill(best[P].begin(), best[P].end(), 0);
  for (std::size_t p = P; p-- > 0;) {
    for (std::size_t t = T; t-- > 0;) {
      best[p][t] = std::max(best[p][t + 1], overlap[p][t] + best[p + 1][t]);
    }
  }

  LayerAlignment alignment(P, 0);
  std::size_t floor = 0;
  for (std::size_t p = 0; p < P; ++p) {
    const auto target = best[p][floor];
    std::size_t t = floor;
    while (overlap[p][t] + best[p + 1][t] != target) ++t;
    alignment[p] = t;
    floor = t;
  }
  return alignment;
}

ClassificationReport classification_metrics(const LayeredArchitecture& predicted,
                                            const LayeredArchitecture& truth) {
  ClassificationReport report;
  report.alignment = align_layers(predicted, truth);
  const auto T = truth.layer_count();

  std::vector<std::size_t> true_positive(T, 0);
  std::vector<std::size_t> labelled(T, 0);
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t t = 0; t < T; ++t) {
    for (const auto& name : truth.layers()[t]) {
      const auto label = report.alignment[*predicted.layer_of(name)];
      ++labelled[label];
      ++total;
      if (label == t) {
        ++true_positive[t];
        ++correct;
      }
    }
  }

  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    LayerScore score;
    score.truth_layer = t;
    score.support = truth.layers()[t].size();
    score.precision = labelled[t] == 0
                          ? 0.0
                          : static_cast<double>(true_positive[t]) / static_cast<double>(labelled[t]);
    score.recall = static_cast<double>(true_positive[t]) / static_cast<double>(score.support);
    score.f1 = score.precision + score.recall == 0.0
                   ? 0.0
                   : 2.0 * score.precision * score.recall / (score.precision + score.recall);
    precision_sum += score.precision;
    recall_sum += score.recall;
    report.per_layer.push_back(score);
  }
  if (T > 0) {
    report.precision = precision_sum / static_cast<double>(T);
    report.recall = recall_sum / static_cast<double>(T);
  }
  report.f_score = report.precision + report.recall == 0.0
                       ? 0.0
                       : 2.0 * report.precision * report.recall / (report.precision + report.recall);
  report.accuracy = percent(correct, total);
  return report;
}

TierDistribution tier_distribution(const LayeredArchitecture& arch) {
  const auto& layers = arch.layers();
  if (layers.empty()) return {};
  if (layers.size() == 1) return {0, layers.front().size(), 0};
  TierDistribution tiers;
  tiers.top = layers.front().size();
  tiers.bottom = layers.back().size();
  for (std::size_t i = 1; i + 1 < layers.size(); ++i) tiers.middle += layers[i].size();
  return tiers;
}

// --- emission ---------------------------------------------------------------

namespace {

nlohmann::json cycles_json(const CycleReport& cyclic) {
  nlohmann::json doc;
  doc["scc_count"] = cyclic.scc_count();
  doc["cycles"] = cyclic.cycles;
  if (cyclic.cross_layer_cycles) {
    doc["cross_layer_cycles"] = *cyclic.cross_layer_cycles;
  } else {
    doc["cross_layer_cycles"] = nullptr;
  }
  return doc;
}

std::size_t cyclic_count(const ViolationReport& report) {
  return report.cyclic.cross_layer_cycles.value_or(0);
}

}  // namespace

std::string violations_to_json(const ViolationReport& report) {
  nlohmann::json doc;
  doc["back_calls"] = report.back_calls;
  doc["skip_calls"] = report.skip_calls;
  doc["adjacent_calls"] = report.adjacent_calls;
  doc["intra_calls"] = report.intra_calls;
  doc["edge_count"] = report.edge_count;
  doc["back_rate"] = report.back_rate;
  doc["skip_rate"] = report.skip_rate;
  doc["cyclic"] = cycles_json(report.cyclic);
  auto edges = nlohmann::json::array();
  for (const auto& e : report.violating_edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  }
  doc["violating_edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string violations_to_csv(const ViolationReport& report) {
  std::ostringstream out;
  out << "back,skip,cyclic,back_rate,skip_rate,edges,scc_count\n";
  out << report.back_calls << ',' << report.skip_calls << ',' << cyclic_count(report) << ','
      << detail::fixed2(report.back_rate) << ',' << detail::fixed2(report.skip_rate) << ','
      << report.edge_count << ',' << report.cyclic.scc_count() << '\n';
  return out.str();
}

std::string violations_to_table(const ViolationReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(22) << label << std::right << std::setw(10) << value << '\n';
  };
  row("Back-calls", std::to_string(report.back_calls));
  row("Skip-calls", std::to_string(report.skip_calls));
  row("Cyclic (cross-layer)", std::to_string(cyclic_count(report)));
  row("Back-call rate %", detail::fixed2(report.back_rate));
  row("Skip-call rate %", detail::fixed2(report.skip_rate));
  row("Edges", std::to_string(report.edge_count));
  row("Cycles (all)", std::to_string(report.cyclic.scc_count()));
  for (const auto& e : report.violating_edges) {
    out << "  " << to_string(e.kind) << ": " << e.from << " -> " << e.to << '\n';
  }
  return out.str();
}

std::string classification_to_json(const ClassificationReport& report, const TierDistribution& tiers) {
  nlohmann::json doc;
  doc["precision"] = report.precision;
  doc["recall"] = report.recall;
  doc["f_score"] = report.f_score;
  doc["accuracy"] = report.accuracy;
  auto per_layer = nlohmann::json::array();
  for (const auto& s : report.per_layer) {
    per_layer.push_back({{"truth_layer", s.truth_layer + 1},
                         {"precision", s.precision},
                         {"recall", s.recall},
                         {"f1", s.f1},
                         {"support", s.support}});
  }
  doc["per_layer"] = std::move(per_layer);
  auto alignment = nlohmann::json::object();
  for (std::size_t p = 0; p < report.alignment.size(); ++p) {
    alignment[std::to_string(p + 1)] = report.alignment[p] + 1;
  }
  doc["alignment"] = std::move(alignment);
  doc["tiers"] = {{"bottom", tiers.bottom}, {"middle", tiers.middle}, {"top", tiers.top}};
  return doc.dump(2) + "\n";
}

std::string classification_to_csv(const ClassificationReport& report, const TierDistribution& tiers) {
  std::ostringstream out;
  out << "recall,precision,f_score,accuracy,bottom,middle,top\n";
  out << detail::fixed2(report.recall) << ',' << detail::fixed2(report.precision) << ','
      << detail::fixed2(report.f_score) << ',' << detail::fixed2(report.accuracy) << ','
      << tiers.bottom << ',' << tiers.middle << ',' << tiers.top << '\n';
  return out.str();
}

std::string classification_to_table(const ClassificationReport& report, const TierDistribution& tiers) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "Recall" << std::setw(11) << "Precision" << std::setw(9)
      << "F-Score" << "Accuracy\n";
  out << std::setw(10) << detail::fixed2(report.recall) << std::setw(11)
      << detail::fixed2(report.precision) << std::setw(9) << detail::fixed2(report.f_score)
      << detail::fixed2(report.accuracy) << "\n\n";
  out << "Layer  Precision  Recall  F1     Support\n";
  for (const auto& s : report.per_layer) {
    out << std::setw(7) << (s.truth_layer + 1) << std::setw(11) << detail::fixed2(s.precision)
        << std::setw(8) << detail::fixed2(s.recall) << std::setw(7) << detail::fixed2(s.f1)
        << s.support << '\n';
  }
  out << "\nB  M  T\n" << tiers.bottom << "  " << tiers.middle << "  " << tiers.top << '\n';
  return out.str();
}

}  // namespace strata
