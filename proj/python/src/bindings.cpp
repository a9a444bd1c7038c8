#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "strata/ego.hpp"
#include "strata/error.hpp"
#include "strata/evolution.hpp"
#include "strata/graph.hpp"
#include "strata/java_scan.hpp"
#include "strata/metrics.hpp"
#include "strata/synth.hpp"

namespace py = pybind11;
using namespace strata;

namespace {

using Groups = std::vector<std::vector<std::string>>;

RecoveryConfig make_config(double alpha, double beta, std::size_t threshold, std::uint64_t seed,
                           std::size_t trials, bool single_pass) {
  RecoveryConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.threshold = threshold;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.single_pass = single_pass;
  return cfg;
}

#define STRATA_RECOVERY_ARGS                                                                \
  py::kw_only(), py::arg("alpha") = 1.0, py::arg("beta") = 1.0, py::arg("threshold") = 2, \
      py::arg("seed") = 0, py::arg("trials") = 1, py::arg("single_pass") = false

}  // namespace

PYBIND11_MODULE(_strata, m) {
  m.doc() = "Layered architecture recovery from dependency graphs";

  auto base = py::register_exception<Error>(m, "StrataError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<EmptyResultError>(m, "EmptyResultError", base.ptr());

  py::class_<DependencyGraph>(m, "DependencyGraph")
      .def(py::init([](std::vector<std::string> nodes, std::vector<NamedEdge> edges, std::string_view level) {
             return DependencyGraph(parse_level(level), std::move(nodes), std::move(edges));
           }),
           py::arg("nodes") = std::vector<std::string>{}, py::arg("edges") = std::vector<NamedEdge>{},
           py::arg("level") = "package")
      .def_property_readonly("level", [](const DependencyGraph& g) { return to_string(g.level()); })
      .def_property_readonly("nodes", [](const DependencyGraph& g) {
        return std::vector<std::string>(g.nodes().begin(), g.nodes().end());
      })
      .def_property_readonly("edges", &DependencyGraph::named_edges)
      .def_property_readonly("node_count", &DependencyGraph::node_count)
      .def_property_readonly("edge_count", &DependencyGraph::edge_count)
      .def("__contains__", [](const DependencyGraph& g, const std::string& n) { return g.contains(n); })
      .def("__len__", &DependencyGraph::node_count)
      .def("__eq__", [](const DependencyGraph& a, const DependencyGraph& b) { return a == b; })
      .def("__repr__", [](const DependencyGraph& g) {
        return "<DependencyGraph " + std::string(to_string(g.level())) + " nodes=" +
               std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<LayeredArchitecture>(m, "LayeredArchitecture")
      .def(py::init<Groups>(), py::arg("layers"))
      .def_property_readonly("layers", &LayeredArchitecture::layers)
      .def_property_readonly("layer_count", &LayeredArchitecture::layer_count)
      .def("layer_of", &LayeredArchitecture::layer_of, py::arg("name"))
      .def("__len__", &LayeredArchitecture::layer_count)
      .def("__eq__", [](const LayeredArchitecture& a, const LayeredArchitecture& b) { return a == b; })
      .def("__repr__", [](const LayeredArchitecture& a) {
        return "<LayeredArchitecture layers=" + std::to_string(a.layer_count()) +
               " nodes=" + std::to_string(a.node_count()) + ">";
      });

  py::class_<RecoveryResult>(m, "RecoveryResult")
      .def_readonly("architecture", &RecoveryResult::architecture)
      .def_readonly("score", &RecoveryResult::score)
      .def_readonly("seed_used", &RecoveryResult::seed_used)
      .def_readonly("merged_layer_count", &RecoveryResult::merged_layer_count_pre_optimization);

  py::class_<ViolationReport>(m, "ViolationReport")
      .def_readonly("back_calls", &ViolationReport::back_calls)
      .def_readonly("skip_calls", &ViolationReport::skip_calls)
      .def_readonly("adjacent_calls", &ViolationReport::adjacent_calls)
      .def_readonly("intra_calls", &ViolationReport::intra_calls)
      .def_readonly("edge_count", &ViolationReport::edge_count)
      .def_readonly("back_rate", &ViolationReport::back_rate)
      .def_readonly("skip_rate", &ViolationReport::skip_rate)
      .def_property_readonly("cycles", [](const ViolationReport& r) { return r.cyclic.cycles; })
      .def_property_readonly("cross_layer_cycles",
                             [](const ViolationReport& r) { return r.cyclic.cross_layer_cycles; })
      .def("to_json", &violations_to_json);

  py::class_<TierDistribution>(m, "TierDistribution")
      .def_readonly("bottom", &TierDistribution::bottom)
      .def_readonly("middle", &TierDistribution::middle)
      .def_readonly("top", &TierDistribution::top);

  py::class_<ClassificationReport>(m, "ClassificationReport")
      .def_readonly("precision", &ClassificationReport::precision)
      .def_readonly("recall", &ClassificationReport::recall)
      .def_readonly("f_score", &ClassificationReport::f_score)
      .def_readonly("accuracy", &ClassificationReport::accuracy)
      .def_readonly("alignment", &ClassificationReport::alignment);

  // Graph I/O and analysis.
  m.def("parse_graph", &parse_graph, py::arg("text"), "Edge list or JSON, picked by the first character.");
  m.def("to_edge_list", &to_edge_list, py::arg("graph"));
  m.def("to_graph_json", &to_graph_json, py::arg("graph"));
  m.def("export_dot", &export_dot, py::arg("graph"), py::arg("layering") = std::nullopt);
  m.def("dependency_depth", &dependency_depth, py::arg("graph"));
  m.def("cycles", [](const DependencyGraph& g) { return detect_cycles(g).cycles; }, py::arg("graph"));
  m.def("aggregate_to_packages", &aggregate_to_packages, py::arg("graph"));
  m.def("scan_sources", [](const std::filesystem::path& root) { return scan_sources(root).graph; },
        py::arg("root"), "Class-level import graph of the .java files under root.");

  m.def("parse_layering", &parse_layering, py::arg("text"));
  m.def("layering_to_json", &layering_to_json, py::arg("layering"));
  m.def("layering_to_csv", &layering_to_csv, py::arg("layering"));

  // Recovery.
  m.def("recover",
        [](const DependencyGraph& g, double alpha, double beta, std::size_t threshold, std::uint64_t seed,
           std::size_t trials, bool single_pass) {
          return recover(g, make_config(alpha, beta, threshold, seed, trials, single_pass));
        },
        py::arg("graph"), STRATA_RECOVERY_ARGS);
  m.def("violation_score", &violation_score, py::arg("layering"), py::arg("graph"), py::arg("alpha") = 1.0,
        py::arg("beta") = 1.0);
  m.def("ego_layer",
        [](const DependencyGraph& g, std::string_view ego) {
          const auto layer = build_ego_layer(g, ego);
          auto names = [&](const std::vector<NodeIndex>& idx) {
            std::vector<std::string> out;
            for (auto v : idx) out.push_back(g.name(v));
            return out;
          };
          return std::make_pair(names(layer.top), names(layer.bottom));
        },
        py::arg("graph"), py::arg("ego"), "(callers, callees) of one node.");

  // Metrics.
  m.def("count_violations", &count_violations, py::arg("layering"), py::arg("graph"));
  m.def("classification_metrics", &classification_metrics, py::arg("predicted"), py::arg("truth"));
  m.def("tier_distribution", &tier_distribution, py::arg("layering"));

  // Evolution.
  m.def("mojo_distance",
        [](const Groups& a, const Groups& b) { return mojo_distance(Partition(a), Partition(b)); },
        py::arg("source"), py::arg("target"));
  m.def("mojofm", [](const Groups& a, const Groups& b) { return mojofm(Partition(a), Partition(b)); },
        py::arg("source"), py::arg("target"));
  m.def("node_impact", py::overload_cast<const DependencyGraph&, std::string_view>(&node_impact),
        py::arg("graph"), py::arg("node"));
  m.def("stability",
        [](const DependencyGraph& g) {
          const auto s = stability(g);
          return std::make_pair(s.impact_pct, s.stability_pct);
        },
        py::arg("graph"), "(impact_pct, stability_pct)");
  m.def("incremental_update",
        [](const LayeredArchitecture& prev, const DependencyGraph& g, double alpha, double beta,
           std::size_t threshold, std::uint64_t seed, std::size_t trials, bool single_pass) {
          return incremental_update(prev, g, make_config(alpha, beta, threshold, seed, trials, single_pass));
        },
        py::arg("previous"), py::arg("graph"), STRATA_RECOVERY_ARGS);
  m.def("evolve_json",
        [](const std::filesystem::path& manifest, std::string_view mode, double reseed_threshold,
           double alpha, double beta, std::size_t threshold, std::uint64_t seed, std::size_t trials,
           bool single_pass) {
          EvolutionConfig cfg;
          cfg.recovery = make_config(alpha, beta, threshold, seed, trials, single_pass);
          cfg.mode = parse_evolution_mode(mode);
          cfg.reseed_threshold_pct = reseed_threshold;
          return evolution_to_json(evolve_report(load_manifest(manifest), cfg));
        },
        py::arg("manifest"), py::arg("mode") = "both", py::arg("reseed_threshold") = 90.0,
        STRATA_RECOVERY_ARGS);

  // Synthetic graphs.
  m.def("generate",
        [](std::vector<std::size_t> sizes, double p_adjacent, double p_skip, double p_back, std::uint64_t seed) {
          SynthSpec spec;
          spec.layer_sizes = std::move(sizes);
          spec.p_adjacent = p_adjacent;
          spec.p_skip = p_skip;
          spec.p_back = p_back;
          spec.seed = seed;
          auto r = generate(spec);
          return std::make_pair(std::move(r.graph), std::move(r.truth));
        },
        py::arg("layer_sizes"), py::arg("p_adjacent") = 0.4, py::arg("p_skip") = 0.0, py::arg("p_back") = 0.0,
        py::arg("seed") = 0, "(graph, truth layering)");
}
