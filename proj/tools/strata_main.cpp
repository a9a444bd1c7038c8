// strata: layered-architecture recovery from dependency graphs.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strata/ego.hpp"
#include "strata/error.hpp"
#include "strata/evolution.hpp"
#include "strata/graph.hpp"
#include "strata/java_scan.hpp"
#include "strata/metrics.hpp"
#include "strata/synth.hpp"

namespace fs = std::filesystem;
using namespace strata;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitEmpty = 2;

struct CommonFlags {
  RecoveryConfig recovery;
  std::optional<std::uint64_t> seed;
  std::string level;
  std::string format;
  std::string output = "-";
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

std::string resolve_format(const std::string& requested) {
  if (!requested.empty()) return requested;
  return isatty(STDOUT_FILENO) ? "table" : "json";
}

void add_recovery_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--alpha", flags.recovery.alpha, "Weight of back-call violations")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--beta", flags.recovery.beta, "Weight of skip-call violations")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--threshold", flags.recovery.threshold, "Layers smaller than this are merged")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed, "Seed for the node order (falls back to $STRATA_SEED)");
  cmd->add_option("--trials", flags.recovery.trials, "Number of seeds tried; the best is kept")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--single-pass", flags.recovery.single_pass,
                "Run one optimization sweep instead of iterating to a fixed point");
}

void finalize_seed(CommonFlags& flags) {
  if (flags.seed) {
    flags.recovery.seed = *flags.seed;
  } else if (const char* env = std::getenv("STRATA_SEED"); env && *env) {
    try {
      flags.recovery.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("STRATA_SEED is not an unsigned integer: ") + env);
    }
  }
}

DependencyGraph load_graph(const std::string& path, const std::string& level) {
  auto graph = parse_graph(read_file(path));
  if (level.empty() || level == to_string(graph.level())) return graph;
  if (level == "package" && graph.level() == Level::Class) return aggregate_to_packages(graph);
  throw ValidationError("cannot convert a " + std::string(to_string(graph.level())) +
                        "-level graph to " + level + " level");
}

std::string layering_text_for_path(const std::string& path, const LayeredArchitecture& arch) {
  return fs::path(path).extension() == ".csv" ? layering_to_csv(arch) : layering_to_json(arch);
}

std::string layers_table(const LayeredArchitecture& arch) {
  std::ostringstream out;
  for (std::size_t i = 0; i < arch.layer_count(); ++i) {
    out << "L" << (i + 1) << " (" << arch.layers()[i].size() << "):";
    for (const auto& name : arch.layers()[i]) out << ' ' << name;
    out << '\n';
  }
  return out.str();
}

// --- commands -----------------------------------------------------------------

int cmd_scan(const std::string& root, const CommonFlags& flags) {
  ScanResult result;
  try {
    result = scan_sources(root);
  } catch (const EmptyResultError& e) {
    std::cerr << "strata scan: " << e.what() << '\n';
    return kExitEmpty;
  }
  for (const auto& line : result.log) std::cerr << "scan: " << line << '\n';
  auto graph = result.graph;
  if (flags.level == "package") graph = aggregate_to_packages(graph);
  const auto format = flags.format.empty() ? "edges" : flags.format;
  write_output(flags.output, format == "json" ? to_graph_json(graph) : to_edge_list(graph));
  std::cerr << "scan: " << result.units.size() << " units, " << graph.node_count() << " nodes, "
            << graph.edge_count() << " edges\n";
  return kExitOk;
}

int cmd_recover(const std::string& graph_path, const std::string& layering_out, CommonFlags& flags) {
  finalize_seed(flags);
  const auto graph = load_graph(graph_path, flags.level);
  const auto result = recover(graph, flags.recovery);
  const auto report = count_violations(result.architecture, graph);
  if (!layering_out.empty()) {
    write_output(layering_out, layering_text_for_path(layering_out, result.architecture));
  }

  const auto format = resolve_format(flags.format);
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json doc;
    doc["layers"] = result.architecture.layers();
    doc["score"] = result.score;
    doc["seed_used"] = result.seed_used;
    doc["merged_layer_count"] = result.merged_layer_count_pre_optimization;
    doc["violations"] = nlohmann::json::parse(violations_to_json(report));
    doc["tiers"] = [&] {
      const auto t = tier_distribution(result.architecture);
      return nlohmann::json{{"bottom", t.bottom}, {"middle", t.middle}, {"top", t.top}};
    }();
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    out << "# seed_used=" << result.seed_used << " score=" << result.score << '\n';
    out << layering_to_csv(result.architecture);
  } else if (format == "dot") {
    out << "// seed_used=" << result.seed_used << " score=" << result.score << '\n';
    out << export_dot(graph, result.architecture);
  } else {
    out << "seed_used: " << result.seed_used << "\nscore: " << result.score
        << "\nlayers before optimization: " << result.merged_layer_count_pre_optimization << "\n\n";
    out << layers_table(result.architecture) << '\n' << violations_to_table(report);
  }
  write_output(flags.output, out.str());
  return kExitOk;
}

int cmd_violations(const std::string& graph_path, const std::string& layering_path,
                   const CommonFlags& flags) {
  const auto graph = load_graph(graph_path, flags.level);
  const auto arch = parse_layering(read_file(layering_path));
  const auto report = count_violations(arch, graph);
  const auto format = resolve_format(flags.format);
  if (format == "json") {
    write_output(flags.output, violations_to_json(report));
  } else if (format == "csv") {
    write_output(flags.output, violations_to_csv(report));
  } else if (format == "dot") {
    write_output(flags.output, export_dot(graph, arch));
  } else {
    write_output(flags.output, violations_to_table(report));
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& predicted_path, const std::string& truth_path,
                 const CommonFlags& flags) {
  const auto predicted = parse_layering(read_file(predicted_path));
  const auto truth = parse_layering(read_file(truth_path));
  const auto report = classification_metrics(predicted, truth);
  const auto tiers = tier_distribution(predicted);
  const auto format = resolve_format(flags.format);
  if (format == "json") {
    write_output(flags.output, classification_to_json(report, tiers));
  } else if (format == "csv") {
    write_output(flags.output, classification_to_csv(report, tiers));
  } else {
    write_output(flags.output, classification_to_table(report, tiers));
  }
  return kExitOk;
}

int cmd_evolve(const std::string& manifest, const std::string& mode, double reseed,
               CommonFlags& flags) {
  finalize_seed(flags);
  EvolutionConfig config;
  config.recovery = flags.recovery;
  config.mode = parse_evolution_mode(mode);
  config.reseed_threshold_pct = reseed;
  const auto rows = evolve_report(load_manifest(manifest), config);
  const auto format = resolve_format(flags.format);
  if (format == "json") {
    write_output(flags.output, evolution_to_json(rows));
  } else if (format == "csv") {
    write_output(flags.output, evolution_to_csv(rows));
  } else {
    write_output(flags.output, evolution_to_table(rows));
  }
  return kExitOk;
}

int cmd_synth(const SynthSpec& spec, const std::string& graph_out, const std::string& truth_out,
              const std::string& graph_format) {
  const auto result = generate(spec);
  write_output(graph_out, graph_format == "json" ? to_graph_json(result.graph)
                                                 : to_edge_list(result.graph));
  if (!truth_out.empty()) write_output(truth_out, layering_text_for_path(truth_out, result.truth));
  std::cerr << "synth: " << result.graph.node_count() << " nodes, " << result.graph.edge_count()
            << " edges, injected back=" << result.injected_back
            << " skip=" << result.injected_skip << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover layered architectures from dependency graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "strata 0.1.0");

  CommonFlags flags;
  const std::vector<std::string> report_formats{"json", "csv", "dot", "table"};

  auto* scan = app.add_subcommand("scan", "Extract a class-level import graph from Java sources");
  std::string scan_root;
  scan->add_option("root", scan_root, "Source tree root")->required();
  scan->add_option("-o,--output", flags.output, "Graph output file (default: stdout)");
  scan->add_option("--format", flags.format, "Graph format")->check(CLI::IsMember({"edges", "json"}));
  scan->add_option("--level", flags.level, "Emit class or package level")
      ->check(CLI::IsMember({"class", "package"}));

  auto* rec = app.add_subcommand("recover", "Recover a layered architecture");
  std::string rec_graph;
  std::string rec_layering;
  rec->add_option("graph", rec_graph, "Graph file (edge list or JSON)")->required();
  rec->add_option("-o,--output", flags.output, "Report output file (default: stdout)");
  rec->add_option("--layering", rec_layering, "Also write the layering (.csv or .json)");
  rec->add_option("--level", flags.level, "Analysis level")->check(CLI::IsMember({"class", "package"}));
  rec->add_option("--format", flags.format, "Report format")->check(CLI::IsMember(report_formats));
  add_recovery_flags(rec, flags);

  auto* vio = app.add_subcommand("violations", "Count back-, skip- and cyclic violations");
  std::string vio_graph;
  std::string vio_layering;
  vio->add_option("graph", vio_graph, "Graph file")->required();
  vio->add_option("layering", vio_layering, "Layering file (.json or .csv)")->required();
  vio->add_option("-o,--output", flags.output, "Report output file (default: stdout)");
  vio->add_option("--level", flags.level, "Analysis level")->check(CLI::IsMember({"class", "package"}));
  vio->add_option("--format", flags.format, "Report format")->check(CLI::IsMember(report_formats));

  auto* eval = app.add_subcommand("evaluate", "Compare a recovered layering with ground truth");
  std::string eval_predicted;
  std::string eval_truth;
  eval->add_option("predicted", eval_predicted, "Recovered layering file")->required();
  eval->add_option("truth", eval_truth, "Ground-truth layering file")->required();
  eval->add_option("-o,--output", flags.output, "Report output file (default: stdout)");
  eval->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  auto* evo = app.add_subcommand("evolve", "Layer a series of versions and track their evolution");
  std::string evo_manifest;
  std::string evo_mode = "both";
  double evo_reseed = 90.0;
  evo->add_option("manifest", evo_manifest, "JSON list of {label, graph_path}")->required();
  evo->add_option("-o,--output", flags.output, "Report output file (default: stdout)");
  evo->add_option("--mode", evo_mode, "traditional, incremental or both")
      ->check(CLI::IsMember({"traditional", "incremental", "both"}));
  evo->add_option("--reseed-threshold", evo_reseed, "Changed-node percentage forcing a fresh recovery")
      ->check(CLI::Range(0.0, 100.0));
  evo->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  add_recovery_flags(evo, flags);

  auto* syn = app.add_subcommand("synth", "Generate a synthetic layered graph with ground truth");
  SynthSpec spec;
  std::string syn_layers = "10,10,10";
  std::string syn_graph_out = "-";
  std::string syn_truth_out;
  std::string syn_format = "edges";
  syn->add_option("--layers", syn_layers, "Comma-separated layer sizes, top first");
  syn->add_option("--p-adjacent", spec.p_adjacent, "Adjacent edge probability")->check(CLI::Range(0.0, 1.0));
  syn->add_option("--p-skip", spec.p_skip, "Skip edge probability")->check(CLI::Range(0.0, 1.0));
  syn->add_option("--p-back", spec.p_back, "Back edge probability")->check(CLI::Range(0.0, 1.0));
  syn->add_option("--seed", spec.seed, "Generator seed");
  syn->add_option("-o,--output", syn_graph_out, "Graph output file (default: stdout)");
  syn->add_option("--truth", syn_truth_out, "Ground-truth layering output (.json or .csv)");
  syn->add_option("--format", syn_format, "Graph format")->check(CLI::IsMember({"edges", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*scan) return cmd_scan(scan_root, flags);
    if (*rec) return cmd_recover(rec_graph, rec_layering, flags);
    if (*vio) return cmd_violations(vio_graph, vio_layering, flags);
    if (*eval) return cmd_evaluate(eval_predicted, eval_truth, flags);
    if (*evo) return cmd_evolve(evo_manifest, evo_mode, evo_reseed, flags);
    if (*syn) {
      spec.layer_sizes.clear();
      std::stringstream list(syn_layers);
      for (std::string item; std::getline(list, item, ',');) {
        try {
          spec.layer_sizes.push_back(std::stoull(item));
        } catch (const std::exception&) {
          throw ValidationError("bad layer size: " + item);
        }
      }
      return cmd_synth(spec, syn_graph_out, syn_truth_out, syn_format);
    }
  } catch (const EmptyResultError& e) {
    std::cerr << "strata: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const Error& e) {
    std::cerr << "strata: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
