#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "strata/error.hpp"
#include "strata/evolution.hpp"

using namespace strata;
using strata::testing::MojoTable;
using strata::testing::to_partition;

namespace {

DependencyGraph edges_of(std::initializer_list<NamedEdge> edges) {
  return DependencyGraph(Level::Package, {}, std::vector<NamedEdge>(edges));
}

Partition part(std::vector<std::vector<std::string>> groups) { return Partition(std::move(groups)); }

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag)
      : path(std::filesystem::temp_directory_path() / ("strata_unit_" + tag)) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
  }
};

}  // namespace

TEST_CASE("Partition") {
  const auto p = part({{"c", "a"}, {"b"}});
  CHECK(p.groups() == std::vector<std::vector<std::string>>{{"a", "c"}, {"b"}});
  CHECK(p.elements() == std::vector<std::string>{"a", "b", "c"});
  CHECK(p.restricted_to({"b", "c"}) == part({{"c"}, {"b"}}));
  CHECK_THROWS_AS(part({{"a"}, {}}), ValidationError);
  CHECK_THROWS_AS(part({{"a"}, {"a"}}), ValidationError);
  CHECK(Partition::from_layers(LayeredArchitecture({{"x"}, {"y", "z"}})) == part({{"x"}, {"y", "z"}}));
}

TEST_CASE("mojo_distance: small cases") {
  CHECK(mojo_distance(part({{"a", "b"}, {"c"}}), part({{"a", "b"}, {"c"}})) == 0);
  CHECK(mojo_distance(part({{"a"}, {"b"}, {"c"}}), part({{"a", "b", "c"}})) == 2);
  // Moving a into {c} is enough; the exhaustive table agrees.
  const MojoTable table(3);
  const auto& s = table.states();
  const auto src = std::find(s.begin(), s.end(), testing::Rgs{0, 0, 1}) - s.begin();  // {e0,e1},{e2}
  const auto dst = std::find(s.begin(), s.end(), testing::Rgs{0, 1, 0}) - s.begin();  // {e0,e2},{e1}
  const auto d = mojo_distance(part({{"e0", "e1"}, {"e2"}}), part({{"e0", "e2"}, {"e1"}}));
  CHECK(d == 1);
  CHECK(d == table.distance(static_cast<std::size_t>(src), static_cast<std::size_t>(dst)));
}

TEST_CASE("mojo_distance uses common elements only") {
  CHECK(mojo_distance(part({{"a", "b"}, {"old"}}), part({{"a", "b", "new"}})) == 0);
  CHECK_THROWS_AS(mojo_distance(part({{"a"}}), part({{"b"}})), ValidationError);
}

TEST_CASE("mojo_distance equals exhaustive search up to five elements") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const MojoTable table(n);
    const auto& states = table.states();
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (std::size_t b = 0; b < states.size(); ++b) {
        REQUIRE(mojo_distance(to_partition(states[a]), to_partition(states[b])) == table.distance(a, b));
      }
    }
  }
}

TEST_CASE("max_mojo_distance equals the exhaustive worst case up to six elements") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const MojoTable table(n);
    for (std::size_t t = 0; t < table.states().size(); ++t) {
      REQUIRE(max_mojo_distance(to_partition(table.states()[t])) == table.max_distance_to(t));
    }
  }
}

TEST_CASE("mojofm") {
  const auto p = part({{"a", "b"}, {"c"}, {"d", "e"}});
  CHECK(mojofm(p, p) == 100.0);
  CHECK(mojofm(part({{"a"}}), part({{"a"}})) == 100.0);
  const MojoTable table(5);
  const auto& states = table.states();
  for (std::size_t a = 0; a < states.size(); a += 3) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      const auto fm = mojofm(to_partition(states[a]), to_partition(states[b]));
      const double worst = static_cast<double>(table.max_distance_to(b));
      const double expected = worst == 0 ? 100.0 : 100.0 * (1.0 - static_cast<double>(table.distance(a, b)) / worst);
      REQUIRE(fm == doctest::Approx(expected));
      REQUIRE(fm >= 0.0);
      REQUIRE(fm <= 100.0);
      REQUIRE((fm == 100.0) == (a == b));
    }
  }
}

TEST_CASE("node_impact") {
  const auto ab = edges_of({{"a", "b"}});
  CHECK(node_impact(ab, "b") == 0.0);
  CHECK(node_impact(ab, "a") == 1.0);
  CHECK(node_impact(edges_of({{"a", "b"}, {"b", "c"}}), "a") == 1.0);
  CHECK_THROWS_AS(node_impact(ab, "z"), ValidationError);
}

TEST_CASE("node_impact stays in [0, 1]") {
  Rng rng(4);
  for (int round = 0; round < 30; ++round) {
    const auto g = strata::testing::random_graph(rng, 20, 0.15, false);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      const auto i = node_impact(g, v);
      CHECK(i >= 0.0);
      CHECK(i <= 1.0);
      CHECK((i == 0.0) == (g.out_degree(v) == 0));
    }
  }
}

TEST_CASE("stability") {
  const auto none = stability(DependencyGraph(Level::Package, {"a", "b", "c"}, {}));
  CHECK(none.stability_pct == 100.0);
  CHECK(none.impact_pct == 0.0);
  const auto ab = stability(edges_of({{"a", "b"}}));
  CHECK(ab.stability_pct == 50.0);
  CHECK(ab.impact_pct == 50.0);
  CHECK_THROWS_AS(stability(DependencyGraph()), ValidationError);

  Rng rng(6);
  for (int round = 0; round < 100; ++round) {
    const auto g = strata::testing::random_graph(rng, 1 + uniform_index(rng, 37), 0.1, false);
    const auto s = stability(g);
    REQUIRE(s.impact_pct + s.stability_pct == 100.0);
  }
}

TEST_CASE("incremental_update") {
  RecoveryConfig keep_all;
  keep_all.threshold = 1;

  SUBCASE("unchanged graph") {
    Rng rng(10);
    for (int round = 0; round < 20; ++round) {
      const auto g = strata::testing::random_graph(rng, 25, 0.1, round % 2 == 0);
      const auto prev = recover(g).architecture;
      CHECK(incremental_update(prev, g, RecoveryConfig{}) == prev);
    }
  }
  SUBCASE("new callee lands below its caller") {
    const auto next = edges_of({{"a", "b"}, {"b", "c"}});
    CHECK(incremental_update(LayeredArchitecture({{"a"}, {"b"}}), next, keep_all) ==
          LayeredArchitecture({{"a"}, {"b"}, {"c"}}));
  }
  SUBCASE("removed node disappears") {
    const DependencyGraph next(Level::Package, {"a"}, {});
    CHECK(incremental_update(LayeredArchitecture({{"a"}, {"b"}}), next, keep_all) ==
          LayeredArchitecture(testing::Layers{{"a"}}));
  }
  SUBCASE("empty layers left by removals are dropped") {
    const auto next = edges_of({{"a", "c"}});
    CHECK(incremental_update(LayeredArchitecture({{"a"}, {"b"}, {"c"}}), next, keep_all) ==
          LayeredArchitecture({{"a"}, {"c"}}));
  }
  SUBCASE("adding isolated nodes never moves existing ones") {
    Rng rng(13);
    const auto g = strata::testing::random_graph(rng, 20, 0.12, true);
    const auto prev = recover(g, keep_all).architecture;
    std::vector<std::string> nodes(g.nodes().begin(), g.nodes().end());
    nodes.push_back("zz_new1");
    nodes.push_back("zz_new2");
    const DependencyGraph grown(Level::Package, nodes, g.named_edges());
    const auto next = incremental_update(prev, grown, keep_all);
    for (const auto& name : prev.nodes()) CHECK(next.layer_of(name) == prev.layer_of(name));
    CHECK(next.node_count() == prev.node_count() + 2);
  }
  SUBCASE("empty graph") {
    CHECK_THROWS_AS(incremental_update(LayeredArchitecture(testing::Layers{{"a"}}), DependencyGraph(), keep_all),
                    ValidationError);
  }
}

TEST_CASE("evolve_report") {
  const auto g = edges_of({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
  EvolutionConfig cfg;

  SUBCASE("same graph three times") {
    const auto rows = evolve_report({{"v1", g}, {"v2", g}, {"v3", g}}, cfg);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].old_count == 4);
    CHECK(rows[0].new_count == 0);
    CHECK_FALSE(rows[0].traditional->mojofm.has_value());
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(rows[i].changed_pct == 0.0);
      CHECK(rows[i].traditional->mojofm == 100.0);
      CHECK(rows[i].incremental->mojofm == 100.0);
      CHECK(rows[i].incremental->mojo_ops == 0u);
      CHECK(rows[i].incremental->distribution == rows[0].incremental->distribution);
    }
  }
  SUBCASE("disjoint versions") {
    const auto other = edges_of({{"x", "y"}});
    const auto rows = evolve_report({{"v1", g}, {"v2", other}}, cfg);
    CHECK_FALSE(rows[1].traditional->mojo_ops.has_value());
    CHECK_FALSE(rows[1].incremental->mojofm.has_value());
    CHECK(rows[1].incremental->reseeded);
    CHECK(rows[1].changed_pct == 100.0);
    const auto csv = evolution_to_csv(rows);
    CHECK(csv.find("v2,0,2,2,100.00,-,-,-,-,") != std::string::npos);
  }
  SUBCASE("row arithmetic") {
    const auto grown = edges_of({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
    const auto rows = evolve_report({{"v1", g}, {"v2", grown}}, cfg);
    CHECK(rows[1].old_count == 4);
    CHECK(rows[1].new_count == 1);
    CHECK(rows[1].total_count == 5);
    CHECK(rows[1].changed_pct == 20.0);
    CHECK(rows[1].impact_pct + rows[1].stability_pct == 100.0);
  }
  SUBCASE("traditional mode equals independent recoveries") {
    cfg.mode = EvolutionMode::Traditional;
    const auto grown = edges_of({{"a", "b"}, {"b", "c"}, {"c", "e"}});
    const auto rows = evolve_report({{"v1", g}, {"v2", grown}}, cfg);
    CHECK_FALSE(rows[0].incremental.has_value());
    CHECK(rows[0].traditional->architecture == recover(g, cfg.recovery).architecture);
    CHECK(rows[1].traditional->architecture == recover(grown, cfg.recovery).architecture);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(evolve_report({}, cfg), ValidationError);
    CHECK_THROWS_AS(evolve_report({{"v", g}, {"v", g}}, cfg), ValidationError);
    CHECK_THROWS_AS(parse_evolution_mode("sideways"), ParseError);
  }
}

TEST_CASE("evolution CSV header follows the table layout") {
  const auto g = edges_of({{"a", "b"}});
  const auto rows = evolve_report({{"v1", g}}, EvolutionConfig{});
  const auto csv = evolution_to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "version,old,new,all,changed_pct,traditional_fm,traditional_mojo,incremental_fm,"
        "incremental_mojo,impact,stability,traditional_b,traditional_m,traditional_t,"
        "incremental_b,incremental_m,incremental_t");
}

TEST_CASE("load_manifest") {
  TempDir dir("manifest");
  dir.write("v1.tsv", "a\tb\n");
  dir.write("v2.json", R"({"level":"package","nodes":[{"name":"a"},{"name":"b"},{"name":"c"}],"edges":[{"from":"a","to":"b"}]})");
  dir.write("manifest.json", R"([{"label":"one","graph_path":"v1.tsv"},{"label":"two","graph_path":"v2.json"}])");
  const auto series = load_manifest(dir.path / "manifest.json");
  REQUIRE(series.size() == 2);
  CHECK(series[0].label == "one");
  CHECK(series[1].graph.node_count() == 3);

  dir.write("bad.json", R"({"label":"x"})");
  CHECK_THROWS_AS(load_manifest(dir.path / "bad.json"), ParseError);
  dir.write("missing.json", R"([{"label":"x","graph_path":"nope.tsv"}])");
  CHECK_THROWS_AS(load_manifest(dir.path / "missing.json"), ValidationError);
  CHECK_THROWS_AS(load_manifest(dir.path / "absent.json"), ValidationError);
}
