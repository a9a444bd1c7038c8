#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "strata/error.hpp"
#include "strata/metrics.hpp"

using namespace strata;
using strata::testing::align_exhaustive;
using strata::testing::classify_edges_naive;

namespace {

DependencyGraph edges_of(std::initializer_list<NamedEdge> edges) {
  return DependencyGraph(Level::Package, {}, std::vector<NamedEdge>(edges));
}

const LayeredArchitecture abc({{"a"}, {"b"}, {"c"}});

}  // namespace

TEST_CASE("count_violations: chain is clean") {
  const auto r = count_violations(abc, edges_of({{"a", "b"}, {"b", "c"}}));
  CHECK(r.back_calls == 0);
  CHECK(r.skip_calls == 0);
  CHECK(r.adjacent_calls == 2);
  CHECK(r.back_rate == 0.0);
  CHECK(r.violating_edges.empty());
}

TEST_CASE("count_violations: one back-call, one skip-call") {
  const auto back = count_violations(abc, edges_of({{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  CHECK(back.back_calls == 1);
  CHECK(back.skip_calls == 0);
  CHECK(back.violating_edges == std::vector<ViolatingEdge>{{"c", "a", EdgeKind::Back}});
  CHECK(back.cyclic.scc_count() == 1);
  CHECK(back.cyclic.cross_layer_cycles == 1);

  const auto skip = count_violations(abc, edges_of({{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  CHECK(skip.skip_calls == 1);
  CHECK(skip.back_calls == 0);
  CHECK(skip.skip_rate == doctest::Approx(100.0 / 3.0));
}

TEST_CASE("count_violations: no edges means zero rates") {
  const auto r = count_violations(LayeredArchitecture(testing::Layers{{"x", "y"}}), DependencyGraph(Level::Package, {"x", "y"}, {}));
  CHECK(r.edge_count == 0);
  CHECK(r.back_rate == 0.0);
  CHECK(r.skip_rate == 0.0);
}

TEST_CASE("count_violations: coverage mismatch") {
  CHECK_THROWS_AS(count_violations(LayeredArchitecture({{"a"}, {"b"}}), edges_of({{"a", "c"}})),
                  ValidationError);
}

TEST_CASE("count_violations agrees with the naive classifier") {
  Rng rng(2024);
  for (int graph_no = 0; graph_no < 30; ++graph_no) {
    const auto n = 1 + uniform_index(rng, 8);
    const auto g = strata::testing::random_graph(rng, n, 0.35, false);
    for (int k = 0; k < 40; ++k) {
      const auto arch = strata::testing::random_layering(rng, g, 1 + uniform_index(rng, 5));
      const auto expected = classify_edges_naive(arch, g);
      const auto r = count_violations(arch, g);
      REQUIRE(r.back_calls == expected.back);
      REQUIRE(r.skip_calls == expected.skip);
      REQUIRE(r.adjacent_calls == expected.adjacent);
      REQUIRE(r.intra_calls == expected.intra);
      CHECK(r.back_calls + r.skip_calls + r.adjacent_calls + r.intra_calls == g.edge_count());
      CHECK(r.violating_edges.size() == r.back_calls + r.skip_calls);
      if (g.edge_count() > 0) {
        CHECK(r.back_rate == 100.0 * static_cast<double>(r.back_calls) / static_cast<double>(g.edge_count()));
      }
    }
  }
}

TEST_CASE("align_layers: spec cases") {
  CHECK(align_layers(abc, abc) == LayerAlignment{0, 1, 2});
  CHECK(align_layers(abc, LayeredArchitecture({{"a"}, {"b", "c"}})) == LayerAlignment{0, 1, 1});
  CHECK(align_layers(LayeredArchitecture(testing::Layers{{"a", "b", "c", "d"}}),
                     LayeredArchitecture({{"a"}, {"b", "c"}, {"d"}})) == LayerAlignment{1});
}

TEST_CASE("align_layers: ties go to the earlier truth layer") {
  // Predicted second layer overlaps truth layers 2 and 3 equally.
  CHECK(align_layers(LayeredArchitecture({{"a"}, {"b", "c"}}), abc) == LayerAlignment{0, 1});
}

TEST_CASE("align_layers matches exhaustive search") {
  Rng rng(99);
  for (int round = 0; round < 400; ++round) {
    const auto n = 1 + uniform_index(rng, 8);
    const auto g = strata::testing::random_graph(rng, n, 0.0, true);
    const auto predicted = strata::testing::random_layering(rng, g, 1 + uniform_index(rng, 4));
    const auto truth = strata::testing::random_layering(rng, g, 1 + uniform_index(rng, 4));
    const auto [best, map] = align_exhaustive(predicted, truth);
    REQUIRE(align_layers(predicted, truth) == map);
  }
}

TEST_CASE("classification_metrics: perfect recovery") {
  const auto r = classification_metrics(abc, abc);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == 1.0);
  CHECK(r.f_score == 1.0);
  CHECK(r.accuracy == 100.0);
}

TEST_CASE("classification_metrics: one predicted layer over two equal truth layers") {
  for (std::size_t k : {1u, 3u, 6u}) {
    std::vector<std::string> top, bottom, all;
    for (std::size_t i = 0; i < k; ++i) {
      top.push_back("t" + std::to_string(i));
      bottom.push_back("b" + std::to_string(i));
    }
    all = top;
    all.insert(all.end(), bottom.begin(), bottom.end());
    const auto r = classification_metrics(LayeredArchitecture({all}), LayeredArchitecture({top, bottom}));
    CHECK(r.accuracy == 50.0);
  }
}

TEST_CASE("classification_metrics: three-node misplacement") {
  const auto r = classification_metrics(LayeredArchitecture({{"a"}, {"b", "c"}}), abc);
  CHECK(r.accuracy == doctest::Approx(200.0 / 3.0));
  // Truth layer 3 receives no prediction, so its precision counts as 0.
  CHECK(r.precision == doctest::Approx(0.5));
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.per_layer.size() == 3);
  CHECK(r.per_layer[2].precision == 0.0);
  CHECK(classification_to_csv(r, tier_distribution(abc)).find(",66.67,") != std::string::npos);
}

TEST_CASE("classification_metrics: hand-computed macro averages") {
  const auto r = classification_metrics(LayeredArchitecture({{"a"}, {"b", "c", "d"}}),
                                        LayeredArchitecture({{"a", "b"}, {"c", "d"}}));
  CHECK(r.precision == doctest::Approx(5.0 / 6.0));
  CHECK(r.recall == doctest::Approx(0.75));
  CHECK(r.f_score == doctest::Approx(2 * (5.0 / 6.0) * 0.75 / (5.0 / 6.0 + 0.75)));
  CHECK(r.accuracy == 75.0);
}

TEST_CASE("classification_metrics is invariant under renaming") {
  const auto r1 = classification_metrics(LayeredArchitecture({{"a"}, {"b", "c", "d"}}),
                                         LayeredArchitecture({{"a", "b"}, {"c", "d"}}));
  const auto r2 = classification_metrics(LayeredArchitecture({{"w"}, {"x", "y", "z"}}),
                                         LayeredArchitecture({{"w", "x"}, {"y", "z"}}));
  CHECK(r1.precision == r2.precision);
  CHECK(r1.recall == r2.recall);
  CHECK(r1.accuracy == r2.accuracy);
}

TEST_CASE("classification_metrics: node sets must match") {
  CHECK_THROWS_AS(classification_metrics(LayeredArchitecture(testing::Layers{{"a"}}), LayeredArchitecture(testing::Layers{{"b"}})),
                  ValidationError);
}

TEST_CASE("reports can carry the Constore profile") {
  ClassificationReport r;
  r.precision = 0.93;
  r.recall = 0.92;
  r.f_score = 2 * 0.93 * 0.92 / (0.93 + 0.92);
  r.accuracy = 100.0 * 10.0 / 11.0;
  const auto csv = classification_to_csv(r, TierDistribution{3, 5, 3});
  CHECK(csv == "recall,precision,f_score,accuracy,bottom,middle,top\n0.92,0.93,0.92,90.91,3,5,3\n");
  const auto json = nlohmann::json::parse(classification_to_json(r, TierDistribution{3, 5, 3}));
  CHECK(json["accuracy"].get<double>() == r.accuracy);
}

TEST_CASE("tier_distribution") {
  CHECK(tier_distribution(abc) == TierDistribution{1, 1, 1});
  CHECK(tier_distribution(LayeredArchitecture({{"a"}, {"b", "c"}, {"d", "e", "f"}, {"g", "h"}, {"i"}})) ==
        TierDistribution{1, 7, 1});
  CHECK(tier_distribution(LayeredArchitecture(testing::Layers{{"a", "b", "c", "d"}})) == TierDistribution{0, 4, 0});
  CHECK(tier_distribution(LayeredArchitecture({{"a"}, {"b", "c"}})) == TierDistribution{2, 0, 1});
}

TEST_CASE("violation CSV columns") {
  const auto r = count_violations(abc, edges_of({{"a", "b"}, {"b", "c"}, {"c", "a"}}));
  CHECK(violations_to_csv(r) == "back,skip,cyclic,back_rate,skip_rate,edges,scc_count\n1,0,1,33.33,0.00,3,1\n");
  const auto json = nlohmann::json::parse(violations_to_json(r));
  CHECK(json["back_calls"] == 1);
}
