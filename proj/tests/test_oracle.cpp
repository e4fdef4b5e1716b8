#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "imbench/oracle.hpp"

using namespace imbench;

namespace {

InfluenceGraph random_tiny_graph(RngStream& rng, VertexId n,
                                 std::uint32_t max_edges) {
  std::vector<Edge> edges;
  const std::uint32_t want = 1 + rng.next_below(max_edges);
  std::set<std::pair<VertexId, VertexId>> used;
  int attempts = 0;
  while (edges.size() < want && attempts++ < 200) {
    const auto u = static_cast<VertexId>(rng.next_below(n));
    const auto v = static_cast<VertexId>(rng.next_below(n));
    if (u == v || used.count({u, v})) continue;
    used.insert({u, v});
    edges.push_back({u, v, 0.05 + 0.9 * rng.next_unit()});
  }
  return InfluenceGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("exact influence of a single weighted edge") {
  InfluenceGraph g(2, {{0, 1, 0.4}});
  const VertexId seeds[] = {0};
  CHECK(exact_influence(g, seeds) == Catch::Approx(1.4).margin(1e-12));
}

TEST_CASE("exact influence of the half-half path is 1.75 exactly") {
  InfluenceGraph g(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  const VertexId seeds[] = {0};
  CHECK(exact_influence(g, seeds) == 1.75);
}

TEST_CASE("seeding every vertex yields n") {
  InfluenceGraph g(4, {{0, 1, 0.3}, {2, 3, 0.9}});
  const VertexId seeds[] = {0, 1, 2, 3};
  CHECK(exact_influence(g, seeds) == Catch::Approx(4.0));
}

TEST_CASE("exact oracle refuses graphs beyond the edge cap") {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < 21; ++i) edges.push_back({i, i + 1, 0.5});
  InfluenceGraph g(22, edges);
  CHECK_THROWS_WITH(exact_influence(g, std::vector<VertexId>{0}),
                    Catch::Matchers::ContainsSubstring("evaluator"));
}

TEST_CASE("exact influence is monotone and submodular on tiny graphs") {
  RngStream rng(777);
  for (int trial = 0; trial < 15; ++trial) {
    const VertexId n = 4 + rng.next_below(4);  // 4..7 vertices
    const auto g = random_tiny_graph(rng, n, 10);
    const auto inf = ExactOracle(g).all_subset_influences();
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t t = 0; t <= full; ++t) {
      for (std::uint32_t s = t;; s = (s - 1) & t) {
        // s iterates over subsets of t
        for (VertexId v = 0; v < n; ++v) {
          if (t & (1u << v)) continue;
          const double gain_small = inf[s | (1u << v)] - inf[s];
          const double gain_large = inf[t | (1u << v)] - inf[t];
          REQUIRE(gain_small >= gain_large - 1e-9);
          REQUIRE(inf[t | (1u << v)] >= inf[t] - 1e-12);  // monotone
        }
        if (s == 0) break;
      }
    }
  }
}

TEST_CASE("evaluator endpoints: full seed set and empty seed set") {
  InfluenceGraph g(5, {{0, 1, 0.5}, {1, 2, 0.5}, {3, 4, 0.2}});
  const auto ev = InfluenceEvaluator::build(g, 5000, 99);
  const std::vector<VertexId> everything = {0, 1, 2, 3, 4};
  CHECK(ev.evaluate(everything).estimate == Catch::Approx(5.0));
  CHECK(ev.evaluate({}).estimate == 0.0);
}

TEST_CASE("confidence halfwidth follows 1.29 n / sqrt(N)") {
  InfluenceGraph g(34, {{0, 1, 0.1}});
  const auto ev = InfluenceEvaluator::build(g, 10000000, 1, 2);
  CHECK(ev.ci99_halfwidth() ==
        Catch::Approx(1.29 * 34 / std::sqrt(1e7)).epsilon(1e-12));
  CHECK(ev.ci99_halfwidth() == Catch::Approx(0.01387).margin(2e-5));
}

TEST_CASE("evaluator detects a graph mismatch") {
  InfluenceGraph g1(3, {{0, 1, 0.5}});
  InfluenceGraph g2(3, {{0, 1, 0.6}});
  const auto ev = InfluenceEvaluator::build(g1, 100, 5);
  CHECK_NOTHROW(ev.verify_graph(g1));
  CHECK_THROWS_WITH(ev.verify_graph(g2),
                    Catch::Matchers::ContainsSubstring("fingerprint"));
}

TEST_CASE("repeated evaluations of one seed set are bit-identical") {
  InfluenceGraph g(6, {{0, 1, 0.4}, {1, 2, 0.7}, {2, 3, 0.3}, {4, 5, 0.9}});
  const auto ev = InfluenceEvaluator::build(g, 20000, 3);
  const std::vector<VertexId> seeds = {0, 4};
  const auto a = ev.evaluate(seeds).estimate;
  const auto b = ev.evaluate(seeds).estimate;
  const std::vector<VertexId> permuted = {4, 0};
  const auto c = ev.evaluate(permuted).estimate;
  CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
  CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(c));
}

TEST_CASE("evaluator build is independent of the worker count") {
  InfluenceGraph g(8, {{0, 1, 0.5}, {1, 2, 0.25}, {5, 6, 0.8}, {6, 7, 0.4}});
  const auto a = InfluenceEvaluator::build(g, 200000, 17, 1);
  const auto b = InfluenceEvaluator::build(g, 200000, 17, 4);
  for (VertexId v = 0; v < 8; ++v) {
    const std::vector<VertexId> s = {v};
    CHECK(a.evaluate(s).estimate == b.evaluate(s).estimate);
  }
}

TEST_CASE("evaluator estimates cover the exact value at the stated rate") {
  InfluenceGraph g(5, {{0, 1, 0.6}, {1, 2, 0.5}, {0, 3, 0.3}, {3, 4, 0.7}});
  const std::vector<VertexId> seeds = {0};
  const double exact = exact_influence(g, seeds);
  int covered = 0;
  const int builds = 300;
  for (int i = 0; i < builds; ++i) {
    const auto ev = InfluenceEvaluator::build(g, 4000, 1000 + i);
    const auto est = ev.evaluate(seeds);
    if (std::abs(est.estimate - exact) <= est.ci99_halfwidth) ++covered;
  }
  CHECK(covered >= static_cast<int>(builds * 0.99));
}

TEST_CASE("evaluator cache round-trips") {
  InfluenceGraph g(6, {{0, 1, 0.5}, {1, 2, 0.5}, {3, 4, 0.25}, {4, 5, 0.75}});
  const auto ev = InfluenceEvaluator::build(g, 30000, 12);
  std::stringstream buffer;
  ev.save(buffer);
  const auto back = InfluenceEvaluator::load(buffer);
  CHECK(back.rr_set_count() == ev.rr_set_count());
  CHECK(back.graph_fingerprint() == ev.graph_fingerprint());
  CHECK(back.mean_rr_size() == ev.mean_rr_size());
  for (VertexId v = 0; v < 6; ++v) {
    const std::vector<VertexId> s = {v};
    CHECK(back.evaluate(s).estimate == ev.evaluate(s).estimate);
  }
  const std::vector<VertexId> pair = {0, 3};
  CHECK(back.evaluate(pair).estimate == ev.evaluate(pair).estimate);
}

TEST_CASE("corrupted cache headers are rejected") {
  std::stringstream buffer("not an evaluator");
  CHECK_THROWS(InfluenceEvaluator::load(buffer));
}
