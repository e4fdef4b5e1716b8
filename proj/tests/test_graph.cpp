#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "imbench/graph.hpp"

using namespace imbench;

namespace {

InfluenceGraph karate() {
  std::ifstream in(std::string(IMBENCH_DATA_DIR) + "/karate.txt");
  REQUIRE(in.good());
  return load_edge_list(in, Directedness::undirected);
}

}  // namespace

TEST_CASE("karate loads with the published size") {
  const auto g = karate();
  CHECK(g.vertex_count() == 34);
  CHECK(g.edge_count() == 156);
}

TEST_CASE("single directed line") {
  std::istringstream in("0 1\n");
  const auto g = load_edge_list(in, Directedness::directed);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("duplicate edges are dropped") {
  std::istringstream in("0 1\n0 1\n");
  const auto g = load_edge_list(in, Directedness::directed);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("self-loops are dropped, comments and blanks skipped") {
  std::istringstream in("# header\n\n3 3\n3 4\n\t# indented comment\n4 3\n");
  const auto g = load_edge_list(in, Directedness::directed);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("vertex ids are remapped by first appearance") {
  std::istringstream in("10 7\n7 3\n");
  const auto g = load_edge_list(in, Directedness::directed);
  REQUIRE(g.vertex_count() == 3);
  // 10 -> 0, 7 -> 1, 3 -> 2
  CHECK(g.out_degree(0) == 1);
  CHECK(g.out_neighbors(0)[0] == 1);
  CHECK(g.out_neighbors(1)[0] == 2);
}

TEST_CASE("malformed lines report the line number") {
  std::istringstream in("0 1\n2 x\n");
  CHECK_THROWS_WITH(load_edge_list(in, Directedness::directed),
                    Catch::Matchers::ContainsSubstring("line 2"));
  std::istringstream in2("0 1 junk\n");
  CHECK_THROWS_WITH(load_edge_list(in2, Directedness::directed),
                    Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("empty input is an error") {
  std::istringstream in("# only a comment\n");
  CHECK_THROWS(load_edge_list(in, Directedness::directed));
}

TEST_CASE("tab separated SNAP-style input parses") {
  std::istringstream in("# FromNodeId\tToNodeId\n0\t1\n1\t2\n");
  const auto g = load_edge_list(in, Directedness::directed);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("outward star under OWC gets 1/3 per edge") {
  std::istringstream in("0 1\n0 2\n0 3\n");
  const auto g = assign_probabilities(
      load_edge_list(in, Directedness::directed),
      ProbabilityScheme::out_degree_weighted());
  for (const Edge& e : g.edges()) CHECK(e.probability == 1.0 / 3.0);
}

TEST_CASE("karate UC(0.1) has expected live edge mass 15.6") {
  const auto g = assign_probabilities(karate(), ProbabilityScheme::uniform(0.1));
  CHECK(g.expected_live_edges() == Catch::Approx(15.6).epsilon(1e-12));
}

TEST_CASE("IWC normalizes incoming probability mass per vertex") {
  const auto g =
      assign_probabilities(karate(), ProbabilityScheme::in_degree_weighted());
  std::uint32_t with_in_edges = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    ++with_in_edges;
    double sum = 0.0;
    for (const double p : g.in_probabilities(v)) sum += p;
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
  CHECK(g.expected_live_edges() ==
        Catch::Approx(static_cast<double>(with_in_edges)).margin(1e-9));
}

TEST_CASE("OWC normalizes outgoing probability mass per vertex") {
  std::istringstream in("0 1\n0 2\n1 2\n3 0\n");
  const auto g = assign_probabilities(
      load_edge_list(in, Directedness::directed),
      ProbabilityScheme::out_degree_weighted());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0) continue;
    double sum = 0.0;
    for (const double p : g.out_probabilities(v)) sum += p;
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("forward and reverse indices describe the same edge multiset") {
  const auto g = assign_probabilities(karate(), ProbabilityScheme::uniform(0.1));
  std::map<std::pair<VertexId, VertexId>, double> fwd, rev;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto outs = g.out_neighbors(v);
    const auto probs = g.out_probabilities(v);
    for (std::size_t i = 0; i < outs.size(); ++i)
      fwd[{v, outs[i]}] = probs[i];
    const auto ins = g.in_neighbors(v);
    const auto in_probs = g.in_probabilities(v);
    for (std::size_t i = 0; i < ins.size(); ++i)
      rev[{ins[i], v}] = in_probs[i];
  }
  CHECK(fwd == rev);
  double m_fwd = 0.0, m_rev = 0.0;
  for (const auto& [e, p] : fwd) m_fwd += p;
  for (const auto& [e, p] : rev) m_rev += p;
  CHECK(m_fwd == Catch::Approx(g.expected_live_edges()));
  CHECK(m_rev == Catch::Approx(g.expected_live_edges()));
}

TEST_CASE("BA generator edge counts follow the star bootstrap") {
  CHECK(generate_ba(1000, 1, 7).edge_count() == 999);
  CHECK(generate_ba(1000, 11, 7).edge_count() == 10879);
  CHECK(generate_ba(2, 1, 7).edge_count() == 1);
}

TEST_CASE("BA generator rejects n <= M") {
  CHECK_THROWS(generate_ba(5, 5, 1));
  CHECK_THROWS(generate_ba(4, 5, 1));
}

TEST_CASE("BA generator is deterministic under the seed") {
  const auto a = generate_ba(300, 3, 11);
  const auto b = generate_ba(300, 3, 11);
  const auto c = generate_ba(300, 3, 12);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("BA attachment favors high-degree vertices") {
  const auto g = generate_ba(2000, 1, 3);
  // Vertex 0 anchors the bootstrap star; in a BA tree it should end up with
  // far more than the average (~2) incident edges.
  CHECK(g.out_degree(0) + g.in_degree(0) > 10);
}

TEST_CASE("graph snapshot round-trips exactly") {
  const auto g = assign_probabilities(
      generate_ba(100, 2, 5), ProbabilityScheme::in_degree_weighted());
  std::stringstream buffer;
  save_graph(g, buffer);
  const auto back = load_graph(buffer);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edge_count() == g.edge_count());
  CHECK(back.expected_live_edges() == g.expected_live_edges());
  CHECK(back.fingerprint() == g.fingerprint());
}

TEST_CASE("snapshot loader rejects foreign headers") {
  std::istringstream in("something-else v9\n1 0\n");
  CHECK_THROWS(load_graph(in));
}

TEST_CASE("probabilities outside (0,1] are rejected") {
  CHECK_THROWS(InfluenceGraph(2, {{0, 1, 0.0}}));
  CHECK_THROWS(InfluenceGraph(2, {{0, 1, 1.5}}));
  CHECK_NOTHROW(InfluenceGraph(2, {{0, 1, 1.0}}));
}
