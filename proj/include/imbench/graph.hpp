#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "imbench/prng.hpp"

namespace imbench {

using VertexId = std::uint32_t;

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  double probability = 1.0;
};

enum class Directedness { directed, undirected };

/// Immutable directed influence graph with per-edge probability and both
/// adjacency directions in CSR form. Construction deduplicates ordered
/// (source, target) pairs and rejects self-loops and invalid probabilities;
/// afterwards the structure is safe to share read-only across threads.
class InfluenceGraph {
 public:
  InfluenceGraph() = default;

  InfluenceGraph(VertexId n, std::vector<Edge> edges) : n_(n) {
    for (const Edge& e : edges) {
      if (e.source >= n || e.target >= n)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.source == e.target)
        throw std::invalid_argument("self-loops are not representable");
      if (!(e.probability > 0.0) || e.probability > 1.0)
        throw std::invalid_argument("edge probability must lie in (0,1]");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                              return a.source == b.source &&
                                     a.target == b.target;
                            }),
                edges.end());
    edges_ = std::move(edges);
    build_indices();
  }

  VertexId vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  /// Expected number of live edges, m~ = sum of all edge probabilities.
  double expected_live_edges() const { return expected_live_edges_; }

  VertexId out_degree(VertexId v) const {
    return static_cast<VertexId>(fwd_offsets_[v + 1] - fwd_offsets_[v]);
  }
  VertexId in_degree(VertexId v) const {
    return static_cast<VertexId>(rev_offsets_[v + 1] - rev_offsets_[v]);
  }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {fwd_targets_.data() + fwd_offsets_[v],
            fwd_targets_.data() + fwd_offsets_[v + 1]};
  }
  std::span<const double> out_probabilities(VertexId v) const {
    return {fwd_probs_.data() + fwd_offsets_[v],
            fwd_probs_.data() + fwd_offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const {
    return {rev_sources_.data() + rev_offsets_[v],
            rev_sources_.data() + rev_offsets_[v + 1]};
  }
  std::span<const double> in_probabilities(VertexId v) const {
    return {rev_probs_.data() + rev_offsets_[v],
            rev_probs_.data() + rev_offsets_[v + 1]};
  }

  /// Transposed copy (every edge reversed, probabilities kept).
  InfluenceGraph transposed() const {
    std::vector<Edge> rev;
    rev.reserve(edges_.size());
    for (const Edge& e : edges_)
      rev.push_back({e.target, e.source, e.probability});
    return InfluenceGraph(n_, std::move(rev));
  }

  /// Structural + probability hash. Two graphs with equal fingerprints have
  /// identical n and identical (source, target, probability-bits) edge lists.
  std::uint64_t fingerprint() const {
    std::uint64_t h = detail::mix64(0x696d626e63680000ULL ^ n_);
    h = detail::mix64(h ^ edges_.size());
    for (const Edge& e : edges_) {
      h = detail::mix64(h ^ e.source);
      h = detail::mix64(h ^ e.target);
      h = detail::mix64(h ^ std::bit_cast<std::uint64_t>(e.probability));
    }
    return h;
  }

 private:
  void build_indices() {
    fwd_offsets_.assign(n_ + 1, 0);
    rev_offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++fwd_offsets_[e.source + 1];
      ++rev_offsets_[e.target + 1];
    }
    for (VertexId v = 0; v < n_; ++v) {
      fwd_offsets_[v + 1] += fwd_offsets_[v];
      rev_offsets_[v + 1] += rev_offsets_[v];
    }
    fwd_targets_.resize(edges_.size());
    fwd_probs_.resize(edges_.size());
    rev_sources_.resize(edges_.size());
    rev_probs_.resize(edges_.size());
    std::vector<std::uint64_t> fwd_pos(fwd_offsets_.begin(),
                                       fwd_offsets_.end() - 1);
    std::vector<std::uint64_t> rev_pos(rev_offsets_.begin(),
                                       rev_offsets_.end() - 1);
    double prob_sum = 0.0;
    for (const Edge& e : edges_) {
      const auto fi = fwd_pos[e.source]++;
      fwd_targets_[fi] = e.target;
      fwd_probs_[fi] = e.probability;
      const auto ri = rev_pos[e.target]++;
      rev_sources_[ri] = e.source;
      rev_probs_[ri] = e.probability;
      prob_sum += e.probability;
    }
    expected_live_edges_ = prob_sum;
  }

  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> fwd_offsets_;
  std::vector<VertexId> fwd_targets_;
  std::vector<double> fwd_probs_;
  std::vector<std::uint64_t> rev_offsets_;
  std::vector<VertexId> rev_sources_;
  std::vector<double> rev_probs_;
  double expected_live_edges_ = 0.0;
};

/// Edge probability assignment policy.
struct ProbabilityScheme {
  enum class Kind { uniform, in_degree_weighted, out_degree_weighted };

  Kind kind = Kind::uniform;
  double constant = 0.1;  // used by Kind::uniform only

  static ProbabilityScheme uniform(double c) {
    if (!(c > 0.0) || c > 1.0)
      throw std::invalid_argument("uniform probability must lie in (0,1]");
    return {Kind::uniform, c};
  }
  static ProbabilityScheme in_degree_weighted() {
    return {Kind::in_degree_weighted, 0.0};
  }
  static ProbabilityScheme out_degree_weighted() {
    return {Kind::out_degree_weighted, 0.0};
  }

  std::string label() const {
    switch (kind) {
      case Kind::uniform: {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, constant);
        return "uc" + std::string(buf, end);
      }
      case Kind::in_degree_weighted:
        return "iwc";
      case Kind::out_degree_weighted:
        return "owc";
    }
    return "?";
  }
};

/// Parses a whitespace-separated "u v" edge-list stream. Lines starting with
/// '#' are comments. Vertex ids are remapped to dense 0..n-1 in order of
/// first appearance; duplicates and self-loops are dropped; for undirected
/// input each line contributes both directions. Probabilities are left at
/// the placeholder 1.0 until assign_probabilities.
inline InfluenceGraph load_edge_list(std::istream& in,
                                     Directedness directedness) {
  std::unordered_map<std::uint64_t, VertexId> remap;
  std::vector<Edge> edges;
  std::string line;
  std::uint64_t line_number = 0;
  bool saw_edge = false;

  auto dense_id = [&](std::uint64_t raw) {
    auto [it, inserted] =
        remap.emplace(raw, static_cast<VertexId>(remap.size()));
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    // Tolerate trailing CR from files with Windows line endings.
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    const auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#') continue;

    std::uint64_t raw_u = 0, raw_v = 0;
    const char* ptr = view.data() + first;
    const char* end = view.data() + view.size();
    auto r1 = std::from_chars(ptr, end, raw_u);
    if (r1.ec != std::errc{})
      throw std::runtime_error("parse error at line " +
                               std::to_string(line_number));
    ptr = r1.ptr;
    while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    auto r2 = std::from_chars(ptr, end, raw_v);
    if (r2.ec != std::errc{})
      throw std::runtime_error("parse error at line " +
                               std::to_string(line_number));
    for (const char* rest = r2.ptr; rest < end; ++rest)
      if (*rest != ' ' && *rest != '\t')
        throw std::runtime_error("parse error at line " +
                                 std::to_string(line_number));

    const VertexId u = dense_id(raw_u);
    const VertexId v = dense_id(raw_v);
    saw_edge = true;
    if (u == v) continue;
    edges.push_back({u, v, 1.0});
    if (directedness == Directedness::undirected) edges.push_back({v, u, 1.0});
  }
  if (!saw_edge) throw std::runtime_error("edge list is empty");
  return InfluenceGraph(static_cast<VertexId>(remap.size()),
                        std::move(edges));
}

/// Returns a copy of the graph with probabilities set by the scheme.
/// Degrees are those of the deduplicated graph.
inline InfluenceGraph assign_probabilities(const InfluenceGraph& graph,
                                           const ProbabilityScheme& scheme) {
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (Edge& e : edges) {
    switch (scheme.kind) {
      case ProbabilityScheme::Kind::uniform:
        e.probability = scheme.constant;
        break;
      case ProbabilityScheme::Kind::in_degree_weighted:
        e.probability = 1.0 / graph.in_degree(e.target);
        break;
      case ProbabilityScheme::Kind::out_degree_weighted:
        e.probability = 1.0 / graph.out_degree(e.source);
        break;
    }
  }
  return InfluenceGraph(graph.vertex_count(), std::move(edges));
}

/// Barabasi-Albert preferential attachment. The bootstrap is a star: the
/// first attach_count+1 vertices are all linked to vertex 0, so the total
/// undirected edge count is exactly attach_count * (n - attach_count); with
/// attach_count = 1 that is n-1. Each new vertex attaches to attach_count
/// distinct existing vertices chosen proportionally to current degree, and
/// every undirected edge then receives one uniformly random direction.
inline InfluenceGraph generate_ba(VertexId n, VertexId attach_count,
                                  std::uint64_t seed) {
  if (attach_count < 1) throw std::invalid_argument("attach count must be >= 1");
  if (n <= attach_count)
    throw std::invalid_argument("vertex count must exceed attach count");

  RngStream rng(detail::mix64(seed ^ 0xba00ba00ba00ba00ULL));
  std::vector<std::pair<VertexId, VertexId>> undirected;
  undirected.reserve(static_cast<std::size_t>(attach_count) *
                     (n - attach_count));
  // Each edge contributes both endpoints; sampling an entry uniformly picks
  // a vertex with probability proportional to its degree.
  std::vector<VertexId> endpoint_pool;
  endpoint_pool.reserve(undirected.capacity() * 2);

  for (VertexId v = 1; v <= attach_count; ++v) {
    undirected.emplace_back(0, v);
    endpoint_pool.push_back(0);
    endpoint_pool.push_back(v);
  }
  std::vector<VertexId> chosen;
  std::vector<bool> is_chosen(n, false);
  for (VertexId v = attach_count + 1; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < attach_count) {
      const VertexId candidate =
          endpoint_pool[rng.next_below(endpoint_pool.size())];
      if (is_chosen[candidate]) continue;
      is_chosen[candidate] = true;
      chosen.push_back(candidate);
    }
    for (const VertexId u : chosen) {
      is_chosen[u] = false;
      undirected.emplace_back(u, v);
      endpoint_pool.push_back(u);
      endpoint_pool.push_back(v);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (const auto& [a, b] : undirected) {
    const bool flip = rng.next_u64() & 1;
    edges.push_back({flip ? b : a, flip ? a : b, 1.0});
  }
  return InfluenceGraph(n, std::move(edges));
}

inline constexpr std::string_view kGraphFormatHeader = "imbench-graph v1";

/// Writes the versioned text snapshot format: header, "n m", then one
/// "source target probability" line per edge with shortest round-trip
/// formatting, so reloading reproduces bit-identical probabilities.
inline void save_graph(const InfluenceGraph& graph, std::ostream& out) {
  out << kGraphFormatHeader << "\n"
      << graph.vertex_count() << " " << graph.edge_count() << "\n";
  char buf[64];
  for (const Edge& e : graph.edges()) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, e.probability);
    out << e.source << " " << e.target << " " << std::string_view(buf, end)
        << "\n";
  }
}

inline InfluenceGraph load_graph(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != kGraphFormatHeader)
    throw std::runtime_error("unrecognized graph snapshot header");
  std::uint64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("truncated graph snapshot");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    std::string prob_text;
    if (!(in >> u >> v >> prob_text))
      throw std::runtime_error("truncated graph snapshot");
    double p = 0.0;
    auto res =
        std::from_chars(prob_text.data(), prob_text.data() + prob_text.size(), p);
    if (res.ec != std::errc{})
      throw std::runtime_error("bad probability in graph snapshot");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), p});
  }
  return InfluenceGraph(static_cast<VertexId>(n), std::move(edges));
}

}  // namespace imbench
