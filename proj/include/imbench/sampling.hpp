#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "imbench/graph.hpp"
#include "imbench/ledger.hpp"
#include "imbench/prng.hpp"

namespace imbench {

namespace detail {

/// Reusable visited marker: epoch-stamped, so clearing between queries is
/// O(1) instead of O(n).
class VisitMark {
 public:
  void resize(std::size_t n) {
    if (stamps_.size() != n) {
      stamps_.assign(n, 0);
      epoch_ = 0;
    }
  }
  void clear() {
    if (++epoch_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      epoch_ = 1;
    }
  }
  bool test_and_set(std::uint64_t v) {
    if (stamps_[v] == epoch_) return true;
    stamps_[v] = epoch_;
    return false;
  }
  bool test(std::uint64_t v) const { return stamps_[v] == epoch_; }

 private:
  std::vector<std::uint32_t> stamps_;
  std::uint32_t epoch_ = 0;
};

}  // namespace detail

/// Forward simulation of the independent cascade process. Each activated
/// vertex scans its full out-neighbor list exactly once; a coin x < p(e) is
/// flipped for every scanned edge. The ledger is charged one vertex
/// traversal per activation and one edge traversal per scanned out-edge.
class IcSimulator {
 public:
  explicit IcSimulator(const InfluenceGraph& graph) : graph_(&graph) {
    visited_.resize(graph.vertex_count());
    queue_.reserve(graph.vertex_count());
  }

  std::uint32_t run(std::span<const VertexId> seed_set, RngStream& coin,
                    CostLedger& ledger) {
    const InfluenceGraph& g = *graph_;
    if (seed_set.empty()) throw std::invalid_argument("seed set is empty");
    for (const VertexId v : seed_set)
      if (v >= g.vertex_count())
        throw std::invalid_argument("seed vertex id out of range");

    visited_.clear();
    queue_.clear();
    for (const VertexId v : seed_set)
      if (!visited_.test_and_set(v)) queue_.push_back(v);

    std::uint64_t edges_scanned = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId u = queue_[head];
      const auto neighbors = g.out_neighbors(u);
      const auto probs = g.out_probabilities(u);
      edges_scanned += neighbors.size();
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        if (coin.next_unit() < probs[i] && !visited_.test_and_set(neighbors[i]))
          queue_.push_back(neighbors[i]);
      }
    }
    ledger.vertex_traversals += queue_.size();
    ledger.edge_traversals += edges_scanned;
    return static_cast<std::uint32_t>(queue_.size());
  }

 private:
  const InfluenceGraph* graph_;
  detail::VisitMark visited_;
  std::vector<VertexId> queue_;
};

/// One-shot convenience wrapper around IcSimulator.
inline std::uint32_t simulate_ic(const InfluenceGraph& graph,
                                 std::span<const VertexId> seed_set,
                                 RngStream& coin, CostLedger& ledger) {
  IcSimulator sim(graph);
  return sim.run(seed_set, coin, ledger);
}

/// A live-edge realization of an influence graph: per-vertex surviving
/// out-neighbor lists in CSR form.
struct SampledGraph {
  std::vector<std::uint32_t> offsets;  // size n+1
  std::vector<VertexId> targets;

  VertexId vertex_count() const {
    return static_cast<VertexId>(offsets.empty() ? 0 : offsets.size() - 1);
  }
  std::uint64_t edge_count() const { return targets.size(); }
  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
};

/// Materializes one random graph: every edge kept independently with
/// probability p(e). The ledger's sample_size is charged with the stored
/// footprint: surviving edges plus vertices incident to at least one
/// surviving edge. No traversal cost is charged; sampling stores, it does
/// not traverse.
inline SampledGraph sample_snapshot(const InfluenceGraph& graph,
                                    RngStream& coin, CostLedger& ledger) {
  const VertexId n = graph.vertex_count();
  SampledGraph out;
  out.offsets.assign(n + 1, 0);
  out.targets.reserve(
      static_cast<std::size_t>(graph.expected_live_edges() * 1.3) + 8);
  std::vector<bool> touched(n, false);
  std::uint64_t touched_count = 0;
  for (VertexId u = 0; u < n; ++u) {
    const auto neighbors = graph.out_neighbors(u);
    const auto probs = graph.out_probabilities(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (coin.next_unit() < probs[i]) {
        out.targets.push_back(neighbors[i]);
        if (!touched[u]) {
          touched[u] = true;
          ++touched_count;
        }
        if (!touched[neighbors[i]]) {
          touched[neighbors[i]] = true;
          ++touched_count;
        }
      }
    }
    out.offsets[u + 1] = static_cast<std::uint32_t>(out.targets.size());
  }
  ledger.sample_size += touched_count + out.targets.size();
  return out;
}

/// Counts vertices reachable from the seed set in a sampled graph, charging
/// one vertex traversal per reached vertex and one edge traversal per
/// surviving out-edge scanned from a reached vertex.
class ReachabilityQuery {
 public:
  explicit ReachabilityQuery(VertexId n) {
    visited_.resize(n);
    queue_.reserve(n);
    n_ = n;
  }

  std::uint32_t run(const SampledGraph& sampled,
                    std::span<const VertexId> seed_set, CostLedger& ledger) {
    return run(sampled, seed_set, kNoExtraSeed, ledger);
  }

  /// Variant seeding with seed_set plus one extra vertex, used by the
  /// snapshot estimator to evaluate S + v without materializing the union.
  std::uint32_t run(const SampledGraph& sampled,
                    std::span<const VertexId> seed_set, VertexId extra_seed,
                    CostLedger& ledger) {
    for (const VertexId v : seed_set)
      if (v >= n_) throw std::invalid_argument("seed vertex id out of range");
    if (extra_seed != kNoExtraSeed && extra_seed >= n_)
      throw std::invalid_argument("seed vertex id out of range");

    visited_.clear();
    queue_.clear();
    for (const VertexId v : seed_set)
      if (!visited_.test_and_set(v)) queue_.push_back(v);
    if (extra_seed != kNoExtraSeed && !visited_.test_and_set(extra_seed))
      queue_.push_back(extra_seed);

    std::uint64_t edges_scanned = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const auto neighbors = sampled.out_neighbors(queue_[head]);
      edges_scanned += neighbors.size();
      for (const VertexId w : neighbors)
        if (!visited_.test_and_set(w)) queue_.push_back(w);
    }
    ledger.vertex_traversals += queue_.size();
    ledger.edge_traversals += edges_scanned;
    return static_cast<std::uint32_t>(queue_.size());
  }

  static constexpr VertexId kNoExtraSeed = ~VertexId{0};

 private:
  VertexId n_ = 0;
  detail::VisitMark visited_;
  std::vector<VertexId> queue_;
};

inline std::uint32_t reachable_count(const SampledGraph& sampled,
                                     std::span<const VertexId> seed_set,
                                     CostLedger& ledger) {
  ReachabilityQuery query(sampled.vertex_count());
  return query.run(sampled, seed_set, ledger);
}

/// A reverse-reachable set: the vertices that can reach a random target in
/// one live-edge realization. The weight is the sum of original-graph
/// in-degrees over the members, which equals the number of edges the
/// reverse simulation examined.
struct RRSet {
  VertexId target = 0;
  std::vector<VertexId> members;
  std::uint64_t weight = 0;
};

/// Generates RR sets by reverse breadth-first simulation: the target is
/// drawn uniformly, and the in-edges of every member are each examined
/// exactly once with a coin flip x < p(e). Charges one vertex traversal and
/// one stored sample unit per member and one edge traversal per examined
/// in-edge.
class RrSampler {
 public:
  explicit RrSampler(const InfluenceGraph& graph) : graph_(&graph) {
    if (graph.vertex_count() == 0)
      throw std::invalid_argument("graph has no vertices");
    visited_.resize(graph.vertex_count());
    members_.reserve(graph.vertex_count());
  }

  RRSet generate(RngStream& target_rng, RngStream& coin, CostLedger& ledger) {
    const std::uint64_t weight = generate_members(target_rng, coin, ledger);
    return RRSet{members_.front(), members_, weight};
  }

  /// Hot-path variant: appends members to `out` and returns how many were
  /// appended; the first appended vertex is the target.
  std::uint32_t generate_append(std::vector<VertexId>& out,
                                RngStream& target_rng, RngStream& coin,
                                CostLedger& ledger) {
    generate_members(target_rng, coin, ledger);
    out.insert(out.end(), members_.begin(), members_.end());
    return static_cast<std::uint32_t>(members_.size());
  }

 private:
  std::uint64_t generate_members(RngStream& target_rng, RngStream& coin,
                                 CostLedger& ledger) {
    const InfluenceGraph& g = *graph_;
    const VertexId target =
        static_cast<VertexId>(target_rng.next_below(g.vertex_count()));
    visited_.clear();
    members_.clear();
    visited_.test_and_set(target);
    members_.push_back(target);

    std::uint64_t edges_examined = 0;
    for (std::size_t head = 0; head < members_.size(); ++head) {
      const VertexId v = members_[head];
      const auto sources = g.in_neighbors(v);
      const auto probs = g.in_probabilities(v);
      edges_examined += sources.size();
      for (std::size_t i = 0; i < sources.size(); ++i) {
        if (coin.next_unit() < probs[i] && !visited_.test_and_set(sources[i]))
          members_.push_back(sources[i]);
      }
    }
    ledger.vertex_traversals += members_.size();
    ledger.edge_traversals += edges_examined;
    ledger.sample_size += members_.size();
    return edges_examined;
  }

  const InfluenceGraph* graph_;
  detail::VisitMark visited_;
  std::vector<VertexId> members_;
};

inline RRSet generate_rr_set(const InfluenceGraph& graph, RngStream& target_rng,
                             RngStream& coin, CostLedger& ledger) {
  RrSampler sampler(graph);
  return sampler.generate(target_rng, coin, ledger);
}

}  // namespace imbench
