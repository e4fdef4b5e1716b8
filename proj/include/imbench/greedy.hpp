#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "imbench/estimators.hpp"
#include "imbench/graph.hpp"
#include "imbench/ledger.hpp"
#include "imbench/prng.hpp"

namespace imbench {

/// A selected seed set: the ordered form preserves selection order, the
/// canonical form (sorted) is the key used by distributions.
struct SeedSet {
  std::vector<VertexId> ordered;

  std::vector<VertexId> canonical() const {
    std::vector<VertexId> sorted = ordered;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  }
  std::size_t size() const { return ordered.size(); }
};

template <typename E>
concept InfluenceEstimatorFor = requires(E est, std::span<const VertexId> s,
                                         VertexId v, CostLedger& ledger) {
  { est.estimate(s, v, ledger) } -> std::convertible_to<double>;
  est.update(v, ledger);
};

/// The shared greedy loop. One vertex permutation is shuffled up front and
/// reused in every round; candidates are scanned in that order and the
/// running maximum is replaced on >= comparison, so the last vertex
/// attaining the maximum wins and ties break uniformly at random. The final
/// round's Update is skipped: it could not affect the returned set or the
/// ledger.
template <typename Estimator>
  requires InfluenceEstimatorFor<Estimator>
SeedSet run_greedy(const InfluenceGraph& graph, Estimator& estimator,
                   std::uint32_t seed_count, RngStream& shuffle_rng,
                   CostLedger& ledger) {
  const VertexId n = graph.vertex_count();
  if (seed_count > n)
    throw std::invalid_argument("seed count exceeds vertex count");

  std::vector<VertexId> permutation(n);
  std::iota(permutation.begin(), permutation.end(), VertexId{0});
  shuffle(permutation, shuffle_rng);

  SeedSet seeds;
  seeds.ordered.reserve(seed_count);
  std::vector<bool> selected(n, false);
  for (std::uint32_t round = 0; round < seed_count; ++round) {
    bool have_best = false;
    double best_value = 0.0;
    VertexId best_vertex = 0;
    for (const VertexId v : permutation) {
      if (selected[v]) continue;
      const double value = estimator.estimate(seeds.ordered, v, ledger);
      if (!have_best || value >= best_value) {
        have_best = true;
        best_value = value;
        best_vertex = v;
      }
    }
    selected[best_vertex] = true;
    seeds.ordered.push_back(best_vertex);
    if (round + 1 < seed_count) estimator.update(best_vertex, ledger);
  }
  return seeds;
}

/// Builds the estimator named by `kind` from the trial's streams and runs
/// the greedy loop. All sampling and traversal costs land in `ledger`.
inline SeedSet select_seeds(const InfluenceGraph& graph,
                            const EstimatorKind& kind, std::uint32_t seed_count,
                            TrialRng& rng, CostLedger& ledger) {
  switch (kind.approach) {
    case EstimatorKind::Approach::oneshot: {
      OneshotEstimator est(graph, kind.sample_number, rng.coin);
      return run_greedy(graph, est, seed_count, rng.shuffle, ledger);
    }
    case EstimatorKind::Approach::snapshot: {
      SnapshotEstimator est(graph, kind.sample_number, rng.coin, ledger);
      return run_greedy(graph, est, seed_count, rng.shuffle, ledger);
    }
    case EstimatorKind::Approach::ris: {
      RisEstimator est(graph, kind.sample_number, rng.target, rng.coin, ledger);
      return run_greedy(graph, est, seed_count, rng.shuffle, ledger);
    }
  }
  throw std::logic_error("unknown estimator kind");
}

}  // namespace imbench
