#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "imbench/graph.hpp"
#include "imbench/ledger.hpp"
#include "imbench/prng.hpp"
#include "imbench/sampling.hpp"

namespace imbench {

/// Which estimator backs the greedy loop, together with its sample number:
/// simulation count (oneshot), random-graph count (snapshot), or RR-set
/// count (ris).
struct EstimatorKind {
  enum class Approach { oneshot, snapshot, ris };

  Approach approach = Approach::oneshot;
  std::uint64_t sample_number = 1;

  static EstimatorKind oneshot(std::uint64_t beta) {
    return {Approach::oneshot, beta};
  }
  static EstimatorKind snapshot(std::uint64_t tau) {
    return {Approach::snapshot, tau};
  }
  static EstimatorKind ris(std::uint64_t theta) {
    return {Approach::ris, theta};
  }

  std::string_view approach_name() const {
    switch (approach) {
      case Approach::oneshot: return "oneshot";
      case Approach::snapshot: return "snapshot";
      case Approach::ris: return "ris";
    }
    return "?";
  }
};

/// Monte-Carlo on demand: Build and Update do nothing, Estimate runs beta
/// fresh simulations from S + v and returns the average activation count
/// (total-influence semantics). No samples are stored.
class OneshotEstimator {
 public:
  OneshotEstimator(const InfluenceGraph& graph, std::uint64_t beta,
                   RngStream& coin)
      : simulator_(graph), beta_(beta), coin_(&coin) {
    if (beta == 0) throw std::invalid_argument("sample number must be >= 1");
  }

  double estimate(std::span<const VertexId> current_seeds, VertexId candidate,
                  CostLedger& ledger) {
    seed_buffer_.assign(current_seeds.begin(), current_seeds.end());
    seed_buffer_.push_back(candidate);
    std::uint64_t activated_total = 0;
    for (std::uint64_t i = 0; i < beta_; ++i)
      activated_total += simulator_.run(seed_buffer_, *coin_, ledger);
    return static_cast<double>(activated_total) / static_cast<double>(beta_);
  }

  void update(VertexId, CostLedger&) {}

 private:
  IcSimulator simulator_;
  std::uint64_t beta_;
  RngStream* coin_;
  std::vector<VertexId> seed_buffer_;
};

/// Pre-sampled random graphs shared across the whole seed selection.
/// Estimate returns the mean marginal reachability over the tau graphs;
/// the reachability of the current seed set is computed once per round and
/// reused for every candidate of that round.
class SnapshotEstimator {
 public:
  SnapshotEstimator(const InfluenceGraph& graph, std::uint64_t tau,
                    RngStream& coin, CostLedger& ledger)
      : query_(graph.vertex_count()), tau_(tau) {
    if (tau == 0) throw std::invalid_argument("sample number must be >= 1");
    graphs_.reserve(tau);
    for (std::uint64_t i = 0; i < tau; ++i) {
      graphs_.push_back(sample_snapshot(graph, coin, ledger));
      stored_edges_ += graphs_.back().edge_count();
    }
    base_reach_.assign(tau, 0);
  }

  double estimate(std::span<const VertexId> current_seeds, VertexId candidate,
                  CostLedger& ledger) {
    refresh_base(current_seeds, ledger);
    std::uint64_t reached_total = 0;
    std::uint64_t base_total = 0;
    for (std::uint64_t i = 0; i < tau_; ++i) {
      reached_total += query_.run(graphs_[i], current_seeds, candidate, ledger);
      base_total += base_reach_[i];
    }
    return static_cast<double>(reached_total - base_total) /
           static_cast<double>(tau_);
  }

  void update(VertexId, CostLedger&) {}

  std::uint64_t stored_edges() const { return stored_edges_; }
  const SampledGraph& graph(std::uint64_t i) const { return graphs_[i]; }

 private:
  void refresh_base(std::span<const VertexId> current_seeds,
                    CostLedger& ledger) {
    if (current_seeds.size() == base_seed_count_) return;
    base_seed_count_ = current_seeds.size();
    if (current_seeds.empty()) {
      std::fill(base_reach_.begin(), base_reach_.end(), 0u);
      return;
    }
    for (std::uint64_t i = 0; i < tau_; ++i)
      base_reach_[i] = query_.run(graphs_[i], current_seeds, ledger);
  }

  std::vector<SampledGraph> graphs_;
  ReachabilityQuery query_;
  std::uint64_t tau_;
  std::uint64_t stored_edges_ = 0;
  std::vector<std::uint32_t> base_reach_;
  std::size_t base_seed_count_ = ~std::size_t{0};
};

/// A collection of theta RR sets with per-vertex live-coverage counters.
/// Estimate returns n * (live sets containing the candidate) / theta; the
/// denominator is always the original theta. Update marks every live set
/// containing the chosen vertex as covered and decrements the counters of
/// their members, so subsequent estimates are marginal. The vertex -> set
/// inverted index is materialized on the first Update.
class RisEstimator {
 public:
  RisEstimator(const InfluenceGraph& graph, std::uint64_t theta,
               RngStream& target_rng, RngStream& coin, CostLedger& ledger)
      : n_(graph.vertex_count()), theta_(theta) {
    if (theta == 0) throw std::invalid_argument("sample number must be >= 1");
    RrSampler sampler(graph);
    set_offsets_.reserve(theta + 1);
    set_offsets_.push_back(0);
    live_coverage_.assign(n_, 0);
    for (std::uint64_t i = 0; i < theta; ++i) {
      const std::uint32_t size =
          sampler.generate_append(members_, target_rng, coin, ledger);
      set_offsets_.push_back(set_offsets_.back() + size);
      for (std::uint64_t j = set_offsets_[i]; j < set_offsets_[i + 1]; ++j)
        ++live_coverage_[members_[j]];
    }
    covered_.assign(theta, false);
    live_count_ = theta;
  }

  double estimate(std::span<const VertexId>, VertexId candidate,
                  CostLedger&) const {
    return static_cast<double>(n_) *
           static_cast<double>(live_coverage_[candidate]) /
           static_cast<double>(theta_);
  }

  void update(VertexId chosen, CostLedger&) {
    ensure_inverted_index();
    const auto begin = inv_offsets_[chosen];
    const auto end = inv_offsets_[chosen + 1];
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t set_id = inv_sets_[i];
      if (covered_[set_id]) continue;
      covered_[set_id] = true;
      --live_count_;
      for (std::uint64_t j = set_offsets_[set_id]; j < set_offsets_[set_id + 1];
           ++j)
        --live_coverage_[members_[j]];
    }
  }

  std::uint64_t rr_set_count() const { return theta_; }
  std::uint64_t live_count() const { return live_count_; }
  std::uint64_t stored_member_entries() const { return members_.size(); }

  std::span<const VertexId> set_members(std::uint64_t set_id) const {
    return {members_.data() + set_offsets_[set_id],
            members_.data() + set_offsets_[set_id + 1]};
  }

 private:
  void ensure_inverted_index() {
    if (!inv_offsets_.empty()) return;
    inv_offsets_.assign(std::uint64_t{n_} + 1, 0);
    for (const VertexId v : members_) ++inv_offsets_[v + 1];
    for (VertexId v = 0; v < n_; ++v) inv_offsets_[v + 1] += inv_offsets_[v];
    inv_sets_.resize(members_.size());
    std::vector<std::uint64_t> cursor(inv_offsets_.begin(),
                                      inv_offsets_.end() - 1);
    for (std::uint64_t set_id = 0; set_id + 1 < set_offsets_.size(); ++set_id)
      for (std::uint64_t j = set_offsets_[set_id]; j < set_offsets_[set_id + 1];
           ++j)
        inv_sets_[cursor[members_[j]]++] = static_cast<std::uint32_t>(set_id);
  }

  VertexId n_;
  std::uint64_t theta_;
  std::vector<VertexId> members_;
  std::vector<std::uint64_t> set_offsets_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint32_t> live_coverage_;
  std::uint64_t live_count_ = 0;
  std::vector<std::uint64_t> inv_offsets_;
  std::vector<std::uint32_t> inv_sets_;
};

}  // namespace imbench
