#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "imbench/graph.hpp"
#include "imbench/ledger.hpp"
#include "imbench/prng.hpp"
#include "imbench/sampling.hpp"

namespace imbench {

inline constexpr std::uint32_t kExactEnumerationEdgeCap = 20;

/// Exact influence by exhaustive enumeration of all 2^m live-edge
/// realizations. Only viable for tiny graphs; throws beyond the edge cap.
class ExactOracle {
 public:
  explicit ExactOracle(const InfluenceGraph& graph) : graph_(&graph) {
    if (graph.edge_count() > kExactEnumerationEdgeCap)
      throw std::invalid_argument(
          "exact enumeration is capped at " +
          std::to_string(kExactEnumerationEdgeCap) +
          " edges; use the RR-set evaluator for larger graphs");
    edges_.assign(graph.edges().begin(), graph.edges().end());
  }

  double influence(std::span<const VertexId> seed_set) const {
    const VertexId n = graph_->vertex_count();
    for (const VertexId v : seed_set)
      if (v >= n) throw std::invalid_argument("seed vertex id out of range");
    if (seed_set.empty()) return 0.0;

    double total = 0.0;
    for_each_realization([&](const Adjacency& adj, double prob) {
      total += prob * reach_count(adj, seed_set);
    });
    return total;
  }

  /// Influence of every single-vertex seed, in one enumeration pass.
  std::vector<double> single_vertex_influences() const {
    const VertexId n = graph_->vertex_count();
    std::vector<double> inf(n, 0.0);
    std::vector<VertexId> seed(1);
    for_each_realization([&](const Adjacency& adj, double prob) {
      for (VertexId v = 0; v < n; ++v) {
        seed[0] = v;
        inf[v] += prob * reach_count(adj, seed);
      }
    });
    return inf;
  }

  /// Influence of every subset of V, indexed by vertex bitmask. Requires
  /// n <= 20; intended for exhaustive monotonicity/submodularity checks.
  std::vector<double> all_subset_influences() const {
    const VertexId n = graph_->vertex_count();
    if (n > 20) throw std::invalid_argument("subset enumeration requires n <= 20");
    std::vector<double> inf(std::size_t{1} << n, 0.0);
    std::vector<std::uint32_t> reach_masks(n);
    std::vector<VertexId> queue;
    for_each_realization([&](const Adjacency& adj, double prob) {
      for (VertexId v = 0; v < n; ++v) {
        std::uint32_t mask = 0;
        queue.assign(1, v);
        mask |= 1u << v;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (const VertexId w : adj[queue[head]]) {
            if (!(mask & (1u << w))) {
              mask |= 1u << w;
              queue.push_back(w);
            }
          }
        }
        reach_masks[v] = mask;
      }
      for (std::size_t s = 1; s < inf.size(); ++s) {
        std::uint32_t reached = 0;
        std::uint32_t rest = static_cast<std::uint32_t>(s);
        while (rest) {
          const int v = std::countr_zero(rest);
          rest &= rest - 1;
          reached |= reach_masks[v];
        }
        inf[s] += prob * std::popcount(reached);
      }
    });
    return inf;
  }

 private:
  using Adjacency = std::vector<std::vector<VertexId>>;

  template <typename Body>
  void for_each_realization(Body&& body) const {
    const VertexId n = graph_->vertex_count();
    const std::uint32_t m = static_cast<std::uint32_t>(edges_.size());
    Adjacency adj(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      for (auto& list : adj) list.clear();
      double prob = 1.0;
      for (std::uint32_t i = 0; i < m; ++i) {
        if (mask & (std::uint64_t{1} << i)) {
          prob *= edges_[i].probability;
          adj[edges_[i].source].push_back(edges_[i].target);
        } else {
          prob *= 1.0 - edges_[i].probability;
        }
      }
      body(adj, prob);
    }
  }

  static std::uint32_t reach_count(const Adjacency& adj,
                                   std::span<const VertexId> seeds) {
    thread_local std::vector<VertexId> queue;
    thread_local std::vector<bool> seen;
    seen.assign(adj.size(), false);
    queue.clear();
    for (const VertexId v : seeds) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const VertexId w : adj[queue[head]])
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
    return static_cast<std::uint32_t>(queue.size());
  }

  const InfluenceGraph* graph_;
  std::vector<Edge> edges_;
};

inline double exact_influence(const InfluenceGraph& graph,
                              std::span<const VertexId> seed_set) {
  return ExactOracle(graph).influence(seed_set);
}

struct InfluenceEstimate {
  double estimate = 0.0;
  double ci99_halfwidth = 0.0;
};

inline constexpr std::uint32_t kEvaluatorCacheVersion = 1;

/// Shared ground-truth estimator: a large fixed collection of RR sets with
/// an inverted vertex -> set-id index. One collection is built per influence
/// graph and reused across every run so identical seed sets always receive
/// the identical estimate. The 99% confidence halfwidth is 1.29 n / sqrt(N).
class InfluenceEvaluator {
 public:
  static InfluenceEvaluator build(const InfluenceGraph& graph,
                                  std::uint64_t rr_set_count,
                                  std::uint64_t seed,
                                  unsigned worker_count = 1) {
    if (rr_set_count == 0)
      throw std::invalid_argument("evaluator needs at least one RR set");
    InfluenceEvaluator ev;
    ev.n_ = graph.vertex_count();
    ev.rr_set_count_ = rr_set_count;
    ev.seed_ = seed;
    ev.fingerprint_ = graph.fingerprint();

    // Fixed-size chunks with chunk-derived stream seeds keep the collection
    // identical for any worker count.
    constexpr std::uint64_t kChunk = 1u << 16;
    const std::uint64_t chunk_count = (rr_set_count + kChunk - 1) / kChunk;
    struct ChunkOut {
      std::vector<VertexId> members;
      std::vector<std::uint32_t> sizes;
    };
    std::vector<ChunkOut> chunks(chunk_count);

    std::atomic<std::uint64_t> next_chunk{0};
    auto work = [&] {
      RrSampler sampler(graph);
      CostLedger scratch_ledger;
      for (;;) {
        const std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= chunk_count) return;
        const std::uint64_t count =
            std::min(kChunk, rr_set_count - c * kChunk);
        RngStream target_rng(
            derive_stream_seed(detail::mix64(seed ^ 0xe7a1e7a1ULL), c,
                               StreamRole::target));
        RngStream coin(derive_stream_seed(detail::mix64(seed ^ 0xe7a1e7a1ULL),
                                          c, StreamRole::coin));
        ChunkOut& out = chunks[c];
        out.sizes.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
          out.sizes.push_back(sampler.generate_append(out.members, target_rng,
                                                      coin, scratch_ledger));
      }
    };
    const unsigned workers =
        std::max(1u, std::min<unsigned>(worker_count,
                                        static_cast<unsigned>(chunk_count)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    // Counting-sort the flattened membership into the inverted index.
    std::uint64_t total_entries = 0;
    for (const auto& c : chunks) total_entries += c.members.size();
    ev.inv_offsets_.assign(ev.n_ + 1, 0);
    for (const auto& c : chunks)
      for (const VertexId v : c.members) ++ev.inv_offsets_[v + 1];
    for (VertexId v = 0; v < ev.n_; ++v)
      ev.inv_offsets_[v + 1] += ev.inv_offsets_[v];
    ev.inv_sets_.resize(total_entries);
    std::vector<std::uint64_t> cursor(ev.inv_offsets_.begin(),
                                      ev.inv_offsets_.end() - 1);
    std::uint64_t set_id = 0;
    for (const auto& c : chunks) {
      std::size_t pos = 0;
      for (const std::uint32_t size : c.sizes) {
        for (std::uint32_t i = 0; i < size; ++i)
          ev.inv_sets_[cursor[c.members[pos + i]]++] =
              static_cast<std::uint32_t>(set_id);
        pos += size;
        ++set_id;
      }
    }
    ev.total_member_entries_ = total_entries;
    return ev;
  }

  VertexId vertex_count() const { return n_; }
  std::uint64_t rr_set_count() const { return rr_set_count_; }
  std::uint64_t graph_fingerprint() const { return fingerprint_; }
  std::uint64_t seed() const { return seed_; }

  /// Mean RR-set size in the collection, an estimate of EPT.
  double mean_rr_size() const {
    return static_cast<double>(total_member_entries_) /
           static_cast<double>(rr_set_count_);
  }

  double ci99_halfwidth() const {
    return 1.29 * static_cast<double>(n_) /
           std::sqrt(static_cast<double>(rr_set_count_));
  }

  void verify_graph(const InfluenceGraph& graph) const {
    if (graph.fingerprint() != fingerprint_)
      throw std::runtime_error(
          "evaluator was built for a different influence graph "
          "(fingerprint mismatch)");
  }

  /// n * (fraction of RR sets intersecting the seed set), with the 99%
  /// confidence halfwidth. Estimates are memoized per canonical seed set.
  InfluenceEstimate evaluate(std::span<const VertexId> seed_set) const {
    for (const VertexId v : seed_set)
      if (v >= n_) throw std::invalid_argument("seed vertex id out of range");
    InfluenceEstimate result;
    result.ci99_halfwidth = ci99_halfwidth();
    if (seed_set.empty()) return result;

    std::vector<VertexId> canonical(seed_set.begin(), seed_set.end());
    std::sort(canonical.begin(), canonical.end());
    canonical.erase(std::unique(canonical.begin(), canonical.end()),
                    canonical.end());

    std::lock_guard<std::mutex> lock(*mutex_);
    auto [it, inserted] = memo_.try_emplace(canonical, std::uint64_t{0});
    if (inserted) it->second = count_covered(canonical);
    result.estimate = static_cast<double>(n_) *
                      static_cast<double>(it->second) /
                      static_cast<double>(rr_set_count_);
    return result;
  }

  void save(std::ostream& out) const {
    write_u32(out, 0x494d4556);  // "IMEV"
    write_u32(out, kEvaluatorCacheVersion);
    write_u64(out, fingerprint_);
    write_u64(out, seed_);
    write_u64(out, rr_set_count_);
    write_u64(out, total_member_entries_);
    write_u32(out, n_);
    for (const auto off : inv_offsets_) write_u64(out, off);
    out.write(reinterpret_cast<const char*>(inv_sets_.data()),
              static_cast<std::streamsize>(inv_sets_.size() * 4));
    if (!out) throw std::runtime_error("failed to write evaluator cache");
  }

  static InfluenceEvaluator load(std::istream& in) {
    InfluenceEvaluator ev;
    if (read_u32(in) != 0x494d4556)
      throw std::runtime_error("not an evaluator cache file");
    if (read_u32(in) != kEvaluatorCacheVersion)
      throw std::runtime_error("unsupported evaluator cache version");
    ev.fingerprint_ = read_u64(in);
    ev.seed_ = read_u64(in);
    ev.rr_set_count_ = read_u64(in);
    ev.total_member_entries_ = read_u64(in);
    ev.n_ = read_u32(in);
    ev.inv_offsets_.resize(std::uint64_t{ev.n_} + 1);
    for (auto& off : ev.inv_offsets_) off = read_u64(in);
    ev.inv_sets_.resize(ev.total_member_entries_);
    in.read(reinterpret_cast<char*>(ev.inv_sets_.data()),
            static_cast<std::streamsize>(ev.inv_sets_.size() * 4));
    if (!in) throw std::runtime_error("truncated evaluator cache");
    return ev;
  }

 private:
  std::uint64_t count_covered(const std::vector<VertexId>& seeds) const {
    if (seeds.size() == 1) {
      const VertexId v = seeds[0];
      return inv_offsets_[v + 1] - inv_offsets_[v];
    }
    if (stamp_.size() != rr_set_count_) {
      stamp_.assign(rr_set_count_, 0);
      epoch_ = 0;
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::uint64_t covered = 0;
    for (const VertexId v : seeds) {
      for (std::uint64_t i = inv_offsets_[v]; i < inv_offsets_[v + 1]; ++i) {
        const std::uint32_t set_id = inv_sets_[i];
        if (stamp_[set_id] != epoch_) {
          stamp_[set_id] = epoch_;
          ++covered;
        }
      }
    }
    return covered;
  }

  static void write_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), 4);
  }
  static void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
  }
  static std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  }
  static std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  }

  VertexId n_ = 0;
  std::uint64_t rr_set_count_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::uint64_t total_member_entries_ = 0;
  std::vector<std::uint64_t> inv_offsets_;
  std::vector<std::uint32_t> inv_sets_;
  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  mutable std::map<std::vector<VertexId>, std::uint64_t> memo_;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;
};

}  // namespace imbench
