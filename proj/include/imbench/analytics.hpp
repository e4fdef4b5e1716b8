#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imbench/graph.hpp"
#include "imbench/ledger.hpp"

namespace imbench {

/// Empirical distribution of seed sets over T trials, keyed by canonical
/// (sorted) form.
struct SeedSetDistribution {
  std::map<std::vector<VertexId>, std::uint32_t> counts;
  std::uint32_t trials = 0;

  void add(std::vector<VertexId> canonical_set) {
    ++counts[std::move(canonical_set)];
    ++trials;
  }

  /// Most frequent set; count ties resolve to the lexicographically
  /// smallest set, which the ordered map yields for free.
  const std::vector<VertexId>& modal_set() const {
    if (counts.empty()) throw std::runtime_error("empty seed set distribution");
    const std::vector<VertexId>* best = nullptr;
    std::uint32_t best_count = 0;
    for (const auto& [set, count] : counts) {
      if (count > best_count) {
        best = &set;
        best_count = count;
      }
    }
    return *best;
  }

  bool degenerate() const { return counts.size() == 1; }
};

/// Shannon entropy in bits of the empirical seed-set masses.
inline double entropy(const SeedSetDistribution& dist) {
  if (dist.trials == 0 || dist.counts.empty())
    throw std::invalid_argument("entropy of an empty distribution");
  double h = 0.0;
  const double t = static_cast<double>(dist.trials);
  for (const auto& [set, count] : dist.counts) {
    const double p = static_cast<double>(count) / t;
    h -= p * std::log2(p);
  }
  // A degenerate distribution yields -1*log2(1) = -0.0; normalize the sign.
  return h == 0.0 ? 0.0 : h;
}

struct DistributionSummary {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
  double p1 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p99 = 0.0;
};

/// Per-trial influence estimates with deterministic summary statistics.
/// Percentiles use the nearest-rank rule: the p-th percentile of T sorted
/// values is the value at 1-based rank ceil(p*T/100), clamped to [1, T].
struct InfluenceDistribution {
  std::vector<double> values;

  double mean() const {
    if (values.empty()) throw std::invalid_argument("empty distribution");
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }

  /// Fraction of trials with value >= threshold.
  double fraction_at_least(double threshold) const {
    if (values.empty()) throw std::invalid_argument("empty distribution");
    std::uint64_t hits = 0;
    for (const double v : values)
      if (v >= threshold) ++hits;
    return static_cast<double>(hits) / static_cast<double>(values.size());
  }

  DistributionSummary summary() const {
    if (values.empty()) throw std::invalid_argument("empty distribution");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double m = mean();
    double var = 0.0;
    for (const double v : sorted) var += (v - m) * (v - m);
    var /= static_cast<double>(sorted.size());
    auto nearest_rank = [&](double p) {
      const auto t = static_cast<double>(sorted.size());
      auto rank = static_cast<std::size_t>(std::ceil(p * t / 100.0));
      rank = std::clamp<std::size_t>(rank, 1, sorted.size());
      return sorted[rank - 1];
    };
    return {m,
            std::sqrt(var),
            nearest_rank(1),
            nearest_rank(25),
            nearest_rank(50),
            nearest_rank(75),
            nearest_rank(99)};
  }
};

/// Mean per-run cost counters over the T trials of one sweep cell.
struct MeanCosts {
  double vertex_traversals = 0.0;
  double edge_traversals = 0.0;
  double sample_size = 0.0;
  double stored_edges = 0.0;  // snapshot estimators: stored live edges
};

/// Results for one (algorithm, sample number) grid point.
struct SweepCell {
  std::uint64_t sample_number = 0;
  SeedSetDistribution seed_sets;
  InfluenceDistribution influences;
  MeanCosts costs;
};

/// A full sample-number sweep of one algorithm on one instance.
struct Sweep {
  std::string algorithm;
  std::uint32_t seed_count = 0;  // k
  std::vector<SweepCell> cells;  // ascending sample number

  const SweepCell& cell(std::uint64_t sample_number) const {
    for (const auto& c : cells)
      if (c.sample_number == sample_number) return c;
    throw std::out_of_range("sample number not in sweep grid");
  }
};

/// The influence of the unique limit seed set ("Exact Greedy"): the modal
/// set of the maximal grid point, required to be degenerate (entropy 0).
/// Returns nullopt when the sweep has not converged.
inline std::optional<std::vector<VertexId>> exact_greedy_seed_set(
    const Sweep& sweep) {
  if (sweep.cells.empty()) throw std::invalid_argument("empty sweep");
  const SweepCell& last = sweep.cells.back();
  if (!last.seed_sets.degenerate()) return std::nullopt;
  return last.seed_sets.modal_set();
}

/// Smallest grid sample number whose influence distribution has at least a
/// `prob` fraction of trials at or above `factor` times the Exact-Greedy
/// influence; nullopt when no grid point qualifies.
inline std::optional<std::uint64_t> least_sample_for_near_optimal(
    const Sweep& sweep, double exact_greedy_value, double prob = 0.99,
    double factor = 0.95) {
  if (sweep.cells.empty()) throw std::invalid_argument("empty sweep");
  const double threshold = factor * exact_greedy_value;
  for (const auto& cell : sweep.cells)
    if (cell.influences.fraction_at_least(threshold) >= prob)
      return cell.sample_number;
  return std::nullopt;
}

/// One comparable pair: the least sample number of the other algorithm whose
/// mean influence strictly exceeds the reference cell's mean.
struct ComparablePair {
  std::uint64_t s_ref = 0;
  std::optional<std::uint64_t> s_other;
};

inline std::optional<std::uint64_t> comparable_sample_number(
    const Sweep& other, double reference_mean) {
  for (const auto& cell : other.cells)
    if (cell.influences.mean() > reference_mean) return cell.sample_number;
  return std::nullopt;
}

/// Comparable number ratio s_other / s_ref for one reference grid point;
/// nullopt when the other sweep never strictly beats the reference mean.
inline std::optional<double> comparable_number_ratio(const Sweep& sweep_ref,
                                                     const Sweep& sweep_other,
                                                     std::uint64_t s_ref) {
  const double ref_mean = sweep_ref.cell(s_ref).influences.mean();
  const auto s_other = comparable_sample_number(sweep_other, ref_mean);
  if (!s_other) return std::nullopt;
  return static_cast<double>(*s_other) / static_cast<double>(s_ref);
}

/// Comparable size ratio (s_other * per_sample_size_other) /
/// (s_ref * per_sample_size_ref); for RIS versus snapshot the per-sample
/// sizes are EPT and m~ respectively.
inline std::optional<double> comparable_size_ratio(
    const Sweep& sweep_ref, const Sweep& sweep_other, std::uint64_t s_ref,
    double per_sample_size_ref, double per_sample_size_other) {
  const auto number = comparable_number_ratio(sweep_ref, sweep_other, s_ref);
  if (!number) return std::nullopt;
  return *number * per_sample_size_other / per_sample_size_ref;
}

/// All comparable pairs of the pair of sweeps, one per reference grid point.
inline std::vector<ComparablePair> comparable_pairs(const Sweep& sweep_ref,
                                                    const Sweep& sweep_other) {
  std::vector<ComparablePair> pairs;
  pairs.reserve(sweep_ref.cells.size());
  for (const auto& cell : sweep_ref.cells) {
    pairs.push_back({cell.sample_number,
                     comparable_sample_number(
                         sweep_other, cell.influences.mean())});
  }
  return pairs;
}

/// Median; for an even count, the average of the two middle values.
inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

/// Median comparable number ratio over all reference grid points where the
/// other algorithm reaches the reference mean within its grid.
inline std::optional<double> median_comparable_number_ratio(
    const Sweep& sweep_ref, const Sweep& sweep_other) {
  std::vector<double> ratios;
  for (const auto& pair : comparable_pairs(sweep_ref, sweep_other))
    if (pair.s_other)
      ratios.push_back(static_cast<double>(*pair.s_other) /
                       static_cast<double>(pair.s_ref));
  if (ratios.empty()) return std::nullopt;
  return median(std::move(ratios));
}

inline std::optional<double> median_comparable_size_ratio(
    const Sweep& sweep_ref, const Sweep& sweep_other,
    double per_sample_size_ref, double per_sample_size_other) {
  const auto number = median_comparable_number_ratio(sweep_ref, sweep_other);
  if (!number) return std::nullopt;
  return *number * per_sample_size_other / per_sample_size_ref;
}

/// Per-sample traversal cost (vertex + edge) of one algorithm, measured at
/// sample number 1 and k = 1.
struct PerSampleCost {
  double vertex = 0.0;
  double edge = 0.0;
  double total() const { return vertex + edge; }
};

/// Traversal-cost coefficients of gamma when the sample numbers are
/// conditioned to yield identical accuracy: beta = cr1 * gamma,
/// tau = gamma, theta = cr2 * gamma.
struct ConditionedCosts {
  double oneshot = 0.0;
  double snapshot = 0.0;
  double ris = 0.0;
};

inline ConditionedCosts conditioned_traversal_cost(
    const PerSampleCost& oneshot, const PerSampleCost& snapshot,
    const PerSampleCost& ris, std::optional<double> cr1,
    std::optional<double> cr2) {
  if (!cr1 || !cr2)
    throw std::invalid_argument(
        "conditioned costs need both comparable ratios");
  return {*cr1 * oneshot.total(), snapshot.total(), *cr2 * ris.total()};
}

}  // namespace imbench
