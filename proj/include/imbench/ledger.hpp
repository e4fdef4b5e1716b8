#pragma once

#include <cstdint>

namespace imbench {

/// Implementation-independent cost counters. Vertex/edge traversals count
/// graph elements examined (possibly more than once); sample_size counts
/// vertices and edges stored as samples. Counters only grow within a run.
struct CostLedger {
  std::uint64_t vertex_traversals = 0;
  std::uint64_t edge_traversals = 0;
  std::uint64_t sample_size = 0;

  void reset() { *this = CostLedger{}; }

  CostLedger& operator+=(const CostLedger& other) {
    vertex_traversals += other.vertex_traversals;
    edge_traversals += other.edge_traversals;
    sample_size += other.sample_size;
    return *this;
  }

  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

}  // namespace imbench
