#pragma once

// Hypersparse 2^32 x 2^32 traffic matrices stored as sorted coordinate triples.
//
// A TrafficMatrix holds one nonzero per (src, dst) pair, ordered
// lexicographically, with the packet total cached. Values are immutable once
// built; every "update" is a merge that produces a new matrix.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "obscorr/degree_vector.hpp"

namespace obscorr {

struct EdgeTriple {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint64_t count = 0;

  bool operator==(const EdgeTriple&) const = default;
};

class TrafficMatrix {
 public:
  TrafficMatrix() = default;

  /// Sums duplicate (src, dst) pairs and sorts. Zero-count triples carry no
  /// packets and are dropped.
  static TrafficMatrix from_triples(std::span<const EdgeTriple> raw);

  std::span<const EdgeTriple> entries() const noexcept { return entries_; }
  std::uint64_t total_packets() const noexcept { return total_packets_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  bool operator==(const TrafficMatrix&) const = default;

 private:
  friend struct MatrixAccess;
  TrafficMatrix(std::vector<EdgeTriple> entries, std::uint64_t total)
      : entries_(std::move(entries)), total_packets_(total) {}

  std::vector<EdgeTriple> entries_;
  std::uint64_t total_packets_ = 0;
};

/// Entrywise sum by a two-pointer walk over both sorted entry lists.
TrafficMatrix merge(const TrafficMatrix& a, const TrafficMatrix& b);

/// Balanced binary merge tree over `blocks`. Throws UsageError when empty.
TrafficMatrix hierarchical_sum(std::span<const TrafficMatrix> blocks);

TrafficMatrix zero_norm(const TrafficMatrix& a);

DegreeVector row_sums(const TrafficMatrix& a);
DegreeVector col_sums(const TrafficMatrix& a);

using IndexMap = std::unordered_map<std::uint32_t, std::uint32_t>;
using IndexFunction = std::function<std::uint32_t(std::uint32_t)>;

/// Relabels rows and columns. Each map must cover every used index of its
/// axis and be injective on them; otherwise UsageError.
TrafficMatrix permute(const TrafficMatrix& a, const IndexMap& row_perm, const IndexMap& col_perm);
TrafficMatrix permute(const TrafficMatrix& a, const IndexFunction& row_perm,
                      const IndexFunction& col_perm);

}  // namespace obscorr
