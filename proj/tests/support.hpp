#pragma once

// Shared by the unit tests and the acceptance runner: random generators and
// a dense-array reference for traffic matrices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "obscorr/hypersparse.hpp"
#include "obscorr/quantities.hpp"

namespace obscorr::test {

// Row and column labels are drawn from the full 32-bit space; the dense
// array is indexed by label position.
struct DenseMatrix {
  std::vector<std::uint32_t> row_labels;  // sorted
  std::vector<std::uint32_t> col_labels;  // sorted
  std::vector<std::vector<std::uint64_t>> a;

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }

  std::vector<EdgeTriple> triples() const {
    std::vector<EdgeTriple> out;
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = 0; j < cols(); ++j) {
        if (a[i][j] != 0) out.push_back({row_labels[i], col_labels[j], a[i][j]});
      }
    }
    return out;
  }
};

inline std::vector<std::uint32_t> distinct_labels(std::mt19937_64& rng, std::size_t n, bool small) {
  std::set<std::uint32_t> s;
  while (s.size() < n) {
    s.insert(small ? static_cast<std::uint32_t>(rng() % 1024) : static_cast<std::uint32_t>(rng()));
  }
  return {s.begin(), s.end()};
}

/// Up to max_dim x max_dim labels, random density, counts in [1, max_count].
inline DenseMatrix random_dense(std::mt19937_64& rng, std::size_t max_dim = 256,
                                std::uint64_t max_count = 1000) {
  DenseMatrix d;
  const std::size_t r = 1 + rng() % max_dim;
  const std::size_t c = 1 + rng() % max_dim;
  const bool small = rng() % 2 == 0;
  d.row_labels = distinct_labels(rng, r, small);
  d.col_labels = distinct_labels(rng, c, small);
  d.a.assign(r, std::vector<std::uint64_t>(c, 0));
  const double density = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
  std::bernoulli_distribution keep(density);
  for (auto& row : d.a) {
    for (auto& v : row) {
      if (keep(rng)) v = 1 + rng() % max_count;
    }
  }
  return d;
}

/// Triples in random order with some pairs split into several pieces.
inline std::vector<EdgeTriple> shuffled_split_triples(const DenseMatrix& d, std::mt19937_64& rng) {
  std::vector<EdgeTriple> out;
  for (const auto& t : d.triples()) {
    if (t.count > 1 && rng() % 3 == 0) {
      const std::uint64_t first = 1 + rng() % (t.count - 1);
      out.push_back({t.src, t.dst, first});
      out.push_back({t.src, t.dst, t.count - first});
    } else {
      out.push_back(t);
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline NetworkQuantities dense_quantities(const DenseMatrix& d) {
  NetworkQuantities q;
  std::vector<std::uint64_t> col_sum(d.cols(), 0), col_nnz(d.cols(), 0);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::uint64_t row_sum = 0, row_nnz = 0;
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const auto v = d.a[i][j];
      if (v == 0) continue;
      q.valid_packets += v;
      q.unique_links += 1;
      q.max_link_packets = std::max(q.max_link_packets, v);
      row_sum += v;
      row_nnz += 1;
      col_sum[j] += v;
      col_nnz[j] += 1;
    }
    if (row_nnz > 0) q.unique_sources += 1;
    q.max_source_packets = std::max(q.max_source_packets, row_sum);
    q.max_source_fanout = std::max(q.max_source_fanout, row_nnz);
  }
  for (std::size_t j = 0; j < d.cols(); ++j) {
    if (col_nnz[j] > 0) q.unique_destinations += 1;
    q.max_destination_packets = std::max(q.max_destination_packets, col_sum[j]);
    q.max_destination_fanin = std::max(q.max_destination_fanin, col_nnz[j]);
  }
  return q;
}

/// Nonzero row (or column) sums, keyed by label; `nnz` counts entries instead.
inline std::map<std::uint32_t, std::uint64_t> dense_margin(const DenseMatrix& d, bool rows, bool nnz) {
  std::map<std::uint32_t, std::uint64_t> out;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const auto v = d.a[i][j];
      if (v == 0) continue;
      out[rows ? d.row_labels[i] : d.col_labels[j]] += nnz ? 1 : v;
    }
  }
  return out;
}

inline std::map<std::uint32_t, std::uint64_t> as_map(const DegreeVector& v) {
  std::map<std::uint32_t, std::uint64_t> out;
  for (const auto& e : v.entries()) out[e.index] = e.value;
  return out;
}

/// A random injective relabeling of `labels` into the 32-bit space.
inline IndexMap random_bijection(const std::vector<std::uint32_t>& labels, std::mt19937_64& rng) {
  std::set<std::uint32_t> used;
  IndexMap m;
  for (auto l : labels) {
    std::uint32_t img;
    do {
      img = static_cast<std::uint32_t>(rng());
    } while (!used.insert(img).second);
    m[l] = img;
  }
  return m;
}

}  // namespace obscorr::test
