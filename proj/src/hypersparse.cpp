#include "obscorr/hypersparse.hpp"

#include <algorithm>
#include <string>

#include "obscorr/error.hpp"

namespace obscorr {

struct MatrixAccess {
  static TrafficMatrix make(std::vector<EdgeTriple> entries, std::uint64_t total) {
    return TrafficMatrix(std::move(entries), total);
  }
};

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ArithmeticError("packet count overflows 64-bit accumulator");
  }
  return out;
}

constexpr std::uint64_t pack(std::uint32_t src, std::uint32_t dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

struct KeyedCount {
  std::uint64_t key;
  std::uint64_t count;
};

TrafficMatrix merge_range(std::span<const TrafficMatrix> blocks) {
  if (blocks.size() == 1) return blocks.front();
  const std::size_t mid = blocks.size() / 2;
  return merge(merge_range(blocks.first(mid)), merge_range(blocks.subspan(mid)));
}

std::vector<std::uint32_t> used_rows(const TrafficMatrix& a) {
  std::vector<std::uint32_t> rows;
  for (const auto& e : a.entries()) {
    if (rows.empty() || rows.back() != e.src) rows.push_back(e.src);
  }
  return rows;
}

std::vector<std::uint32_t> used_cols(const TrafficMatrix& a) {
  std::vector<std::uint32_t> cols;
  cols.reserve(a.nnz());
  for (const auto& e : a.entries()) cols.push_back(e.dst);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

// Builds a lookup from used index to image, rejecting collisions.
IndexMap checked_image(const std::vector<std::uint32_t>& used, const IndexFunction& f,
                       const char* axis) {
  IndexMap image;
  image.reserve(used.size());
  std::vector<std::uint32_t> targets;
  targets.reserve(used.size());
  for (auto i : used) {
    auto j = f(i);
    image.emplace(i, j);
    targets.push_back(j);
  }
  std::sort(targets.begin(), targets.end());
  auto dup = std::adjacent_find(targets.begin(), targets.end());
  if (dup != targets.end()) {
    throw UsageError(std::string(axis) + " permutation is not injective: two used indices map to " +
                     std::to_string(*dup));
  }
  return image;
}

}  // namespace

TrafficMatrix TrafficMatrix::from_triples(std::span<const EdgeTriple> raw) {
  std::vector<KeyedCount> keyed;
  keyed.reserve(raw.size());
  for (const auto& t : raw) {
    if (t.count != 0) keyed.push_back({pack(t.src, t.dst), t.count});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const KeyedCount& a, const KeyedCount& b) { return a.key < b.key; });

  std::vector<EdgeTriple> entries;
  entries.reserve(keyed.size());
  std::uint64_t total = 0;
  for (const auto& k : keyed) {
    total = checked_add(total, k.count);
    if (!entries.empty() && pack(entries.back().src, entries.back().dst) == k.key) {
      entries.back().count = checked_add(entries.back().count, k.count);
    } else {
      entries.push_back({static_cast<std::uint32_t>(k.key >> 32),
                         static_cast<std::uint32_t>(k.key & 0xffffffffu), k.count});
    }
  }
  entries.shrink_to_fit();
  return TrafficMatrix(std::move(entries), total);
}

TrafficMatrix merge(const TrafficMatrix& a, const TrafficMatrix& b) {
  if (b.empty()) return a;
  if (a.empty()) return b;

  auto lhs = a.entries();
  auto rhs = b.entries();
  std::vector<EdgeTriple> out;
  out.reserve(lhs.size() + rhs.size());

  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    const auto ka = pack(lhs[i].src, lhs[i].dst);
    const auto kb = pack(rhs[j].src, rhs[j].dst);
    if (ka < kb) {
      out.push_back(lhs[i++]);
    } else if (kb < ka) {
      out.push_back(rhs[j++]);
    } else {
      out.push_back({lhs[i].src, lhs[i].dst, checked_add(lhs[i].count, rhs[j].count)});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), lhs.begin() + static_cast<std::ptrdiff_t>(i), lhs.end());
  out.insert(out.end(), rhs.begin() + static_cast<std::ptrdiff_t>(j), rhs.end());
  return MatrixAccess::make(std::move(out), checked_add(a.total_packets(), b.total_packets()));
}

TrafficMatrix hierarchical_sum(std::span<const TrafficMatrix> blocks) {
  if (blocks.empty()) throw UsageError("hierarchical_sum needs at least one block");
  return merge_range(blocks);
}

TrafficMatrix zero_norm(const TrafficMatrix& a) {
  std::vector<EdgeTriple> out(a.entries().begin(), a.entries().end());
  for (auto& e : out) e.count = 1;
  return MatrixAccess::make(std::move(out), a.nnz());
}

DegreeVector row_sums(const TrafficMatrix& a) {
  std::vector<DegreeEntry> sums;
  for (const auto& e : a.entries()) {
    if (!sums.empty() && sums.back().index == e.src) {
      sums.back().value = checked_add(sums.back().value, e.count);
    } else {
      sums.push_back({e.src, e.count});
    }
  }
  return DegreeVector::from_entries(std::move(sums));
}

DegreeVector col_sums(const TrafficMatrix& a) {
  std::vector<DegreeEntry> by_col;
  by_col.reserve(a.nnz());
  for (const auto& e : a.entries()) by_col.push_back({e.dst, e.count});
  std::sort(by_col.begin(), by_col.end(),
            [](const DegreeEntry& x, const DegreeEntry& y) { return x.index < y.index; });

  std::vector<DegreeEntry> sums;
  for (const auto& e : by_col) {
    if (!sums.empty() && sums.back().index == e.index) {
      sums.back().value = checked_add(sums.back().value, e.value);
    } else {
      sums.push_back(e);
    }
  }
  return DegreeVector::from_entries(std::move(sums));
}

TrafficMatrix permute(const TrafficMatrix& a, const IndexFunction& row_perm,
                      const IndexFunction& col_perm) {
  const auto rows = checked_image(used_rows(a), row_perm, "row");
  const auto cols = checked_image(used_cols(a), col_perm, "column");

  std::vector<EdgeTriple> moved;
  moved.reserve(a.nnz());
  for (const auto& e : a.entries()) {
    moved.push_back({rows.at(e.src), cols.at(e.dst), e.count});
  }
  return TrafficMatrix::from_triples(moved);
}

TrafficMatrix permute(const TrafficMatrix& a, const IndexMap& row_perm, const IndexMap& col_perm) {
  auto lookup = [](const IndexMap& m, const char* axis) {
    return [&m, axis](std::uint32_t i) {
      auto it = m.find(i);
      if (it == m.end()) {
        throw UsageError(std::string(axis) + " permutation does not cover used index " +
                         std::to_string(i));
      }
      return it->second;
    };
  };
  return permute(a, IndexFunction(lookup(row_perm, "row")), IndexFunction(lookup(col_perm, "column")));
}

}  // namespace obscorr
