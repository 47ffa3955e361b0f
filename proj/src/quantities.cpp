#include "obscorr/quantities.hpp"

#include <algorithm>
#include <vector>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

void add_into(std::uint64_t& acc, std::uint64_t v) {
  if (__builtin_add_overflow(acc, v, &acc)) {
    throw ArithmeticError("packet count overflows 64-bit accumulator");
  }
}

}  // namespace

NetworkQuantities aggregate(const TrafficMatrix& a) {
  NetworkQuantities q;
  q.valid_packets = a.total_packets();
  q.unique_links = a.nnz();

  // Rows arrive contiguous in sorted order, so row stats need no extra storage.
  std::uint64_t row_packets = 0;
  std::uint64_t row_links = 0;
  bool open_row = false;
  std::uint32_t current = 0;
  auto close_row = [&] {
    if (!open_row) return;
    ++q.unique_sources;
    q.max_source_packets = std::max(q.max_source_packets, row_packets);
    q.max_source_fanout = std::max(q.max_source_fanout, row_links);
  };

  std::vector<std::pair<std::uint32_t, std::uint64_t>> by_col;
  by_col.reserve(a.nnz());
  for (const auto& e : a.entries()) {
    q.max_link_packets = std::max(q.max_link_packets, e.count);
    if (!open_row || e.src != current) {
      close_row();
      open_row = true;
      current = e.src;
      row_packets = 0;
      row_links = 0;
    }
    add_into(row_packets, e.count);
    ++row_links;
    by_col.emplace_back(e.dst, e.count);
  }
  close_row();

  std::sort(by_col.begin(), by_col.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < by_col.size();) {
    std::size_t j = i;
    std::uint64_t packets = 0;
    while (j < by_col.size() && by_col[j].first == by_col[i].first) {
      add_into(packets, by_col[j].second);
      ++j;
    }
    ++q.unique_destinations;
    q.max_destination_packets = std::max(q.max_destination_packets, packets);
    q.max_destination_fanin = std::max<std::uint64_t>(q.max_destination_fanin, j - i);
    i = j;
  }
  return q;
}

DegreeVector source_packets(const TrafficMatrix& a) { return row_sums(a); }

DegreeVector source_fanout(const TrafficMatrix& a) { return row_sums(zero_norm(a)); }

DegreeVector destination_packets(const TrafficMatrix& a) { return col_sums(a); }

DegreeVector destination_fanin(const TrafficMatrix& a) { return col_sums(zero_norm(a)); }

}  // namespace obscorr
