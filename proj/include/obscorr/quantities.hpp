#pragma once

#include <cstdint>

#include "obscorr/degree_vector.hpp"
#include "obscorr/hypersparse.hpp"

namespace obscorr {

/// Scalar aggregates of a traffic matrix A. All fields are zero iff A is empty.
struct NetworkQuantities {
  std::uint64_t valid_packets = 0;            // sum_ij A(i,j)
  std::uint64_t unique_links = 0;             // sum_ij |A(i,j)|_0
  std::uint64_t max_link_packets = 0;         // max_ij A(i,j)
  std::uint64_t unique_sources = 0;           // rows with any entry
  std::uint64_t max_source_packets = 0;       // max_i sum_j A(i,j)
  std::uint64_t max_source_fanout = 0;        // max_i sum_j |A(i,j)|_0
  std::uint64_t unique_destinations = 0;      // columns with any entry
  std::uint64_t max_destination_packets = 0;  // max_j sum_i A(i,j)
  std::uint64_t max_destination_fanin = 0;    // max_j sum_i |A(i,j)|_0

  bool operator==(const NetworkQuantities&) const = default;
};

NetworkQuantities aggregate(const TrafficMatrix& a);

DegreeVector source_packets(const TrafficMatrix& a);
DegreeVector source_fanout(const TrafficMatrix& a);
DegreeVector destination_packets(const TrafficMatrix& a);
DegreeVector destination_fanin(const TrafficMatrix& a);

}  // namespace obscorr
