#pragma once

// Packet-log ingestion: CSV parsing, quadrant filtering, and constant-packet
// windowing into hierarchically built traffic matrices.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "obscorr/address.hpp"
#include "obscorr/anonymize.hpp"
#include "obscorr/hypersparse.hpp"

namespace obscorr {

struct PacketRecord {
  std::int64_t timestamp_us = 0;
  std::uint32_t src = 0;
  std::uint32_t dst = 0;

  bool operator==(const PacketRecord&) const = default;
};

struct PacketLog {
  std::vector<PacketRecord> records;  // input order
  std::uint64_t data_lines = 0;       // non-blank lines, header excluded
  std::uint64_t malformed = 0;
  std::vector<std::uint64_t> malformed_lines;  // 1-based, first 100 only
};

/// Lines are "timestamp,src,dst" with timestamp in integer microseconds and
/// dotted-quad addresses; an optional "timestamp,src,dst" header is skipped.
/// Malformed lines are counted. More than ceil(1% of data lines) malformed
/// lines is a DataQualityError listing their line numbers.
PacketLog parse_packet_log(std::istream& in);
PacketLog parse_packet_log(const std::filesystem::path& path);

struct WindowSpec {
  std::uint64_t n_valid = std::uint64_t{1} << 20;   // packets per window
  std::uint64_t sub_block = std::uint64_t{1} << 10; // packets per leaf matrix

  /// Both powers of two, sub_block <= n_valid; UsageError otherwise.
  void validate() const;
};

struct WindowedMatrices {
  std::vector<TrafficMatrix> windows;
  std::uint64_t valid_packets = 0;  // passed the quadrant filter
  std::uint64_t discarded = 0;      // failed the quadrant filter
  std::uint64_t remainder = 0;      // valid packets in the trailing partial window
};

inline constexpr std::int64_t kReorderToleranceUs = 1'000'000;

/// Every n_valid consecutive valid packets become one matrix, built as the
/// hierarchical sum of n_valid / sub_block leaf matrices. With a key, matrix
/// indices are relabeled by the prefix-preserving anonymizer. A timestamp more
/// than one second behind the latest seen is a DataQualityError.
WindowedMatrices window_and_build(std::span<const PacketRecord> records, const WindowSpec& spec,
                                  const QuadrantFilter& filter,
                                  const std::optional<AnonymizationKey>& key = std::nullopt);

}  // namespace obscorr
