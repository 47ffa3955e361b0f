#pragma once

// On-disk forms of a TrafficMatrix.
//
// Binary ("HSTM"), all little-endian:
//   magic    4 bytes  "HSTM"
//   version  u16      kHstmVersion
//   nnz      u64
//   nnz x { src u32, dst u32, count u64 }   in sorted (src, dst) order
//
// CSV: one `src,dst,count` line per entry, decimal, no header.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "obscorr/hypersparse.hpp"

namespace obscorr {

inline constexpr std::uint16_t kHstmVersion = 1;

void write_binary(std::ostream& out, const TrafficMatrix& m);
/// Rejects bad magic, unknown versions, truncation, unsorted or duplicate
/// entries, and zero counts with DataQualityError.
TrafficMatrix read_binary(std::istream& in);

std::string to_binary(const TrafficMatrix& m);

void save_binary(const std::filesystem::path& path, const TrafficMatrix& m);
TrafficMatrix load_binary(const std::filesystem::path& path);

void write_csv(std::ostream& out, const TrafficMatrix& m);
/// Lines may be unordered and repeat (src, dst); repeats are summed.
TrafficMatrix read_csv(std::istream& in);

}  // namespace obscorr
