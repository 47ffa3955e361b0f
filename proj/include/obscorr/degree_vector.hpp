#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace obscorr {

struct DegreeEntry {
  std::uint32_t index = 0;
  std::uint64_t value = 0;

  bool operator==(const DegreeEntry&) const = default;
};

/// Sparse per-vertex quantity over the 32-bit index space. Entries are sorted
/// by index, unique, and never zero; absent indices have degree zero.
class DegreeVector {
 public:
  DegreeVector() = default;

  /// Accepts entries in any order. Duplicate indices are a usage error; a zero
  /// value is a data-quality error.
  static DegreeVector from_entries(std::vector<DegreeEntry> entries);

  std::span<const DegreeEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<std::uint64_t> at(std::uint32_t index) const;
  /// Checked sum; throws ArithmeticError on overflow.
  std::uint64_t sum() const;
  std::uint64_t max() const noexcept;

  bool operator==(const DegreeVector&) const = default;

 private:
  explicit DegreeVector(std::vector<DegreeEntry> entries) : entries_(std::move(entries)) {}

  std::vector<DegreeEntry> entries_;
};

}  // namespace obscorr
