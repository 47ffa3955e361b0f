#include "obscorr/degree_vector.hpp"

#include <algorithm>
#include <string>

#include "obscorr/error.hpp"

namespace obscorr {

DegreeVector DegreeVector::from_entries(std::vector<DegreeEntry> entries) {
  auto by_index = [](const DegreeEntry& a, const DegreeEntry& b) { return a.index < b.index; };
  if (!std::is_sorted(entries.begin(), entries.end(), by_index)) {
    std::sort(entries.begin(), entries.end(), by_index);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].value == 0) {
      throw DataQualityError("zero degree stored for index " + std::to_string(entries[i].index));
    }
    if (i > 0 && entries[i].index == entries[i - 1].index) {
      throw UsageError("duplicate degree index " + std::to_string(entries[i].index));
    }
  }
  return DegreeVector(std::move(entries));
}

std::optional<std::uint64_t> DegreeVector::at(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const DegreeEntry& e, std::uint32_t i) { return e.index < i; });
  if (it == entries_.end() || it->index != index) return std::nullopt;
  return it->value;
}

std::uint64_t DegreeVector::sum() const {
  std::uint64_t total = 0;
  for (const auto& e : entries_) {
    if (__builtin_add_overflow(total, e.value, &total)) {
      throw ArithmeticError("degree sum overflows 64 bits");
    }
  }
  return total;
}

std::uint64_t DegreeVector::max() const noexcept {
  std::uint64_t best = 0;
  for (const auto& e : entries_) best = std::max(best, e.value);
  return best;
}

}  // namespace obscorr
