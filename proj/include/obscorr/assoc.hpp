#pragma once

// String-keyed sparse 2-D arrays for labeled observations.
//
// Keys on both axes are kept sorted and unique; every cell references an
// existing row and column key. Duplicate (row, col) pairs on construction
// resolve last-wins. Values are strings; interpretation is up to the caller.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obscorr/degree_vector.hpp"

namespace obscorr {

class AssocArray {
 public:
  struct Cell {
    std::uint32_t row = 0;  // index into row_keys()
    std::uint32_t col = 0;  // index into col_keys()
    std::string value;

    bool operator==(const Cell&) const = default;
  };

  AssocArray() = default;

  /// Parallel sequences; a length mismatch is a usage error.
  static AssocArray from_triples(std::span<const std::string> rows,
                                 std::span<const std::string> cols,
                                 std::span<const std::string> vals);

  std::span<const std::string> row_keys() const noexcept { return row_keys_; }
  std::span<const std::string> col_keys() const noexcept { return col_keys_; }
  std::span<const Cell> cells() const noexcept { return cells_; }  // sorted by (row, col)
  bool empty() const noexcept { return cells_.empty(); }

  std::optional<std::string> at(std::string_view row, std::string_view col) const;

  bool operator==(const AssocArray&) const = default;

 private:
  std::vector<std::string> row_keys_;
  std::vector<std::string> col_keys_;
  std::vector<Cell> cells_;
};

inline constexpr const char* kPacketsColumn = "packets";

/// Labeler returns std::nullopt for indices it cannot name.
using IndexLabeler = std::function<std::optional<std::string>(std::uint32_t)>;
using LabelParser = std::function<std::uint32_t(std::string_view)>;

/// Single "packets" column of decimal counts, one row per labeled index.
/// A missing label is a usage error naming the index.
AssocArray assoc_from_degree_vector(const DegreeVector& v, const IndexLabeler& labeler);

/// Inverse of assoc_from_degree_vector. Throws ParseError on non-numeric
/// values or when the "packets" column is absent from a nonempty array.
DegreeVector degree_vector_from_assoc(const AssocArray& a, const LabelParser& parse_label);

/// Sorted row keys present in both arrays.
std::vector<std::string> row_intersection(const AssocArray& a, const AssocArray& b);

/// Header line: an empty corner field, then the column keys. One line per row
/// key; absent cells are empty fields. Fields are tab-separated.
void write_tsv(std::ostream& out, const AssocArray& a);
AssocArray read_tsv(std::istream& in);

}  // namespace obscorr
