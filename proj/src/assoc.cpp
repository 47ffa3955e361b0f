#include "obscorr/assoc.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

std::vector<std::string> sorted_unique(std::span<const std::string> keys) {
  std::vector<std::string> out(keys.begin(), keys.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t key_index(const std::vector<std::string>& keys, std::string_view key) {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  return static_cast<std::uint32_t>(it - keys.begin());
}

bool has_key(const std::vector<std::string>& keys, std::string_view key) {
  return std::binary_search(keys.begin(), keys.end(), key);
}

void check_tsv_safe(const std::string& s) {
  if (s.find_first_of("\t\r\n") != std::string::npos) {
    throw UsageError("TSV field contains a tab or newline: '" + s + "'");
  }
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

AssocArray AssocArray::from_triples(std::span<const std::string> rows,
                                    std::span<const std::string> cols,
                                    std::span<const std::string> vals) {
  if (rows.size() != cols.size() || rows.size() != vals.size()) {
    throw UsageError("associative array triples have mismatched lengths: " +
                     std::to_string(rows.size()) + " rows, " + std::to_string(cols.size()) +
                     " cols, " + std::to_string(vals.size()) + " values");
  }
  AssocArray a;
  a.row_keys_ = sorted_unique(rows);
  a.col_keys_ = sorted_unique(cols);

  struct Placed {
    std::uint32_t row;
    std::uint32_t col;
    std::size_t source;
  };
  std::vector<Placed> placed;
  placed.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    placed.push_back({key_index(a.row_keys_, rows[k]), key_index(a.col_keys_, cols[k]), k});
  }
  std::stable_sort(placed.begin(), placed.end(), [](const Placed& x, const Placed& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  for (std::size_t k = 0; k < placed.size(); ++k) {
    const bool last_of_pair = k + 1 == placed.size() || placed[k + 1].row != placed[k].row ||
                              placed[k + 1].col != placed[k].col;
    if (last_of_pair) a.cells_.push_back({placed[k].row, placed[k].col, vals[placed[k].source]});
  }
  return a;
}

std::optional<std::string> AssocArray::at(std::string_view row, std::string_view col) const {
  if (!has_key(row_keys_, row) || !has_key(col_keys_, col)) return std::nullopt;
  const Cell probe{key_index(row_keys_, row), key_index(col_keys_, col), {}};
  auto it = std::lower_bound(cells_.begin(), cells_.end(), probe, [](const Cell& x, const Cell& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  if (it == cells_.end() || it->row != probe.row || it->col != probe.col) return std::nullopt;
  return it->value;
}

AssocArray assoc_from_degree_vector(const DegreeVector& v, const IndexLabeler& labeler) {
  std::vector<std::string> rows, cols, vals;
  rows.reserve(v.size());
  for (const auto& e : v.entries()) {
    auto label = labeler(e.index);
    if (!label) throw UsageError("no label for index " + std::to_string(e.index));
    rows.push_back(std::move(*label));
    cols.emplace_back(kPacketsColumn);
    vals.push_back(std::to_string(e.value));
  }
  return AssocArray::from_triples(rows, cols, vals);
}

DegreeVector degree_vector_from_assoc(const AssocArray& a, const LabelParser& parse_label) {
  if (a.empty()) return {};
  const auto cols = a.col_keys();
  auto packets = std::find(cols.begin(), cols.end(), kPacketsColumn);
  if (packets == cols.end()) throw UsageError("associative array has no 'packets' column");
  const auto col = static_cast<std::uint32_t>(packets - cols.begin());

  std::vector<DegreeEntry> entries;
  for (const auto& cell : a.cells()) {
    if (cell.col != col) continue;
    std::uint64_t value = 0;
    const auto& s = cell.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("packet count is not a decimal integer", s);
    }
    entries.push_back({parse_label(a.row_keys()[cell.row]), value});
  }
  return DegreeVector::from_entries(std::move(entries));
}

std::vector<std::string> row_intersection(const AssocArray& a, const AssocArray& b) {
  std::vector<std::string> out;
  std::set_intersection(a.row_keys().begin(), a.row_keys().end(), b.row_keys().begin(),
                        b.row_keys().end(), std::back_inserter(out));
  return out;
}

void write_tsv(std::ostream& out, const AssocArray& a) {
  for (const auto& k : a.col_keys()) {
    check_tsv_safe(k);
    out << '\t' << k;
  }
  out << '\n';
  const auto cells = a.cells();
  std::size_t c = 0;
  for (std::uint32_t r = 0; r < a.row_keys().size(); ++r) {
    check_tsv_safe(a.row_keys()[r]);
    out << a.row_keys()[r];
    for (std::uint32_t col = 0; col < a.col_keys().size(); ++col) {
      out << '\t';
      if (c < cells.size() && cells[c].row == r && cells[c].col == col) {
        check_tsv_safe(cells[c].value);
        out << cells[c].value;
        ++c;
      }
    }
    out << '\n';
  }
}

AssocArray read_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_tabs(line);
  if (header.empty() || !header.front().empty()) {
    throw ParseError("TSV header must start with an empty corner field", line);
  }
  header.erase(header.begin());

  std::vector<std::string> rows, cols, vals;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != header.size() + 1) {
      throw ParseError("TSV line " + std::to_string(line_no) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(header.size() + 1),
                       line);
    }
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (fields[k].empty()) continue;
      rows.push_back(fields[0]);
      cols.push_back(header[k - 1]);
      vals.push_back(std::move(fields[k]));
    }
  }
  return AssocArray::from_triples(rows, cols, vals);
}

}  // namespace obscorr
