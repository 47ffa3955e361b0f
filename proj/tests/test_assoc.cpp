#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "obscorr/address.hpp"
#include "obscorr/assoc.hpp"
#include "obscorr/error.hpp"

using namespace obscorr;

namespace {

using Strings = std::vector<std::string>;

AssocArray build(const Strings& r, const Strings& c, const Strings& v) {
  return AssocArray::from_triples(r, c, v);
}

std::optional<std::string> dotted(std::uint32_t i) { return index_to_ip(i); }

}  // namespace

TEST_CASE("single triple") {
  const auto a = build({"1.1.1.1"}, {"2.2.2.2"}, {"3"});
  CHECK(a.at("1.1.1.1", "2.2.2.2") == "3");
  CHECK_FALSE(a.at("1.1.1.1", "x").has_value());
  CHECK_FALSE(a.at("nope", "2.2.2.2").has_value());
}

TEST_CASE("duplicate pairs resolve last-wins") {
  const auto a = build({"r", "r"}, {"c", "c"}, {"1", "2"});
  CHECK(a.at("r", "c") == "2");
  CHECK(a.cells().size() == 1);
}

TEST_CASE("keys are sorted and unique; cells reference them") {
  const auto a = build({"b", "a", "b"}, {"y", "x", "x"}, {"1", "2", "3"});
  CHECK(Strings(a.row_keys().begin(), a.row_keys().end()) == Strings{"a", "b"});
  CHECK(Strings(a.col_keys().begin(), a.col_keys().end()) == Strings{"x", "y"});
  for (const auto& cell : a.cells()) {
    CHECK(cell.row < a.row_keys().size());
    CHECK(cell.col < a.col_keys().size());
  }
}

TEST_CASE("length mismatch is a usage error") {
  CHECK_THROWS_AS(build({"a"}, {"b", "c"}, {"1"}), UsageError);
}

TEST_CASE("construction is insensitive to triple order for distinct pairs") {
  std::mt19937_64 rng(51);
  Strings r, c, v;
  std::set<std::pair<std::string, std::string>> seen;
  while (r.size() < 200) {
    const auto row = "r" + std::to_string(rng() % 40);
    const auto col = "c" + std::to_string(rng() % 40);
    if (!seen.insert({row, col}).second) continue;
    r.push_back(row);
    c.push_back(col);
    v.push_back(std::to_string(rng() % 1000));
  }
  const auto a = build(r, c, v);
  std::vector<std::size_t> order(r.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Strings r2, c2, v2;
  for (auto i : order) {
    r2.push_back(r[i]);
    c2.push_back(c[i]);
    v2.push_back(v[i]);
  }
  CHECK(build(r2, c2, v2) == a);
}

TEST_CASE("degree vector to dotted-quad labeled array and back") {
  const auto v = DegreeVector::from_entries({{16843009, 3}, {33686018, 7}});
  const auto a = assoc_from_degree_vector(v, dotted);
  CHECK(a.at("1.1.1.1", kPacketsColumn) == "3");
  CHECK(a.at("2.2.2.2", kPacketsColumn) == "7");
  CHECK(degree_vector_from_assoc(a, ip_to_index) == v);
}

TEST_CASE("missing label names the index") {
  const auto v = DegreeVector::from_entries({{42, 1}});
  const IndexLabeler none = [](std::uint32_t) { return std::optional<std::string>{}; };
  try {
    assoc_from_degree_vector(v, none);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("42") != std::string::npos);
  }
}

TEST_CASE("degree_vector_from_assoc errors") {
  CHECK_THROWS_AS(degree_vector_from_assoc(build({"1.1.1.1"}, {"packets"}, {"x"}), ip_to_index),
                  ParseError);
  CHECK_THROWS_AS(degree_vector_from_assoc(build({"1.1.1.1"}, {"other"}, {"3"}), ip_to_index),
                  UsageError);
  CHECK(degree_vector_from_assoc(AssocArray{}, ip_to_index).empty());
}

TEST_CASE("row intersection") {
  const auto a = build({"a", "b", "c"}, {"x", "x", "x"}, {"1", "1", "1"});
  const auto b = build({"b", "c", "d"}, {"y", "y", "y"}, {"1", "1", "1"});
  const auto e = build({"q"}, {"x"}, {"1"});
  CHECK(row_intersection(a, b) == Strings{"b", "c"});
  CHECK(row_intersection(a, b) == row_intersection(b, a));
  CHECK(row_intersection(a, a) == Strings{"a", "b", "c"});
  CHECK(row_intersection(a, e).empty());
}

TEST_CASE("row intersection matches a set oracle") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 50; ++k) {
    Strings ra, rb;
    for (int i = 0; i < 60; ++i) ra.push_back(std::to_string(rng() % 100));
    for (int i = 0; i < 60; ++i) rb.push_back(std::to_string(rng() % 100));
    const auto a = build(ra, Strings(ra.size(), "c"), Strings(ra.size(), "1"));
    const auto b = build(rb, Strings(rb.size(), "c"), Strings(rb.size(), "1"));
    std::set<std::string> sa(ra.begin(), ra.end()), want;
    for (const auto& s : rb) {
      if (sa.count(s)) want.insert(s);
    }
    CHECK(row_intersection(a, b) == Strings(want.begin(), want.end()));
  }
}

TEST_CASE("tsv round-trip") {
  const auto a = build({"1.1.1.1", "2.2.2.2", "2.2.2.2"}, {"packets", "packets", "tag"},
                       {"3", "9", "scanner"});
  std::stringstream ss;
  write_tsv(ss, a);
  CHECK(ss.str() == "\tpackets\ttag\n1.1.1.1\t3\t\n2.2.2.2\t9\tscanner\n");
  CHECK(read_tsv(ss) == a);
}

TEST_CASE("tsv rejects fields containing tabs") {
  std::stringstream ss;
  CHECK_THROWS_AS(write_tsv(ss, build({"a\tb"}, {"c"}, {"1"})), UsageError);
}
