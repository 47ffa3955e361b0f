#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace obscorr {

/// Big-endian packing: "a.b.c.d" -> a*2^24 + b*2^16 + c*2^8 + d.
/// Throws ParseError carrying the offending text.
std::uint32_t ip_to_index(std::string_view addr);
std::string index_to_ip(std::uint32_t index);

struct Cidr {
  std::uint32_t prefix = 0;  // network address, host bits zero
  int length = 0;            // 0..32

  bool contains(std::uint32_t addr) const noexcept;
  std::string str() const;
};

/// "a.b.c.d/len"; host bits must be zero.
Cidr parse_cidr(std::string_view text);

/// Internal-address predicate for quadrant filtering. A packet is valid for a
/// darkspace when its source is external and its destination internal. With
/// no prefixes configured every packet is valid.
class QuadrantFilter {
 public:
  QuadrantFilter() = default;
  explicit QuadrantFilter(std::vector<Cidr> internal) : internal_(std::move(internal)) {}

  /// Comma-separated CIDR list; empty string means no filtering.
  static QuadrantFilter parse(std::string_view list);

  bool is_internal(std::uint32_t addr) const noexcept;
  bool accepts(std::uint32_t src, std::uint32_t dst) const noexcept;
  bool enabled() const noexcept { return !internal_.empty(); }
  const std::vector<Cidr>& internal() const noexcept { return internal_; }

 private:
  std::vector<Cidr> internal_;
};

}  // namespace obscorr
