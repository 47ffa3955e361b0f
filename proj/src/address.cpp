#include "obscorr/address.hpp"

#include <charconv>

#include "obscorr/error.hpp"

namespace obscorr {

std::uint32_t ip_to_index(std::string_view addr) {
  std::uint32_t value = 0;
  std::size_t pos = 0;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (pos >= addr.size() || addr[pos] != '.') throw ParseError("malformed IPv4 address", std::string(addr));
      ++pos;
    }
    std::size_t end = pos;
    while (end < addr.size() && end - pos < 4 && addr[end] >= '0' && addr[end] <= '9') ++end;
    if (end == pos || end - pos > 3) throw ParseError("malformed IPv4 address", std::string(addr));
    unsigned part = 0;
    std::from_chars(addr.data() + pos, addr.data() + end, part);
    if (part > 255) throw ParseError("IPv4 octet out of range", std::string(addr));
    value = (value << 8) | part;
    pos = end;
  }
  if (pos != addr.size()) throw ParseError("malformed IPv4 address", std::string(addr));
  return value;
}

std::string index_to_ip(std::uint32_t index) {
  std::string out;
  out.reserve(15);
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += std::to_string((index >> shift) & 0xff);
    if (shift > 0) out += '.';
  }
  return out;
}

bool Cidr::contains(std::uint32_t addr) const noexcept {
  if (length == 0) return true;
  const std::uint32_t mask = ~std::uint32_t{0} << (32 - length);
  return (addr & mask) == prefix;
}

std::string Cidr::str() const { return index_to_ip(prefix) + "/" + std::to_string(length); }

Cidr parse_cidr(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("CIDR needs a /length", std::string(text));
  Cidr c;
  c.prefix = ip_to_index(text.substr(0, slash));
  const auto len = text.substr(slash + 1);
  auto [ptr, ec] = std::from_chars(len.data(), len.data() + len.size(), c.length);
  if (ec != std::errc{} || ptr != len.data() + len.size() || len.empty() || c.length < 0 ||
      c.length > 32) {
    throw ParseError("bad CIDR prefix length", std::string(text));
  }
  if (c.length < 32) {
    const std::uint32_t host = c.length == 0 ? ~std::uint32_t{0} : ~(~std::uint32_t{0} << (32 - c.length));
    if (c.prefix & host) throw ParseError("CIDR has host bits set", std::string(text));
  }
  return c;
}

QuadrantFilter QuadrantFilter::parse(std::string_view list) {
  std::vector<Cidr> cidrs;
  std::size_t start = 0;
  while (start < list.size()) {
    auto comma = list.find(',', start);
    auto item = list.substr(start, comma == std::string_view::npos ? comma : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) cidrs.push_back(parse_cidr(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return QuadrantFilter(std::move(cidrs));
}

bool QuadrantFilter::is_internal(std::uint32_t addr) const noexcept {
  for (const auto& c : internal_) {
    if (c.contains(addr)) return true;
  }
  return false;
}

bool QuadrantFilter::accepts(std::uint32_t src, std::uint32_t dst) const noexcept {
  if (internal_.empty()) return true;
  return !is_internal(src) && is_internal(dst);
}

}  // namespace obscorr
