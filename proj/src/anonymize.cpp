#include "obscorr/anonymize.hpp"

#include <sodium.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium failed to initialize");
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <std::size_t N>
std::array<std::uint8_t, N> derive(const AnonymizationKey& key, std::string_view label) {
  ensure_sodium();
  std::array<std::uint8_t, N> out{};
  crypto_generichash(out.data(), out.size(), reinterpret_cast<const unsigned char*>(label.data()),
                     label.size(), key.bytes.data(), key.bytes.size());
  return out;
}

}  // namespace

AnonymizationKey AnonymizationKey::from_hex(std::string_view hex) {
  while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.front()))) hex.remove_prefix(1);
  while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.remove_suffix(1);
  if (hex.size() != 64) throw UsageError("anonymization key must be 64 hex digits");
  AnonymizationKey key;
  for (std::size_t i = 0; i < 32; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw UsageError("anonymization key contains a non-hex digit");
    key.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  if (std::all_of(key.bytes.begin(), key.bytes.end(), [](std::uint8_t b) { return b == 0; })) {
    throw UsageError("anonymization key must not be all zero");
  }
  return key;
}

std::string AnonymizationKey::fingerprint() const {
  static constexpr char kHex[] = "0123456789abcdef";
  const auto digest = derive<16>(*this, "obscorr-fingerprint");
  std::string out;
  for (std::size_t i = 0; i < 6; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string AnonymizationKey::id_space() const {
  return "anon:" + scheme_id + ":" + fingerprint();
}

AnonymizationKey load_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read key file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return AnonymizationKey::from_hex(buf.str());
}

Anonymizer::Anonymizer(const AnonymizationKey& key) {
  if (key.scheme_id != kPrefixSipHashScheme) {
    throw UsageError("unsupported anonymization scheme '" + key.scheme_id + "'");
  }
  static_assert(crypto_shorthash_KEYBYTES == 16);
  prf_key_ = derive<16>(key, "obscorr-prefix-prf");
}

std::uint32_t Anonymizer::operator()(std::uint32_t index) const noexcept {
  std::uint32_t flips = 0;
  for (int k = 0; k < 32; ++k) {
    // The k most significant input bits, zero below.
    const std::uint32_t prefix = k == 0 ? 0 : index & (~std::uint32_t{0} << (32 - k));
    const unsigned char msg[5] = {static_cast<unsigned char>(prefix >> 24),
                                  static_cast<unsigned char>(prefix >> 16),
                                  static_cast<unsigned char>(prefix >> 8),
                                  static_cast<unsigned char>(prefix), static_cast<unsigned char>(k)};
    unsigned char out[crypto_shorthash_BYTES];
    crypto_shorthash(out, msg, sizeof msg, prf_key_.data());
    flips |= static_cast<std::uint32_t>(out[0] & 1u) << (31 - k);
  }
  return index ^ flips;
}

std::uint32_t anonymize(std::uint32_t index, const AnonymizationKey& key) {
  return Anonymizer(key)(index);
}

}  // namespace obscorr
