#pragma once

// Keyed prefix-preserving relabeling of the IPv4 index space.
//
// Output bit k (counting from the most significant) is input bit k XOR a
// keyed pseudorandom bit of the input's k-bit prefix. Two addresses sharing
// a k-bit prefix therefore map to outputs sharing a k-bit prefix, and the map
// is a bijection on 2^32. The pseudorandom bit is SipHash-2-4 over
// (prefix, k) under a subkey derived from the 32-byte secret with keyed
// BLAKE2b.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace obscorr {

inline constexpr const char* kKeyFileEnv = "OBSCORR_KEY_FILE";
inline constexpr const char* kPrefixSipHashScheme = "pp-siphash24-v1";

struct AnonymizationKey {
  std::array<std::uint8_t, 32> bytes{};
  std::string scheme_id = kPrefixSipHashScheme;

  /// 64 hex digits, surrounding whitespace ignored. All-zero keys are rejected.
  static AnonymizationKey from_hex(std::string_view hex);

  /// Short public identifier of the key (not the key itself).
  std::string fingerprint() const;
  /// Identifier-space tag for data relabeled under this key.
  std::string id_space() const;
};

/// Reads a key file; IoError if unreadable, UsageError if malformed.
AnonymizationKey load_key_file(const std::filesystem::path& path);

class Anonymizer {
 public:
  explicit Anonymizer(const AnonymizationKey& key);

  std::uint32_t operator()(std::uint32_t index) const noexcept;

 private:
  std::array<std::uint8_t, 16> prf_key_{};
};

std::uint32_t anonymize(std::uint32_t index, const AnonymizationKey& key);

}  // namespace obscorr
