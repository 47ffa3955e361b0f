#include <doctest.h>

#include <unistd.h>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <unordered_set>

#include "obscorr/address.hpp"
#include "obscorr/anonymize.hpp"
#include "obscorr/error.hpp"

using namespace obscorr;

namespace {

const char* kHexKey = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";

int common_prefix(std::uint32_t a, std::uint32_t b) { return std::countl_zero(a ^ b); }

}  // namespace

TEST_CASE("dotted quads map to big-endian indices") {
  CHECK(ip_to_index("1.1.1.1") == 16843009u);
  CHECK(ip_to_index("2.2.2.2") == 33686018u);
  CHECK(ip_to_index("0.0.0.0") == 0u);
  CHECK(ip_to_index("255.255.255.255") == 0xFFFFFFFFu);
  CHECK(index_to_ip(0x0A000001u) == "10.0.0.1");
}

TEST_CASE("index and dotted quad round-trip") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10000; ++k) {
    const auto i = static_cast<std::uint32_t>(rng());
    CHECK(ip_to_index(index_to_ip(i)) == i);
  }
}

TEST_CASE("malformed addresses are parse errors") {
  for (const char* bad : {"", "1.1.1", "1.1.1.1.1", "256.1.1.1", "1.1.1.x", "1..1.1", " 1.1.1.1",
                          "1.1.1.1 ", "1.1.1.1234"}) {
    CHECK_THROWS_AS(ip_to_index(bad), ParseError);
  }
}

TEST_CASE("cidr parsing and containment") {
  const auto c = parse_cidr("44.0.0.0/8");
  CHECK(c.prefix == 0x2C000000u);
  CHECK(c.length == 8);
  CHECK(c.contains(ip_to_index("44.1.2.3")));
  CHECK_FALSE(c.contains(ip_to_index("45.0.0.0")));
  CHECK(c.str() == "44.0.0.0/8");
  CHECK(parse_cidr("0.0.0.0/0").contains(12345));
  CHECK(parse_cidr("1.2.3.4/32").contains(ip_to_index("1.2.3.4")));
  CHECK_THROWS_AS(parse_cidr("44.0.0.1/8"), ParseError);
  CHECK_THROWS_AS(parse_cidr("44.0.0.0/33"), ParseError);
  CHECK_THROWS_AS(parse_cidr("44.0.0.0"), ParseError);
}

TEST_CASE("quadrant filter keeps external to internal packets") {
  const auto f = QuadrantFilter::parse("44.0.0.0/8,10.0.0.0/8");
  const auto ext = ip_to_index("8.8.8.8");
  const auto in1 = ip_to_index("44.0.0.9");
  const auto in2 = ip_to_index("10.1.1.1");
  CHECK(f.enabled());
  CHECK(f.accepts(ext, in1));
  CHECK(f.accepts(ext, in2));
  CHECK_FALSE(f.accepts(in1, ext));
  CHECK_FALSE(f.accepts(in1, in2));
  CHECK_FALSE(f.accepts(ext, ext));
  const QuadrantFilter none;
  CHECK_FALSE(none.enabled());
  CHECK(none.accepts(in1, ext));
  CHECK_FALSE(QuadrantFilter::parse("").enabled());
}

TEST_CASE("key parsing") {
  const auto k = AnonymizationKey::from_hex(std::string("  ") + kHexKey + "\n");
  CHECK(k.bytes[0] == 0x00);
  CHECK(k.bytes[31] == 0x1f);
  CHECK(k.fingerprint().size() == 12);
  CHECK(k.id_space() == "anon:pp-siphash24-v1:" + k.fingerprint());
  CHECK_THROWS_AS(AnonymizationKey::from_hex("abcd"), UsageError);
  CHECK_THROWS_AS(AnonymizationKey::from_hex(std::string(64, '0')), UsageError);
  CHECK_THROWS_AS(AnonymizationKey::from_hex(std::string(64, 'g')), UsageError);
}

TEST_CASE("different keys give different fingerprints and mappings") {
  const auto a = AnonymizationKey::from_hex(kHexKey);
  auto hex = std::string(kHexKey);
  hex[63] = '0';
  const auto b = AnonymizationKey::from_hex(hex);
  CHECK(a.fingerprint() != b.fingerprint());
  int differ = 0;
  for (std::uint32_t i = 0; i < 100; ++i) differ += anonymize(i * 7919u, a) != anonymize(i * 7919u, b);
  CHECK(differ > 90);
}

TEST_CASE("anonymization preserves shared prefixes") {
  const auto key = AnonymizationKey::from_hex(kHexKey);
  const Anonymizer anon(key);
  CHECK(common_prefix(anon(0x0A000001u), anon(0x0A000002u)) >= 30);
  std::mt19937_64 rng(62);
  for (int k = 0; k < 5000; ++k) {
    const auto a = static_cast<std::uint32_t>(rng());
    const auto b = static_cast<std::uint32_t>(rng()) >> (rng() % 32) ^ a;
    CHECK(common_prefix(anon(a), anon(b)) == common_prefix(a, b));
  }
}

TEST_CASE("anonymization is injective and deterministic") {
  const auto key = AnonymizationKey::from_hex(kHexKey);
  const Anonymizer anon(key);
  std::unordered_set<std::uint32_t> images;
  for (std::uint32_t i = 0; i < 10000; ++i) images.insert(anon(i));
  CHECK(images.size() == 10000);
  CHECK(anon(123456) == anonymize(123456, key));
  CHECK(anon(123456) == Anonymizer(key)(123456));
}

TEST_CASE("key files") {
  const auto path = std::filesystem::temp_directory_path() / ("obscorr_test_key_" + std::to_string(::getpid()) + ".hex");
  {
    std::ofstream out(path);
    out << kHexKey << "\n";
  }
  CHECK(load_key_file(path).bytes == AnonymizationKey::from_hex(kHexKey).bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_key_file(path), IoError);
}
