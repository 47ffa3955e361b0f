#include "obscorr/hypersparse_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

constexpr std::array<char, 4> kMagic{'H', 'S', 'T', 'M'};
constexpr std::size_t kTripleBytes = 16;

template <typename T>
void put_le(std::string& buf, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(p[i]) << (8 * i);
  }
  return value;
}

void read_exact(std::istream& in, unsigned char* dst, std::size_t n, const char* what) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw DataQualityError(std::string("truncated HSTM stream while reading ") + what);
  }
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad matrix CSV field on line " + std::to_string(line_no), std::string(text));
  }
  return value;
}

}  // namespace

std::string to_binary(const TrafficMatrix& m) {
  std::string buf;
  buf.reserve(kMagic.size() + 2 + 8 + m.nnz() * kTripleBytes);
  buf.append(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(buf, kHstmVersion);
  put_le<std::uint64_t>(buf, m.nnz());
  for (const auto& e : m.entries()) {
    put_le<std::uint32_t>(buf, e.src);
    put_le<std::uint32_t>(buf, e.dst);
    put_le<std::uint64_t>(buf, e.count);
  }
  return buf;
}

void write_binary(std::ostream& out, const TrafficMatrix& m) {
  const auto buf = to_binary(m);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

TrafficMatrix read_binary(std::istream& in) {
  std::array<unsigned char, 14> header{};
  read_exact(in, header.data(), header.size(), "header");
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    throw DataQualityError("not an HSTM stream (bad magic)");
  }
  const auto version = get_le<std::uint16_t>(header.data() + 4);
  if (version != kHstmVersion) {
    throw DataQualityError("unsupported HSTM version " + std::to_string(version));
  }
  const auto nnz = get_le<std::uint64_t>(header.data() + 6);

  std::vector<EdgeTriple> triples;
  std::array<unsigned char, kTripleBytes> rec{};
  for (std::uint64_t k = 0; k < nnz; ++k) {
    read_exact(in, rec.data(), rec.size(), "triples");
    EdgeTriple t{get_le<std::uint32_t>(rec.data()), get_le<std::uint32_t>(rec.data() + 4),
                 get_le<std::uint64_t>(rec.data() + 8)};
    if (t.count == 0) throw DataQualityError("HSTM entry with zero count");
    if (!triples.empty()) {
      const auto& prev = triples.back();
      if (t.src < prev.src || (t.src == prev.src && t.dst <= prev.dst)) {
        throw DataQualityError("HSTM entries are not strictly sorted at entry " + std::to_string(k));
      }
    }
    triples.push_back(t);
  }
  return TrafficMatrix::from_triples(triples);
}

void save_binary(const std::filesystem::path& path, const TrafficMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  write_binary(out, m);
  if (!out) throw IoError("write failed: " + path.string());
}

TrafficMatrix load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return read_binary(in);
}

void write_csv(std::ostream& out, const TrafficMatrix& m) {
  for (const auto& e : m.entries()) {
    out << e.src << ',' << e.dst << ',' << e.count << '\n';
  }
}

TrafficMatrix read_csv(std::istream& in) {
  std::vector<EdgeTriple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view view(line);
    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw ParseError("matrix CSV line " + std::to_string(line_no) + " needs src,dst,count", line);
    }
    triples.push_back({parse_field<std::uint32_t>(view.substr(0, c1), line_no),
                       parse_field<std::uint32_t>(view.substr(c1 + 1, c2 - c1 - 1), line_no),
                       parse_field<std::uint64_t>(view.substr(c2 + 1), line_no)});
  }
  return TrafficMatrix::from_triples(triples);
}

}  // namespace obscorr
