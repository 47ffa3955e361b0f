#include "obscorr/ingest.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "obscorr/error.hpp"

namespace obscorr {

namespace {

constexpr std::size_t kReportedLines = 100;

std::optional<PacketRecord> parse_line(std::string_view line) {
  const auto c1 = line.find(',');
  if (c1 == std::string_view::npos) return std::nullopt;
  const auto c2 = line.find(',', c1 + 1);
  if (c2 == std::string_view::npos) return std::nullopt;

  PacketRecord r;
  const auto ts = line.substr(0, c1);
  auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), r.timestamp_us);
  if (ec != std::errc{} || ptr != ts.data() + ts.size() || ts.empty()) return std::nullopt;
  try {
    r.src = ip_to_index(line.substr(c1 + 1, c2 - c1 - 1));
    r.dst = ip_to_index(line.substr(c2 + 1));
  } catch (const ParseError&) {
    return std::nullopt;
  }
  return r;
}

}  // namespace

PacketLog parse_packet_log(std::istream& in) {
  PacketLog log;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (log.data_lines == 0 && log.malformed == 0 && line.rfind("timestamp", 0) == 0) continue;
    ++log.data_lines;
    if (auto r = parse_line(line)) {
      log.records.push_back(*r);
    } else {
      ++log.malformed;
      if (log.malformed_lines.size() < kReportedLines) log.malformed_lines.push_back(line_no);
    }
  }
  if (in.bad()) throw IoError("read error while parsing packet log");

  const std::uint64_t allowance = (log.data_lines + 99) / 100;
  if (log.malformed > allowance) {
    std::string lines;
    for (auto n : log.malformed_lines) lines += (lines.empty() ? "" : ",") + std::to_string(n);
    throw DataQualityError(std::to_string(log.malformed) + " of " + std::to_string(log.data_lines) +
                           " packet lines malformed (over 1%); lines " + lines);
  }
  return log;
}

PacketLog parse_packet_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read packet log: " + path.string());
  return parse_packet_log(in);
}

void WindowSpec::validate() const {
  if (!std::has_single_bit(n_valid)) throw UsageError("n_valid must be a power of two");
  if (!std::has_single_bit(sub_block)) throw UsageError("sub_block must be a power of two");
  if (sub_block > n_valid) throw UsageError("sub_block must not exceed n_valid");
}

WindowedMatrices window_and_build(std::span<const PacketRecord> records, const WindowSpec& spec,
                                  const QuadrantFilter& filter,
                                  const std::optional<AnonymizationKey>& key) {
  spec.validate();
  std::optional<Anonymizer> anon;
  if (key) anon.emplace(*key);

  WindowedMatrices out;
  std::vector<EdgeTriple> leaf;
  leaf.reserve(spec.sub_block);
  std::vector<TrafficMatrix> blocks;
  std::uint64_t in_window = 0;

  auto close_window = [&] {
    auto window = hierarchical_sum(blocks);
    if (anon) {
      IndexFunction f = [&](std::uint32_t i) { return (*anon)(i); };
      window = permute(window, f, f);
    }
    out.windows.push_back(std::move(window));
    blocks.clear();
    in_window = 0;
  };

  std::int64_t latest = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    if (k > 0 && r.timestamp_us + kReorderToleranceUs < latest) {
      throw DataQualityError("packet " + std::to_string(k + 1) + " is " +
                             std::to_string(latest - r.timestamp_us) +
                             " us older than an earlier packet (tolerance 1 s)");
    }
    latest = k == 0 ? r.timestamp_us : std::max(latest, r.timestamp_us);

    if (!filter.accepts(r.src, r.dst)) {
      ++out.discarded;
      continue;
    }
    ++out.valid_packets;
    leaf.push_back({r.src, r.dst, 1});
    ++in_window;
    if (leaf.size() == spec.sub_block) {
      blocks.push_back(TrafficMatrix::from_triples(leaf));
      leaf.clear();
    }
    if (in_window == spec.n_valid) close_window();
  }
  out.remainder = in_window;
  return out;
}

}  // namespace obscorr
