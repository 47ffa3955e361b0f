#include "obscorr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "obscorr/address.hpp"
#include "obscorr/distributions.hpp"
#include "obscorr/error.hpp"
#include "obscorr/month.hpp"
#include "random_util.hpp"

namespace obscorr {

namespace {

// Independent streams derived from the one user seed.
constexpr std::uint64_t kBrightnessStream = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kPacketStream = 0xc2b2ae3d27d4eb4full;

}  // namespace

void SynthConfig::validate() const {
  if (n_sources < 1) throw UsageError("n_sources must be >= 1");
  if (!(zm_alpha > 0.0) || !(zm_delta >= 0.0)) throw UsageError("invalid Zipf-Mandelbrot parameters");
  if (support_max < 1) throw UsageError("support_max must be >= 1");
  if (n_valid < 4) throw UsageError("n_valid must be >= 4");
  if (months < 3) throw UsageError("months must be >= 3");
  if (!(drift_alpha > 0.0) || !(drift_beta > 0.0)) throw UsageError("invalid drift parameters");
  if (!(base_rate >= 0.0 && base_rate <= 1.0)) throw UsageError("base_rate must lie in [0, 1]");
  const auto cidr = parse_cidr(internal_cidr);
  if (cidr.length < 1) throw UsageError("internal prefix must not cover the whole address space");
  epoch_microseconds(capture_date);
}

double share_probability(const SynthConfig& config, std::uint64_t d, double t, double t0) {
  const double base = config.share_law == ShareLaw::brightness ? brightness_law(d, config.n_valid)
                                                               : config.base_rate;
  return base * modified_cauchy(t, t0, config.drift_alpha, config.drift_beta);
}

SynthDataset synth_two_site(const SynthConfig& config) {
  config.validate();
  const Cidr internal = parse_cidr(config.internal_cidr);
  std::mt19937_64 rng(config.seed);

  SynthDataset data;
  data.config = config;
  data.t0 = month_coordinate(config.capture_date);
  data.telescope.window_label = config.capture_date;

  auto external_address = [&](std::unordered_set<std::uint32_t>& used) {
    while (true) {
      const auto a = static_cast<std::uint32_t>(rng() >> 32);
      if (!internal.contains(a) && used.insert(a).second) return a;
    }
  };

  const auto brightness = sample_zipf_mandelbrot(config.zm_alpha, config.zm_delta,
                                                 config.support_max, config.n_sources,
                                                 config.seed ^ kBrightnessStream);
  std::unordered_set<std::uint32_t> used;
  used.reserve(config.n_sources * 2);
  std::vector<DegreeEntry> sources;
  sources.reserve(config.n_sources);
  for (const auto& e : brightness.entries()) sources.push_back({external_address(used), e.value});
  // Keep generation order for the sharing draws below; DegreeVector re-sorts by address.
  data.telescope.sources = DegreeVector::from_entries(sources);

  const int capture_month = month_index(config.capture_date.substr(0, 7));
  const int first = capture_month - config.months / 2;
  for (int m = 0; m < config.months; ++m) {
    const auto label = month_label(1970, 1, first + m);
    const double t = month_coordinate(label);
    std::vector<std::uint32_t> ids;
    for (const auto& s : sources) {
      if (detail::uniform01(rng) < share_probability(config, s.value, t, data.t0)) {
        ids.push_back(s.index);
      }
    }
    auto background = used;
    for (std::uint64_t k = 0; k < config.outpost_background; ++k) {
      ids.push_back(external_address(background));
    }
    data.outposts.push_back(OutpostWindow::from_ids(label, std::move(ids)));
  }
  return data;
}

void write_packet_log(std::ostream& out, const SynthDataset& data) {
  const Cidr internal = parse_cidr(data.config.internal_cidr);
  const std::uint32_t host_span =
      internal.length == 32 ? 1u : static_cast<std::uint32_t>(std::uint64_t{1} << (32 - internal.length)) - 1u;
  std::mt19937_64 rng(data.config.seed ^ kPacketStream);

  std::vector<std::uint32_t> srcs;
  srcs.reserve(data.telescope.sources.sum());
  for (const auto& e : data.telescope.sources.entries()) srcs.insert(srcs.end(), e.value, e.index);
  for (std::size_t i = srcs.size(); i > 1; --i) {
    std::swap(srcs[i - 1], srcs[detail::uniform_below(rng, i)]);
  }

  std::int64_t ts = epoch_microseconds(data.config.capture_date);
  out << "timestamp,src,dst\n";
  for (auto src : srcs) {
    const auto host = host_span == 1u ? 0u : static_cast<std::uint32_t>(detail::uniform_below(rng, host_span + 1ull));
    out << ts << ',' << index_to_ip(src) << ',' << index_to_ip(internal.prefix | host) << '\n';
    ts += 1 + static_cast<std::int64_t>(detail::uniform_below(rng, 4));
  }
}

const char* share_law_name(ShareLaw law) noexcept {
  return law == ShareLaw::brightness ? "brightness" : "constant";
}

ShareLaw parse_share_law(std::string_view name) {
  if (name == "brightness") return ShareLaw::brightness;
  if (name == "constant") return ShareLaw::constant;
  throw UsageError("share law must be 'brightness' or 'constant', got '" + std::string(name) + "'");
}

}  // namespace obscorr
