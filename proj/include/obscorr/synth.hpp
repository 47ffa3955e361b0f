#pragma once

// Synthetic telescope/outpost pair with known generative parameters.
//
// Source brightness d is Zipf-Mandelbrot distributed. A telescope source of
// brightness d appears in the outpost's month-t window with probability
//
//   share(d) * drift_beta / (drift_beta + |t - t0|^drift_alpha)
//
// where share(d) = min(1, log2 d / log2 sqrt(n_valid)) under the brightness
// law, or a constant base rate. t0 is the telescope capture time.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "obscorr/correlation.hpp"

namespace obscorr {

enum class ShareLaw { brightness, constant };

struct SynthConfig {
  std::uint64_t n_sources = 100'000;
  double zm_alpha = 2.0;
  double zm_delta = 1.0;
  std::uint64_t support_max = std::uint64_t{1} << 20;
  std::uint64_t n_valid = std::uint64_t{1} << 30;  // brightness-law scaling constant
  int months = 15;
  double drift_alpha = 1.0;
  double drift_beta = 4.0;
  ShareLaw share_law = ShareLaw::brightness;
  double base_rate = 0.5;
  std::uint64_t outpost_background = 10'000;  // extra outpost-only sources per month
  std::uint64_t seed = 1;
  std::string capture_date = "2020-06-16";
  std::string internal_cidr = "44.0.0.0/8";

  /// UsageError on invalid parameters (months < 3, bad ZM/drift values, ...).
  void validate() const;
};

struct SynthDataset {
  SynthConfig config;
  double t0 = 0.0;
  SourceSet telescope;                // address index -> packets in the capture
  std::vector<OutpostWindow> outposts;  // one per month, ascending
};

SynthDataset synth_two_site(const SynthConfig& config);

/// The capture as a time-ordered "timestamp,src,dst" packet log: each source
/// sends its d packets to random addresses in the internal prefix, interleaved
/// in random order. Deterministic per config seed.
void write_packet_log(std::ostream& out, const SynthDataset& data);

double share_probability(const SynthConfig& config, std::uint64_t d, double t, double t0);

const char* share_law_name(ShareLaw law) noexcept;
ShareLaw parse_share_law(std::string_view name);

}  // namespace obscorr
