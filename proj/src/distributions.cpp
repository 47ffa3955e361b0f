#include "obscorr/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "obscorr/error.hpp"
#include "obscorr/simd/kernels.hpp"
#include "random_util.hpp"

namespace obscorr {

namespace {

// Model evaluation keeps a log table of the whole support in memory.
constexpr std::uint64_t kMaxSupport = std::uint64_t{1} << 24;

void check_zm_params(double alpha, double delta, std::uint64_t support_max) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw UsageError("Zipf-Mandelbrot alpha must be positive and finite");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw UsageError("Zipf-Mandelbrot delta must be nonnegative and finite");
  }
  if (support_max < 1) throw UsageError("Zipf-Mandelbrot support_max must be >= 1");
  if (support_max > kMaxSupport) {
    throw UsageError("Zipf-Mandelbrot support_max " + std::to_string(support_max) +
                     " exceeds the supported maximum 2^24");
  }
}

// log(k + delta) for k = 1..support_max, stored at k - 1.
std::vector<double> log_table(double delta, std::uint64_t support_max) {
  std::vector<double> logs(support_max);
  for (std::uint64_t k = 1; k <= support_max; ++k) {
    logs[k - 1] = std::log(static_cast<double>(k) + delta);
  }
  return logs;
}

// Unnormalized model mass per binary bin.
std::vector<double> pooled_sums(std::span<const double> logs, double alpha) {
  const auto& kernels = simd::active_kernels();
  const std::uint64_t support = logs.size();
  std::vector<double> sums;
  for (std::uint64_t lo = 1; lo <= support; lo <<= 1) {
    const std::uint64_t hi = std::min(2 * lo - 1, support);
    sums.push_back(kernels.power_decay_sum(logs.subspan(lo - 1, hi - lo + 1), alpha));
  }
  return sums;
}

double log_residual(const BinnedDistribution& b, std::span<const double> data_log10,
                    const std::vector<double>& sums) {
  double z = 0.0;
  for (double s : sums) z += s;
  double residual = 0.0;
  const auto counts = b.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const double diff = std::log10(sums[i] / z) - data_log10[i];
    residual += diff * diff;
  }
  return residual;
}

std::vector<double> data_log10(const BinnedDistribution& b) {
  // D[i] equals p[i] at binned granularity; p avoids the cancellation in P[i] - P[i-1].
  const auto views = probability_views(b);
  std::vector<double> out(views.p.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (b.counts()[i] != 0) out[i] = std::log10(views.p[i]);
  }
  return out;
}

void check_fittable(const BinnedDistribution& b) {
  if (b.nonzero_bins() < 3) {
    throw UsageError("Zipf-Mandelbrot fit needs at least 3 nonzero bins, got " +
                     std::to_string(b.nonzero_bins()));
  }
}

}  // namespace

int degree_bin(std::uint64_t d) noexcept { return static_cast<int>(std::bit_width(d)) - 1; }

BinnedDistribution BinnedDistribution::from_counts(std::vector<std::uint64_t> counts,
                                                   std::uint64_t d_max) {
  if (d_max == 0) throw UsageError("binned distribution needs d_max >= 1");
  const auto expected = static_cast<std::size_t>(degree_bin(d_max)) + 1;
  if (counts.size() != expected) {
    throw UsageError("binned distribution with d_max " + std::to_string(d_max) + " needs " +
                     std::to_string(expected) + " bins, got " + std::to_string(counts.size()));
  }
  if (counts.back() == 0) throw UsageError("the bin holding d_max must be nonzero");
  BinnedDistribution b;
  for (auto c : counts) {
    if (__builtin_add_overflow(b.total_, c, &b.total_)) {
      throw ArithmeticError("bin total overflows 64 bits");
    }
  }
  b.counts_ = std::move(counts);
  b.d_max_ = d_max;
  return b;
}

std::size_t BinnedDistribution::nonzero_bins() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts_.begin(), counts_.end(), [](std::uint64_t c) { return c != 0; }));
}

std::vector<int> BinnedDistribution::bin_lower_exponents() const {
  std::vector<int> out(counts_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

BinnedDistribution bin_degrees(std::span<const std::uint64_t> degrees) {
  if (degrees.empty()) throw UsageError("cannot bin an empty degree set");
  std::vector<std::uint64_t> counts(64, 0);
  std::uint64_t d_max = 0;
  for (auto d : degrees) {
    if (d == 0) throw DataQualityError("zero degree in distribution input");
    ++counts[static_cast<std::size_t>(degree_bin(d))];
    d_max = std::max(d_max, d);
  }
  counts.resize(static_cast<std::size_t>(degree_bin(d_max)) + 1);
  return BinnedDistribution::from_counts(std::move(counts), d_max);
}

BinnedDistribution bin_degrees(const DegreeVector& degrees) {
  std::vector<std::uint64_t> values;
  values.reserve(degrees.size());
  for (const auto& e : degrees.entries()) values.push_back(e.value);
  return bin_degrees(values);
}

ProbabilityViews probability_views(const BinnedDistribution& b) {
  if (b.total() == 0) throw UsageError("probability views need a nonempty distribution");
  const auto counts = b.counts();
  const double total = static_cast<double>(b.total());
  ProbabilityViews v;
  v.p.resize(counts.size());
  v.P.resize(counts.size());
  v.D.resize(counts.size());
  // P is taken from exact integer prefix sums so its last entry is exactly 1.
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    running += counts[i];
    v.p[i] = static_cast<double>(counts[i]) / total;
    v.P[i] = static_cast<double>(running) / total;
    v.D[i] = i == 0 ? v.P[0] : v.P[i] - v.P[i - 1];
  }
  return v;
}

ZipfMandelbrot::ZipfMandelbrot(double alpha, double delta, std::uint64_t support_max)
    : alpha_(alpha), delta_(delta), support_max_(support_max), normalizer_(0.0) {
  check_zm_params(alpha, delta, support_max);
  for (double s : pooled_sums(log_table(delta, support_max), alpha)) normalizer_ += s;
}

double ZipfMandelbrot::pdf(std::uint64_t d) const {
  if (d < 1 || d > support_max_) {
    throw UsageError("degree " + std::to_string(d) + " outside Zipf-Mandelbrot support 1.." +
                     std::to_string(support_max_));
  }
  return std::pow(static_cast<double>(d) + delta_, -alpha_) / normalizer_;
}

std::vector<double> ZipfMandelbrot::pooled_bins() const {
  auto sums = pooled_sums(log_table(delta_, support_max_), alpha_);
  for (double& s : sums) s /= normalizer_;
  return sums;
}

double zm_pdf(std::uint64_t d, double alpha, double delta, std::uint64_t support_max) {
  return ZipfMandelbrot(alpha, delta, support_max).pdf(d);
}

ZipfMandelbrotGrid ZipfMandelbrotGrid::standard() {
  ZipfMandelbrotGrid g;
  for (int j = 10; j <= 400; ++j) g.alphas.push_back(j / 100.0);
  g.deltas = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  return g;
}

double zm_fit_residual(const BinnedDistribution& b, double alpha, double delta) {
  check_fittable(b);
  check_zm_params(alpha, delta, b.d_max());
  const auto logs = log_table(delta, b.d_max());
  return log_residual(b, data_log10(b), pooled_sums(logs, alpha));
}

ZipfMandelbrotFit fit_zipf_mandelbrot(const BinnedDistribution& b, const ZipfMandelbrotGrid& grid) {
  check_fittable(b);
  if (grid.alphas.empty() || grid.deltas.empty()) throw UsageError("empty fit grid");
  const std::uint64_t support = b.d_max();
  for (double a : grid.alphas) check_zm_params(a, 0.0, support);
  for (double d : grid.deltas) check_zm_params(1.0, d, support);

  const auto target = data_log10(b);
  const std::size_t na = grid.alphas.size();
  const std::size_t nd = grid.deltas.size();
  std::vector<double> residuals(na * nd);
  std::vector<double> normalizers(na * nd);

  for (std::size_t di = 0; di < nd; ++di) {
    const auto logs = log_table(grid.deltas[di], support);
    for (std::size_t ai = 0; ai < na; ++ai) {
      const auto sums = pooled_sums(logs, grid.alphas[ai]);
      double z = 0.0;
      for (double s : sums) z += s;
      residuals[ai * nd + di] = log_residual(b, target, sums);
      normalizers[ai * nd + di] = z;
    }
  }

  // Alpha-major scan with strict '<' keeps the smallest alpha, then delta.
  std::size_t best = 0;
  for (std::size_t k = 1; k < residuals.size(); ++k) {
    if (residuals[k] < residuals[best]) best = k;
  }
  return {grid.alphas[best / nd], grid.deltas[best % nd], residuals[best], normalizers[best], support};
}

DegreeVector sample_zipf_mandelbrot(double alpha, double delta, std::uint64_t support_max,
                                    std::uint64_t n, std::uint64_t seed) {
  check_zm_params(alpha, delta, support_max);
  if (n < 1) throw UsageError("sample count must be >= 1");
  if (n > 0xffffffffull) throw UsageError("sample count exceeds the 32-bit index space");

  std::vector<double> cumulative(support_max);
  double running = 0.0;
  for (std::uint64_t k = 1; k <= support_max; ++k) {
    running += std::pow(static_cast<double>(k) + delta, -alpha);
    cumulative[k - 1] = running;
  }

  std::mt19937_64 rng(seed);
  std::vector<DegreeEntry> draws;
  draws.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = detail::uniform01(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u * running);
    if (it == cumulative.end()) --it;
    draws.push_back({static_cast<std::uint32_t>(i),
                     static_cast<std::uint64_t>(it - cumulative.begin()) + 1});
  }
  return DegreeVector::from_entries(std::move(draws));
}

}  // namespace obscorr
