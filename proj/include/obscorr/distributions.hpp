#pragma once

// Degree histograms pooled into binary logarithmic bins, and the
// Zipf-Mandelbrot model p(d) ~ 1/(d + delta)^alpha fitted against them.
//
// Bin i covers the half-open degree range [2^i, 2^(i+1)). A distribution's
// bins run contiguously from i = 0 to floor(log2 d_max).

#include <cstdint>
#include <span>
#include <vector>

#include "obscorr/degree_vector.hpp"

namespace obscorr {

/// floor(log2 d) for d >= 1.
int degree_bin(std::uint64_t d) noexcept;

class BinnedDistribution {
 public:
  BinnedDistribution() = default;

  /// counts[i] is the number of vertices in bin i. Requires
  /// counts.size() == degree_bin(d_max) + 1 and a nonzero last bin.
  static BinnedDistribution from_counts(std::vector<std::uint64_t> counts, std::uint64_t d_max);

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t d_max() const noexcept { return d_max_; }
  std::size_t num_bins() const noexcept { return counts_.size(); }
  std::size_t nonzero_bins() const noexcept;
  std::vector<int> bin_lower_exponents() const;

  bool operator==(const BinnedDistribution&) const = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t d_max_ = 0;
};

/// Empty input is a usage error; a zero degree is a data-quality error.
BinnedDistribution bin_degrees(std::span<const std::uint64_t> degrees);
BinnedDistribution bin_degrees(const DegreeVector& degrees);

struct ProbabilityViews {
  std::vector<double> p;  // per-bin probability
  std::vector<double> P;  // cumulative probability through bin i
  std::vector<double> D;  // differential cumulative probability P[i] - P[i-1]
};

ProbabilityViews probability_views(const BinnedDistribution& b);

/// Zipf-Mandelbrot distribution over the finite support 1..support_max.
class ZipfMandelbrot {
 public:
  /// Requires alpha > 0, delta >= 0, support_max >= 1.
  ZipfMandelbrot(double alpha, double delta, std::uint64_t support_max);

  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return delta_; }
  std::uint64_t support_max() const noexcept { return support_max_; }
  /// sum_{k=1..support_max} (k + delta)^-alpha
  double normalizer() const noexcept { return normalizer_; }

  /// Throws UsageError when d is outside 1..support_max.
  double pdf(std::uint64_t d) const;

  /// Probability mass pooled into each binary bin of 1..support_max.
  std::vector<double> pooled_bins() const;

 private:
  double alpha_;
  double delta_;
  std::uint64_t support_max_;
  double normalizer_;
};

double zm_pdf(std::uint64_t d, double alpha, double delta, std::uint64_t support_max);

struct ZipfMandelbrotFit {
  double alpha = 0.0;
  double delta = 0.0;
  double residual = 0.0;
  double normalizer = 0.0;
  std::uint64_t support_max = 0;
};

/// Search grid for fit_zipf_mandelbrot. Values are tried in ascending order;
/// ties keep the smaller alpha, then the smaller delta.
struct ZipfMandelbrotGrid {
  std::vector<double> alphas;
  std::vector<double> deltas;

  /// alpha in [0.10, 4.00] step 0.01; delta in {0, 0.25, 0.5, 1, 2, 4, 8, 16}.
  static ZipfMandelbrotGrid standard();
};

/// Least squares in log10 of the per-bin probability over nonzero data bins,
/// with the model pooled into the same bins over support 1..d_max.
/// Requires at least 3 nonzero bins.
ZipfMandelbrotFit fit_zipf_mandelbrot(const BinnedDistribution& b,
                                      const ZipfMandelbrotGrid& grid = ZipfMandelbrotGrid::standard());

/// Objective value of one (alpha, delta) point, as evaluated by the fit.
double zm_fit_residual(const BinnedDistribution& b, double alpha, double delta);

/// n inverse-CDF draws over 1..support_max; entry k of the result holds draw k.
/// Deterministic for a given seed on every platform.
DegreeVector sample_zipf_mandelbrot(double alpha, double delta, std::uint64_t support_max,
                                    std::uint64_t n, std::uint64_t seed);

}  // namespace obscorr
