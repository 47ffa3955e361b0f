#pragma once

// Cross-site source overlap and its decay in time.
//
// A telescope capture (SourceSet: source -> packets) is compared against
// outpost observation windows (sets of source ids). Overlap is measured per
// binary brightness bin [2^i, 2^(i+1)); the overlap-vs-time curve of one bin
// is then fitted with the peak-normalized modified Cauchy form
// beta / (beta + |t - t0|^alpha), and for comparison with Cauchy and Gaussian.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "obscorr/degree_vector.hpp"

namespace obscorr {

inline constexpr const char* kRawIdSpace = "raw";

struct SourceSet {
  std::string window_label;  // capture date or month, see month.hpp
  std::string id_space = kRawIdSpace;
  DegreeVector sources;      // source id -> packet count
};

struct OutpostWindow {
  double t = 0.0;            // month coordinate
  std::string label;
  std::string id_space = kRawIdSpace;
  std::vector<std::uint32_t> sources;  // sorted, unique

  static OutpostWindow from_ids(std::string label, std::vector<std::uint32_t> ids,
                                std::string id_space = kRawIdSpace);
};

struct BrightnessOverlap {
  int exponent = 0;
  std::uint64_t matched = 0;
  std::uint64_t eligible = 0;
  double fraction = 0.0;

  bool operator==(const BrightnessOverlap&) const = default;
};

/// One entry per nonempty brightness bin, ascending. UsageError when the two
/// inputs declare different identifier spaces.
std::vector<BrightnessOverlap> overlap_by_brightness(const SourceSet& telescope,
                                                     const OutpostWindow& outpost);

/// min(1, log2(d) / log2(sqrt(n_valid))). Requires d >= 1, n_valid >= 4.
double brightness_law(std::uint64_t d, std::uint64_t n_valid);

struct CurvePoint {
  double t = 0.0;
  double fraction = 0.0;
  std::uint64_t matched = 0;
  std::uint64_t eligible = 0;

  bool operator==(const CurvePoint&) const = default;
};

struct CorrelationCurve {
  double reference_time = 0.0;
  int brightness_exponent = 0;
  std::vector<CurvePoint> points;  // sorted by t
};

/// Throws UsageError when the telescope has no source in the bin, when there
/// are no outpost windows, or on an identifier-space mismatch.
CorrelationCurve temporal_curve(const SourceSet& telescope, int brightness_exponent,
                                std::span<const OutpostWindow> outposts);

double modified_cauchy(double t, double t0, double alpha, double beta);
double cauchy_model(double t, double t0, double gamma);
double gaussian_model(double t, double t0, double sigma);

struct CurveSample {
  double t = 0.0;
  double fraction = 0.0;
};

struct ModifiedCauchyFit {
  double alpha = 0.0;
  double beta = 0.0;
  double peak = 0.0;
  double residual = 0.0;
  double one_month_drop = 0.0;  // 1 / (beta + 1)
};

struct CauchyFit {
  double gamma = 0.0;
  double peak = 0.0;
  double residual = 0.0;
};

struct GaussianFit {
  double sigma = 0.0;
  double peak = 0.0;
  double residual = 0.0;
};

/// alpha in [0.25, 3.00] step 0.05, beta in [0.25, 16.0] step 0.25.
struct ModifiedCauchyGrid {
  std::vector<double> alphas;
  std::vector<double> betas;

  static ModifiedCauchyGrid standard();
};

/// Single-scale grid for the Cauchy gamma and Gaussian sigma: [0.25, 16.0] step 0.25.
std::vector<double> standard_scale_grid();

/// Objective shared by all three fits: sum over samples of
/// |fraction - peak * model(t)|^(1/2), with peak = max fraction.
double modified_cauchy_objective(std::span<const CurveSample> samples, double t0, double alpha,
                                 double beta);

// Grid-search fits. Each requires >= 3 samples (UsageError) and a nonzero
// peak (DegenerateFitError). Ties keep the smaller parameter values.
ModifiedCauchyFit fit_modified_cauchy(std::span<const CurveSample> samples, double t0,
                                      const ModifiedCauchyGrid& grid = ModifiedCauchyGrid::standard());
ModifiedCauchyFit fit_modified_cauchy(const CorrelationCurve& curve);

CauchyFit fit_cauchy(std::span<const CurveSample> samples, double t0,
                     std::span<const double> gammas);
CauchyFit fit_cauchy(const CorrelationCurve& curve);

GaussianFit fit_gaussian(std::span<const CurveSample> samples, double t0,
                         std::span<const double> sigmas);
GaussianFit fit_gaussian(const CorrelationCurve& curve);

struct CurveFits {
  ModifiedCauchyFit modified_cauchy;
  CauchyFit cauchy;
  GaussianFit gaussian;
};

CurveFits fit_all(const CorrelationCurve& curve);

std::vector<CurveSample> samples_of(const CorrelationCurve& curve);

}  // namespace obscorr
