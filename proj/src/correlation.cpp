#include "obscorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "obscorr/distributions.hpp"
#include "obscorr/error.hpp"
#include "obscorr/month.hpp"
#include "obscorr/simd/kernels.hpp"

namespace obscorr {

namespace {

void check_spaces(const SourceSet& telescope, const OutpostWindow& outpost) {
  if (telescope.id_space != outpost.id_space) {
    throw UsageError("identifier-space mismatch: telescope '" + telescope.id_space +
                     "' vs outpost " + outpost.label + " '" + outpost.id_space + "'");
  }
}

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

struct PreparedSamples {
  std::vector<double> fractions;
  std::vector<double> offsets;  // |t - t0|
  double peak = 0.0;
};

PreparedSamples prepare(std::span<const CurveSample> samples, double t0) {
  if (samples.size() < 3) {
    throw UsageError("curve fit needs at least 3 points, got " + std::to_string(samples.size()));
  }
  PreparedSamples p;
  for (const auto& s : samples) {
    if (!std::isfinite(s.fraction) || !std::isfinite(s.t)) {
      throw UsageError("curve sample is not finite");
    }
    p.fractions.push_back(s.fraction);
    p.offsets.push_back(std::fabs(s.t - t0));
    p.peak = std::max(p.peak, s.fraction);
  }
  if (!(p.peak > 0.0)) throw DegenerateFitError("correlation curve is zero everywhere");
  return p;
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

OutpostWindow OutpostWindow::from_ids(std::string label, std::vector<std::uint32_t> ids,
                                      std::string id_space) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  OutpostWindow w;
  w.t = month_coordinate(label);
  w.label = std::move(label);
  w.id_space = std::move(id_space);
  w.sources = std::move(ids);
  return w;
}

std::vector<BrightnessOverlap> overlap_by_brightness(const SourceSet& telescope,
                                                     const OutpostWindow& outpost) {
  check_spaces(telescope, outpost);
  std::map<int, BrightnessOverlap> bins;
  for (const auto& e : telescope.sources.entries()) {
    auto& bin = bins[degree_bin(e.value)];
    bin.exponent = degree_bin(e.value);
    ++bin.eligible;
    if (contains(outpost.sources, e.index)) ++bin.matched;
  }
  std::vector<BrightnessOverlap> out;
  for (auto& [i, bin] : bins) {
    bin.fraction = static_cast<double>(bin.matched) / static_cast<double>(bin.eligible);
    out.push_back(bin);
  }
  return out;
}

double brightness_law(std::uint64_t d, std::uint64_t n_valid) {
  if (d < 1) throw UsageError("brightness_law needs d >= 1");
  if (n_valid < 4) throw UsageError("brightness_law needs n_valid >= 4");
  const double threshold_log2 = 0.5 * std::log2(static_cast<double>(n_valid));
  return std::min(1.0, std::log2(static_cast<double>(d)) / threshold_log2);
}

CorrelationCurve temporal_curve(const SourceSet& telescope, int brightness_exponent,
                                std::span<const OutpostWindow> outposts) {
  if (outposts.empty()) throw UsageError("temporal curve needs at least one outpost window");
  std::vector<std::uint32_t> eligible;
  for (const auto& e : telescope.sources.entries()) {
    if (degree_bin(e.value) == brightness_exponent) eligible.push_back(e.index);
  }
  if (eligible.empty()) {
    throw UsageError("no telescope sources in brightness bin " +
                     std::to_string(brightness_exponent) + " [2^" +
                     std::to_string(brightness_exponent) + ", 2^" +
                     std::to_string(brightness_exponent + 1) + ")");
  }

  CorrelationCurve curve;
  curve.reference_time = month_coordinate(telescope.window_label);
  curve.brightness_exponent = brightness_exponent;
  for (const auto& w : outposts) {
    check_spaces(telescope, w);
    CurvePoint p;
    p.t = w.t;
    p.eligible = eligible.size();
    for (auto id : eligible) {
      if (contains(w.sources, id)) ++p.matched;
    }
    p.fraction = static_cast<double>(p.matched) / static_cast<double>(p.eligible);
    curve.points.push_back(p);
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return a.t < b.t; });
  return curve;
}

double modified_cauchy(double t, double t0, double alpha, double beta) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  return beta / (beta + std::pow(std::fabs(t - t0), alpha));
}

double cauchy_model(double t, double t0, double gamma) {
  check_positive(gamma, "gamma");
  const double dt = t - t0;
  const double g2 = gamma * gamma;
  return g2 / (g2 + dt * dt);
}

double gaussian_model(double t, double t0, double sigma) {
  check_positive(sigma, "sigma");
  const double dt = t - t0;
  return std::exp(-(dt * dt) / (2.0 * sigma * sigma));
}

ModifiedCauchyGrid ModifiedCauchyGrid::standard() {
  ModifiedCauchyGrid g;
  for (int j = 25; j <= 300; j += 5) g.alphas.push_back(j / 100.0);
  for (int k = 1; k <= 64; ++k) g.betas.push_back(k * 0.25);
  return g;
}

std::vector<double> standard_scale_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 64; ++k) g.push_back(k * 0.25);
  return g;
}

double modified_cauchy_objective(std::span<const CurveSample> samples, double t0, double alpha,
                                 double beta) {
  check_positive(alpha, "alpha");
  check_positive(beta, "beta");
  const auto p = prepare(samples, t0);
  std::vector<double> u(p.offsets.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::pow(p.offsets[k], alpha);
  return simd::active_kernels().rational_decay_objective(p.fractions, u, p.peak, beta);
}

ModifiedCauchyFit fit_modified_cauchy(std::span<const CurveSample> samples, double t0,
                                      const ModifiedCauchyGrid& grid) {
  if (grid.alphas.empty() || grid.betas.empty()) throw UsageError("empty fit grid");
  for (double a : grid.alphas) check_positive(a, "alpha");
  for (double b : grid.betas) check_positive(b, "beta");
  const auto p = prepare(samples, t0);
  const auto& kernels = simd::active_kernels();

  ModifiedCauchyFit best;
  bool have = false;
  std::vector<double> u(p.offsets.size());
  for (double alpha : grid.alphas) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::pow(p.offsets[k], alpha);
    for (double beta : grid.betas) {
      const double r = kernels.rational_decay_objective(p.fractions, u, p.peak, beta);
      if (!have || r < best.residual) {
        best = {alpha, beta, p.peak, r, 1.0 / (beta + 1.0)};
        have = true;
      }
    }
  }
  return best;
}

CauchyFit fit_cauchy(std::span<const CurveSample> samples, double t0,
                     std::span<const double> gammas) {
  if (gammas.empty()) throw UsageError("empty fit grid");
  const auto p = prepare(samples, t0);
  const auto& kernels = simd::active_kernels();
  std::vector<double> u(p.offsets.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = p.offsets[k] * p.offsets[k];

  CauchyFit best;
  bool have = false;
  for (double gamma : gammas) {
    check_positive(gamma, "gamma");
    const double r = kernels.rational_decay_objective(p.fractions, u, p.peak, gamma * gamma);
    if (!have || r < best.residual) {
      best = {gamma, p.peak, r};
      have = true;
    }
  }
  return best;
}

GaussianFit fit_gaussian(std::span<const CurveSample> samples, double t0,
                         std::span<const double> sigmas) {
  if (sigmas.empty()) throw UsageError("empty fit grid");
  const auto p = prepare(samples, t0);
  const auto& kernels = simd::active_kernels();
  std::vector<double> model(p.offsets.size());

  GaussianFit best;
  bool have = false;
  for (double sigma : sigmas) {
    check_positive(sigma, "sigma");
    for (std::size_t k = 0; k < model.size(); ++k) {
      model[k] = p.peak * std::exp(-(p.offsets[k] * p.offsets[k]) / (2.0 * sigma * sigma));
    }
    const double r = kernels.sqrt_abs_diff_sum(p.fractions, model);
    if (!have || r < best.residual) {
      best = {sigma, p.peak, r};
      have = true;
    }
  }
  return best;
}

std::vector<CurveSample> samples_of(const CorrelationCurve& curve) {
  std::vector<CurveSample> out;
  out.reserve(curve.points.size());
  for (const auto& p : curve.points) out.push_back({p.t, p.fraction});
  return out;
}

ModifiedCauchyFit fit_modified_cauchy(const CorrelationCurve& curve) {
  return fit_modified_cauchy(samples_of(curve), curve.reference_time);
}

CauchyFit fit_cauchy(const CorrelationCurve& curve) {
  return fit_cauchy(samples_of(curve), curve.reference_time, standard_scale_grid());
}

GaussianFit fit_gaussian(const CorrelationCurve& curve) {
  return fit_gaussian(samples_of(curve), curve.reference_time, standard_scale_grid());
}

CurveFits fit_all(const CorrelationCurve& curve) {
  return {fit_modified_cauchy(curve), fit_cauchy(curve), fit_gaussian(curve)};
}

}  // namespace obscorr
