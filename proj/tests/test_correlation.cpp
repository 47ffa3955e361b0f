#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "obscorr/correlation.hpp"
#include "obscorr/error.hpp"

using namespace obscorr;

namespace {

constexpr double kT0 = 605.5;  // 2020-06 center

SourceSet telescope_of(std::vector<DegreeEntry> entries, std::string label = "2020-06-16") {
  return {std::move(label), kRawIdSpace, DegreeVector::from_entries(std::move(entries))};
}

std::vector<CurveSample> model_curve(double alpha, double beta) {
  std::vector<CurveSample> s;
  for (int k = -7; k <= 7; ++k) s.push_back({kT0 + k, modified_cauchy(kT0 + k, kT0, alpha, beta)});
  return s;
}

}  // namespace

TEST_CASE("modified Cauchy worked values") {
  CHECK(modified_cauchy(kT0 + 3, kT0, 2.0, 9.0) == 0.5);
  CHECK(modified_cauchy(kT0 - 1, kT0, 1.0, 1.0) == 0.5);
  CHECK(modified_cauchy(kT0, kT0, 1.3, 2.0) == 1.0);
  CHECK_THROWS_AS(modified_cauchy(0, 0, 0.0, 1.0), UsageError);
  CHECK_THROWS_AS(modified_cauchy(0, 0, 1.0, -1.0), UsageError);
}

TEST_CASE("modified Cauchy is symmetric, decreasing, and in (0, 1]") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ua(0.25, 3.0), ub(0.25, 16.0);
  for (int k = 0; k < 100; ++k) {
    const double a = ua(rng), b = ub(rng);
    double prev = 2.0;
    for (double dt = 0.0; dt <= 12.0; dt += 0.5) {
      const double v = modified_cauchy(kT0 + dt, kT0, a, b);
      CHECK(v == modified_cauchy(kT0 - dt, kT0, a, b));
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("alpha 2 with beta gamma^2 is the standard Cauchy form") {
  for (double gamma : {0.5, 1.0, 2.5, 4.0}) {
    for (double dt = 0.0; dt <= 8.0; dt += 0.25) {
      CHECK(std::abs(modified_cauchy(kT0 + dt, kT0, 2.0, gamma * gamma) -
                     cauchy_model(kT0 + dt, kT0, gamma)) <= 1e-12);
    }
  }
}

TEST_CASE("one-month drop") {
  const auto fit = fit_modified_cauchy(model_curve(1.0, 4.0), kT0);
  CHECK(fit.one_month_drop == 1.0 / (fit.beta + 1.0));
  CHECK(fit.one_month_drop > 0.0);
  CHECK(fit.one_month_drop < 1.0);
  // Equal to 1 - model(t0 + 1) up to the rounding of that subtraction.
  const double via_model = 1.0 - modified_cauchy(kT0 + 1, kT0, fit.alpha, fit.beta);
  CHECK(std::abs(fit.one_month_drop - via_model) <= 2 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("brightness law") {
  const std::uint64_t n = std::uint64_t{1} << 30;
  CHECK(brightness_law(1 << 15, n) == 1.0);
  CHECK(brightness_law(2, n) == 1.0 / 15.0);
  CHECK(brightness_law(n, n) == 1.0);
  CHECK(brightness_law(1, n) == 0.0);
  double prev = -1.0;
  for (std::uint64_t d = 1; d < (1u << 17); d = d * 3 / 2 + 1) {
    CHECK(brightness_law(d, n) >= prev);
    prev = brightness_law(d, n);
  }
  CHECK_THROWS_AS(brightness_law(0, n), UsageError);
  CHECK_THROWS_AS(brightness_law(5, 2), UsageError);
}

TEST_CASE("overlap by brightness bin") {
  const auto tel = telescope_of({{10, 1}, {11, 1}, {20, 2}, {21, 3}, {30, 9}});
  const auto out = OutpostWindow::from_ids("2020-06", {10, 21, 21, 30, 999});
  const auto bins = overlap_by_brightness(tel, out);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0] == BrightnessOverlap{0, 1, 2, 0.5});
  CHECK(bins[1] == BrightnessOverlap{1, 1, 2, 0.5});
  CHECK(bins[2] == BrightnessOverlap{3, 1, 1, 1.0});
  CHECK(out.sources == std::vector<std::uint32_t>{10, 21, 30, 999});
  CHECK(out.t == kT0);
}

TEST_CASE("identifier-space mismatch is a usage error") {
  const auto tel = telescope_of({{10, 1}});
  const auto out = OutpostWindow::from_ids("2020-06", {10}, "anon:pp-siphash24-v1:abc");
  CHECK_THROWS_AS(overlap_by_brightness(tel, out), UsageError);
  std::vector<OutpostWindow> ws{out};
  CHECK_THROWS_AS(temporal_curve(tel, 0, ws), UsageError);
}

TEST_CASE("overlap is invariant under consistent relabeling") {
  std::mt19937_64 rng(42);
  std::vector<DegreeEntry> entries;
  std::vector<std::uint32_t> shared;
  for (std::uint32_t i = 0; i < 500; ++i) {
    entries.push_back({i * 3, 1 + rng() % 300});
    if (rng() % 2) shared.push_back(i * 3);
  }
  const auto tel = telescope_of(entries);
  const auto out = OutpostWindow::from_ids("2020-07", shared);
  const auto relabel = [](std::uint32_t x) { return x * 2654435761u + 12345u; };  // odd multiplier: bijective
  for (auto& e : entries) e.index = relabel(e.index);
  for (auto& s : shared) s = relabel(s);
  CHECK(overlap_by_brightness(telescope_of(entries), OutpostWindow::from_ids("2020-07", shared)) ==
        overlap_by_brightness(tel, out));
}

TEST_CASE("temporal curve") {
  const auto tel = telescope_of({{1, 4}, {2, 5}, {3, 1}});
  std::vector<OutpostWindow> ws = {
      OutpostWindow::from_ids("2020-08", {1}),
      OutpostWindow::from_ids("2020-06", {1, 2, 3}),
      OutpostWindow::from_ids("2020-07", {}),
  };
  const auto c = temporal_curve(tel, 2, ws);
  CHECK(c.reference_time == kT0);
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0] == CurvePoint{605.5, 1.0, 2, 2});
  CHECK(c.points[1] == CurvePoint{606.5, 0.0, 0, 2});
  CHECK(c.points[2] == CurvePoint{607.5, 0.5, 1, 2});
  CHECK_THROWS_AS(temporal_curve(tel, 5, ws), UsageError);
  CHECK_THROWS_AS(temporal_curve(tel, 2, {}), UsageError);
}

TEST_CASE("noiseless curves recover grid parameters") {
  const auto grid = ModifiedCauchyGrid::standard();
  std::mt19937_64 rng(43);
  for (int k = 0; k < 30; ++k) {
    const double a = grid.alphas[rng() % grid.alphas.size()];
    const double b = grid.betas[rng() % grid.betas.size()];
    const auto fit = fit_modified_cauchy(model_curve(a, b), kT0);
    CHECK(fit.alpha == a);
    CHECK(fit.beta == b);
    CHECK(fit.residual == 0.0);
    CHECK(fit.peak == 1.0);
  }
}

TEST_CASE("fit is the exhaustive grid argmin") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  ModifiedCauchyGrid grid;
  for (int j = 50; j <= 200; j += 25) grid.alphas.push_back(j / 100.0);
  for (int k = 1; k <= 12; ++k) grid.betas.push_back(k * 0.5);
  for (int rep = 0; rep < 10; ++rep) {
    auto s = model_curve(1.2, 3.0);
    for (auto& x : s) x.fraction = std::max(0.0, x.fraction * 0.6 + noise(rng));
    const auto fit = fit_modified_cauchy(s, kT0, grid);
    for (double a : grid.alphas) {
      for (double b : grid.betas) CHECK(fit.residual <= modified_cauchy_objective(s, kT0, a, b));
    }
    CHECK(fit.residual == modified_cauchy_objective(s, kT0, fit.alpha, fit.beta));
  }
}

TEST_CASE("modified Cauchy beats Cauchy and Gaussian on its own curve") {
  const auto truth = model_curve(1.0, 4.0);
  const auto grid = standard_scale_grid();
  const auto mc = fit_modified_cauchy(truth, kT0);
  CHECK(mc.residual < fit_cauchy(truth, kT0, grid).residual);
  CHECK(mc.residual < fit_gaussian(truth, kT0, grid).residual);
}

TEST_CASE("Cauchy and Gaussian fits recover their own curves") {
  std::vector<CurveSample> c, g;
  for (int k = -7; k <= 7; ++k) {
    c.push_back({kT0 + k, 0.8 * cauchy_model(kT0 + k, kT0, 2.5)});
    g.push_back({kT0 + k, 0.8 * gaussian_model(kT0 + k, kT0, 3.0)});
  }
  const auto grid = standard_scale_grid();
  CHECK(fit_cauchy(c, kT0, grid).gamma == 2.5);
  CHECK(fit_gaussian(g, kT0, grid).sigma == 3.0);
  CHECK(fit_cauchy(c, kT0, grid).peak == 0.8);
}

TEST_CASE("fit input errors") {
  std::vector<CurveSample> two = {{kT0, 1.0}, {kT0 + 1, 0.5}};
  CHECK_THROWS_AS(fit_modified_cauchy(two, kT0), UsageError);
  std::vector<CurveSample> zeros = {{kT0, 0.0}, {kT0 + 1, 0.0}, {kT0 + 2, 0.0}};
  CHECK_THROWS_AS(fit_modified_cauchy(zeros, kT0), DegenerateFitError);
  CHECK_THROWS_AS(fit_cauchy(zeros, kT0, standard_scale_grid()), DegenerateFitError);
}

TEST_CASE("fit_all on a measured curve") {
  std::vector<DegreeEntry> entries;
  for (std::uint32_t i = 0; i < 100; ++i) entries.push_back({i, 8});
  const auto tel = telescope_of(entries);
  std::vector<OutpostWindow> ws;
  for (int m = 1; m <= 12; ++m) {
    std::vector<std::uint32_t> ids;
    const auto n = static_cast<std::uint32_t>(100 * modified_cauchy(599.5 + m, kT0, 1.0, 4.0));
    for (std::uint32_t i = 0; i < n; ++i) ids.push_back(i);
    char label[8];
    std::snprintf(label, sizeof label, "2020-%02d", m);
    ws.push_back(OutpostWindow::from_ids(label, ids));
  }
  const auto fits = fit_all(temporal_curve(tel, 3, ws));
  CHECK(fits.modified_cauchy.alpha == doctest::Approx(1.0).epsilon(0.2));
  CHECK(fits.modified_cauchy.beta == doctest::Approx(4.0).epsilon(0.3));
  CHECK(fits.modified_cauchy.residual < fits.gaussian.residual);
}
