#include <doctest.h>

#include <cmath>
#include <random>

#include "obscorr/simd/kernels.hpp"

using namespace obscorr::simd;

namespace {

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("scalar kernels agree with extended-precision references") {
  const auto& k = *kernels_for(Isa::scalar);
  std::mt19937_64 rng(81);
  for (std::size_t n : {0u, 1u, 7u, 64u, 1000u}) {
    const auto logs = uniform(rng, n, 0.0, 14.0);
    long double ref = 0.0L;
    for (double l : logs) ref += std::exp(-1.7L * l);
    CHECK(close(k.power_decay_sum(logs, 1.7), static_cast<double>(ref), 1e-13));

    const auto f = uniform(rng, n, 0.0, 1.0);
    const auto u = uniform(rng, n, 0.0, 50.0);
    long double obj = 0.0L;
    for (std::size_t i = 0; i < n; ++i) obj += std::sqrt(std::abs(f[i] - 0.9L * (3.0L / (3.0L + u[i]))));
    CHECK(close(k.rational_decay_objective(f, u, 0.9, 3.0), static_cast<double>(obj), 1e-13));

    long double d = 0.0L;
    for (std::size_t i = 0; i < n; ++i) d += std::sqrt(std::abs(f[i] - static_cast<long double>(u[i])));
    CHECK(close(k.sqrt_abs_diff_sum(f, u), static_cast<double>(d), 1e-13));
  }
}

TEST_CASE("every available ISA matches the scalar reference") {
  const auto& ref = *kernels_for(Isa::scalar);
  std::mt19937_64 rng(82);
  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = *kernels_for(isa);
    CHECK(k.isa == isa);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = rng() % 300;
      const double alpha = 0.1 + (rng() % 390) / 100.0;
      const auto logs = uniform(rng, n, 0.0, 17.0);
      CHECK(close(k.power_decay_sum(logs, alpha), ref.power_decay_sum(logs, alpha), 1e-13));

      const auto f = uniform(rng, n, 0.0, 1.0);
      const auto u = uniform(rng, n, 0.0, 100.0);
      CHECK(close(k.rational_decay_objective(f, u, 0.7, 2.25), ref.rational_decay_objective(f, u, 0.7, 2.25),
                  1e-13));
      CHECK(close(k.sqrt_abs_diff_sum(f, u), ref.sqrt_abs_diff_sum(f, u), 1e-13));
    }
  }
}

TEST_CASE("rational objective is exactly zero on an exact model") {
  std::mt19937_64 rng(83);
  for (Isa isa : available_isas()) {
    const auto& k = *kernels_for(isa);
    const auto u = uniform(rng, 37, 0.0, 20.0);
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) f[i] = 4.0 / (4.0 + u[i]);
    CHECK(k.rational_decay_objective(f, u, 1.0, 4.0) == 0.0);
  }
}

TEST_CASE("power decay handles extreme exponents") {
  for (Isa isa : available_isas()) {
    const auto& k = *kernels_for(isa);
    const std::vector<double> logs(19, 300.0);  // exp(-4 * 300) underflows to zero
    CHECK(k.power_decay_sum(logs, 4.0) == 0.0);
    const std::vector<double> zeros(19, 0.0);
    CHECK(k.power_decay_sum(zeros, 2.0) == 19.0);
  }
}

TEST_CASE("dispatch") {
  CHECK(kernels_for(Isa::scalar) != nullptr);
  CHECK(isa_name(Isa::avx2) == "avx2");
  const auto& active = active_kernels();
  const auto isas = available_isas();
  CHECK(std::find(isas.begin(), isas.end(), active.isa) != isas.end());
}
