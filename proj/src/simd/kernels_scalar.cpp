#include <cmath>

#include "kernels_impl.hpp"

namespace obscorr::simd::scalar {

double power_decay_sum(std::span<const double> log_terms, double alpha) {
  double sum = 0.0;
  for (double l : log_terms) sum += std::exp(-alpha * l);
  return sum;
}

double rational_decay_objective(std::span<const double> fractions,
                                std::span<const double> offset_powers, double peak, double beta) {
  double sum = 0.0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double model = peak * (beta / (beta + offset_powers[k]));
    sum += std::sqrt(std::fabs(fractions[k] - model));
  }
  return sum;
}

double sqrt_abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::sqrt(std::fabs(a[k] - b[k]));
  return sum;
}

}  // namespace obscorr::simd::scalar
