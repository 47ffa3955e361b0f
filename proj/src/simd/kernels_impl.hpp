#pragma once

#include <span>

namespace obscorr::simd {

namespace scalar {
double power_decay_sum(std::span<const double> log_terms, double alpha);
double rational_decay_objective(std::span<const double> fractions,
                                std::span<const double> offset_powers, double peak, double beta);
double sqrt_abs_diff_sum(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(OBSCORR_HAVE_AVX2)
namespace avx2 {
double power_decay_sum(std::span<const double> log_terms, double alpha);
double rational_decay_objective(std::span<const double> fractions,
                                std::span<const double> offset_powers, double peak, double beta);
double sqrt_abs_diff_sum(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

}  // namespace obscorr::simd
