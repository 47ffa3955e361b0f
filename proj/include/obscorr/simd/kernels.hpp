#pragma once

// Data-parallel inner loops of the fitting code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA variant. active_kernels() picks the widest variant
// the running CPU supports; set OBSCORR_SIMD=scalar to force the reference
// path. Variants agree to within summation-order rounding (and, for
// power_decay_sum, the vector exp's ~1 ulp error per term).

#include <span>
#include <string_view>
#include <vector>

namespace obscorr::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;

  /// sum_k exp(-alpha * log_terms[k]), i.e. sum_k x_k^-alpha given log x_k.
  double (*power_decay_sum)(std::span<const double> log_terms, double alpha);

  /// sum_k sqrt|fractions[k] - peak * beta / (beta + offset_powers[k])|.
  /// Both spans have equal length.
  double (*rational_decay_objective)(std::span<const double> fractions,
                                     std::span<const double> offset_powers, double peak,
                                     double beta);

  /// sum_k sqrt|a[k] - b[k]|. Both spans have equal length.
  double (*sqrt_abs_diff_sum)(std::span<const double> a, std::span<const double> b);
};

std::string_view isa_name(Isa isa) noexcept;

/// ISAs compiled into this build that the running CPU can execute.
std::vector<Isa> available_isas();

/// nullptr when `isa` is unavailable.
const KernelTable* kernels_for(Isa isa);

const KernelTable& active_kernels();

}  // namespace obscorr::simd
