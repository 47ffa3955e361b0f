#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "obscorr/simd/kernels.hpp"

namespace obscorr::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::power_decay_sum,
                              &scalar::rational_decay_objective, &scalar::sqrt_abs_diff_sum};

#if defined(OBSCORR_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::power_decay_sum, &avx2::rational_decay_objective,
                            &avx2::sqrt_abs_diff_sum};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() {
  const char* forced = std::getenv("OBSCORR_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return kScalar;
#if defined(OBSCORR_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
#if defined(OBSCORR_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(Isa::avx2);
#endif
  return out;
}

const KernelTable* kernels_for(Isa isa) {
  if (isa == Isa::scalar) return &kScalar;
#if defined(OBSCORR_HAVE_AVX2)
  if (isa == Isa::avx2 && cpu_has_avx2()) return &kAvx2;
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace obscorr::simd
