// PCLMULQDQ-backed carry-less multiply-accumulate. Compiled with -mpclmul on
// x86-64 only.

#include "f2lin/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <wmmintrin.h>
#include <emmintrin.h>

namespace f2lin::kern::detail {

void clmul_acc_pclmul(uint64_t* acc, const uint64_t* a, std::size_t na,
                      const uint64_t* b, std::size_t nb) {
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    __m128i va = _mm_cvtsi64_si128((long long)a[i]);
    for (std::size_t j = 0; j < nb; ++j) {
      if (b[j] == 0) continue;
      __m128i vb = _mm_cvtsi64_si128((long long)b[j]);
      __m128i prod = _mm_clmulepi64_si128(va, vb, 0x00);
      acc[i + j] ^= (uint64_t)_mm_cvtsi128_si64(prod);
      acc[i + j + 1] ^= (uint64_t)_mm_cvtsi128_si64(_mm_srli_si128(prod, 8));
    }
  }
}

bool cpu_has_pclmul() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul");
}

}  // namespace f2lin::kern::detail

#else

namespace f2lin::kern::detail {
void clmul_acc_pclmul(uint64_t*, const uint64_t*, std::size_t, const uint64_t*,
                      std::size_t) {}
bool cpu_has_pclmul() { return false; }
}  // namespace f2lin::kern::detail

#endif
