// AVX2 variants of the flat bit-vector kernels. Compiled with -mavx2 on
// x86-64 only; dispatch guarantees these run only when the CPU supports it.

#include "f2lin/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

namespace f2lin::kern::detail {

namespace {

// Per-byte popcount via nibble lookup, then horizontal sum with SAD.
inline __m256i popcnt256(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline uint64_t hsum64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return (uint64_t)_mm_cvtsi128_si64(s) +
         (uint64_t)_mm_extract_epi64(s, 1);
}

}  // namespace

void xor_words_avx2(uint64_t* dst, const uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256((const __m256i*)(dst + i));
    __m256i b = _mm256_loadu_si256((const __m256i*)(src + i));
    _mm256_storeu_si256((__m256i*)(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

uint64_t popcount_words_avx2(const uint64_t* src, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256((const __m256i*)(src + i));
    acc = _mm256_add_epi64(acc, popcnt256(v));
  }
  uint64_t total = hsum64(acc);
  for (; i < n; ++i) total += std::popcount(src[i]);
  return total;
}

uint64_t xor_popcount_avx2(uint64_t* dst, const uint64_t* src, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256((const __m256i*)(dst + i));
    __m256i b = _mm256_loadu_si256((const __m256i*)(src + i));
    __m256i x = _mm256_xor_si256(a, b);
    _mm256_storeu_si256((__m256i*)(dst + i), x);
    acc = _mm256_add_epi64(acc, popcnt256(x));
  }
  uint64_t total = hsum64(acc);
  for (; i < n; ++i) {
    dst[i] ^= src[i];
    total += std::popcount(dst[i]);
  }
  return total;
}

void mt_twist_avx2(uint32_t* mt) {
  const __m256i up = _mm256_set1_epi32((int)0x80000000u);
  const __m256i low = _mm256_set1_epi32(0x7fffffff);
  const __m256i mata = _mm256_set1_epi32((int)0x9908b0dfu);
  const __m256i one = _mm256_set1_epi32(1);

  auto step8 = [&](int k, int back) {
    __m256i a = _mm256_loadu_si256((const __m256i*)(mt + k));
    __m256i b = _mm256_loadu_si256((const __m256i*)(mt + k + 1));
    __m256i c = _mm256_loadu_si256((const __m256i*)(mt + k + back));
    __m256i y = _mm256_or_si256(_mm256_and_si256(a, up),
                                _mm256_and_si256(b, low));
    __m256i mag = _mm256_and_si256(
        _mm256_cmpeq_epi32(_mm256_and_si256(y, one), one), mata);
    __m256i r =
        _mm256_xor_si256(_mm256_xor_si256(c, _mm256_srli_epi32(y, 1)), mag);
    _mm256_storeu_si256((__m256i*)(mt + k), r);
  };
  auto step1 = [&](int k, int back) {
    uint32_t y = (mt[k] & 0x80000000u) | (mt[k + 1] & 0x7fffffffu);
    mt[k] = mt[k + back] ^ (y >> 1) ^ ((y & 1u) ? 0x9908b0dfu : 0u);
  };

  int k = 0;
  for (; k + 8 <= 227; k += 8) step8(k, 397);
  for (; k < 227; ++k) step1(k, 397);
  for (; k + 8 <= 623; k += 8) step8(k, -227);
  for (; k < 623; ++k) step1(k, -227);
  uint32_t y = (mt[623] & 0x80000000u) | (mt[0] & 0x7fffffffu);
  mt[623] = mt[396] ^ (y >> 1) ^ ((y & 1u) ? 0x9908b0dfu : 0u);
}

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

}  // namespace f2lin::kern::detail

#else

namespace f2lin::kern::detail {
void xor_words_avx2(uint64_t*, const uint64_t*, std::size_t) {}
uint64_t popcount_words_avx2(const uint64_t*, std::size_t) { return 0; }
uint64_t xor_popcount_avx2(uint64_t*, const uint64_t*, std::size_t) {
  return 0;
}
void mt_twist_avx2(uint32_t*) {}
bool cpu_has_avx2() { return false; }
}  // namespace f2lin::kern::detail

#endif
