#include "f2lin/kernels.hpp"

#include <bit>

namespace f2lin::kern {
namespace {

void xor_words_scalar(uint64_t* dst, const uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

uint64_t popcount_words_scalar(const uint64_t* src, std::size_t n) {
  uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(src[i]);
  return total;
}

uint64_t xor_popcount_scalar(uint64_t* dst, const uint64_t* src,
                             std::size_t n) {
  uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] ^= src[i];
    total += std::popcount(dst[i]);
  }
  return total;
}

// 64x64 -> 128 carry-less product, branchless shift-and-xor.
inline void clmul64(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi) {
  uint64_t l = 0, h = 0;
  for (int i = 0; i < 64; ++i) {
    uint64_t m = ~((b >> i & 1u) - 1u);  // all-ones when bit i of b is set
    l ^= (a << i) & m;
    if (i) h ^= (a >> (64 - i)) & m;
  }
  lo = l;
  hi = h;
}

void clmul_acc_scalar(uint64_t* acc, const uint64_t* a, std::size_t na,
                      const uint64_t* b, std::size_t nb) {
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (b[j] == 0) continue;
      uint64_t lo, hi;
      clmul64(a[i], b[j], lo, hi);
      acc[i + j] ^= lo;
      acc[i + j + 1] ^= hi;
    }
  }
}

constexpr uint32_t kUpper = 0x80000000u;
constexpr uint32_t kLower = 0x7fffffffu;
constexpr uint32_t kMatrixA = 0x9908b0dfu;

void mt_twist_scalar(uint32_t* mt) {
  uint32_t y;
  int k = 0;
  for (; k < 227; ++k) {
    y = (mt[k] & kUpper) | (mt[k + 1] & kLower);
    mt[k] = mt[k + 397] ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
  }
  for (; k < 623; ++k) {
    y = (mt[k] & kUpper) | (mt[k + 1] & kLower);
    mt[k] = mt[k - 227] ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
  }
  y = (mt[623] & kUpper) | (mt[0] & kLower);
  mt[623] = mt[396] ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
}

}  // namespace

namespace detail {
const Kernels scalar_kernels = {
    "scalar",          xor_words_scalar, popcount_words_scalar,
    xor_popcount_scalar, clmul_acc_scalar, mt_twist_scalar,
};
}  // namespace detail

const Kernels& scalar() { return detail::scalar_kernels; }

}  // namespace f2lin::kern
