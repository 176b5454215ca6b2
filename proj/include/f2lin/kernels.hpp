#ifndef F2LIN_KERNELS_HPP
#define F2LIN_KERNELS_HPP

#include <cstddef>
#include <cstdint>

// Word-array primitives behind the hot loops: XOR/popcount over packed bit
// vectors, carry-less polynomial multiply-accumulate, and the MT19937 state
// twist. The scalar versions are the reference; SIMD variants are selected
// at runtime and must be bit-identical.

namespace f2lin::kern {

struct Kernels {
  const char* name;

  // dst[i] ^= src[i]
  void (*xor_words)(uint64_t* dst, const uint64_t* src, std::size_t n);

  // total set bits in src[0..n)
  uint64_t (*popcount_words)(const uint64_t* src, std::size_t n);

  // dst[i] ^= src[i]; returns total set bits of dst after the xor
  uint64_t (*xor_popcount)(uint64_t* dst, const uint64_t* src, std::size_t n);

  // acc[0..na+nb) ^= a * b over GF(2)[x], operands packed bit j = coeff x^j
  void (*clmul_acc)(uint64_t* acc, const uint64_t* a, std::size_t na,
                    const uint64_t* b, std::size_t nb);

  // one full 624-word MT19937 twist, in place
  void (*mt_twist)(uint32_t* mt);
};

// Always-available reference implementation.
const Kernels& scalar();

// Currently selected implementation (auto-detected at first use).
const Kernels& active();

// Force a variant: "auto", "scalar", or a detected SIMD variant name.
// Throws std::invalid_argument if the name is unknown or unsupported here.
void select(const char* which);

// Name of the best variant this CPU supports ("scalar" if none).
const char* best_name();

namespace detail {
extern const Kernels scalar_kernels;
// Per-ISA entry points; null on platforms where the ISA does not exist.
void xor_words_avx2(uint64_t*, const uint64_t*, std::size_t);
uint64_t popcount_words_avx2(const uint64_t*, std::size_t);
uint64_t xor_popcount_avx2(uint64_t*, const uint64_t*, std::size_t);
void mt_twist_avx2(uint32_t*);
void clmul_acc_pclmul(uint64_t*, const uint64_t*, std::size_t,
                      const uint64_t*, std::size_t);
bool cpu_has_avx2();
bool cpu_has_pclmul();
}  // namespace detail

}  // namespace f2lin::kern

#endif
