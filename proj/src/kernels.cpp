#include "f2lin/kernels.hpp"

#include <stdexcept>
#include <string>

namespace f2lin::kern {

namespace {

Kernels make_simd() {
  Kernels k = detail::scalar_kernels;
  std::string name;
  if (detail::cpu_has_avx2()) {
    k.xor_words = detail::xor_words_avx2;
    k.popcount_words = detail::popcount_words_avx2;
    k.xor_popcount = detail::xor_popcount_avx2;
    k.mt_twist = detail::mt_twist_avx2;
    name += "avx2";
  }
  if (detail::cpu_has_pclmul()) {
    k.clmul_acc = detail::clmul_acc_pclmul;
    name += name.empty() ? "pclmul" : "+pclmul";
  }
  static std::string stored;
  if (name.empty()) {
    k.name = "scalar";
  } else {
    stored = name;
    k.name = stored.c_str();
  }
  return k;
}

const Kernels& simd_kernels() {
  static const Kernels k = make_simd();
  return k;
}

const Kernels*& current() {
  static const Kernels* cur = &simd_kernels();
  return cur;
}

}  // namespace

const Kernels& active() { return *current(); }

const char* best_name() { return simd_kernels().name; }

void select(const char* which) {
  std::string w = which ? which : "auto";
  if (w == "auto") {
    current() = &simd_kernels();
  } else if (w == "scalar") {
    current() = &detail::scalar_kernels;
  } else if (w == simd_kernels().name) {
    current() = &simd_kernels();
  } else {
    throw std::invalid_argument("unknown or unsupported kernel variant: " + w);
  }
}

}  // namespace f2lin::kern
