#ifndef F2LIN_F2POLY_HPP
#define F2LIN_F2POLY_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace f2lin {

// Polynomial over GF(2), packed 64 coefficients per word (bit j of word
// w[j/64] is the coefficient of z^j). Canonical form: no trailing zero
// words, so the highest set bit is the degree. The zero polynomial has an
// empty word vector and degree deg_neg_inf.
class F2Poly {
 public:
  static constexpr int deg_neg_inf = std::numeric_limits<int>::min();

  F2Poly() = default;

  static F2Poly one() { return monomial(0); }
  static F2Poly monomial(int e);
  // bits[i] is the coefficient of z^i
  static F2Poly from_bits(std::span<const uint8_t> bits);
  static F2Poly from_words(std::vector<uint64_t> words);
  // Plain hex, lowest exponent in the least significant digit.
  static F2Poly from_hex(std::string_view hex);

  bool is_zero() const { return words_.empty(); }
  int degree() const;
  std::size_t weight() const;
  bool coeff(int e) const;
  void set_coeff(int e, bool value);

  std::string to_hex() const;
  // "deg=4 w=3 hex=13" style one-liner for reports
  std::string describe() const;

  std::span<const uint64_t> words() const { return words_; }

  F2Poly& operator^=(const F2Poly& o);
  friend F2Poly operator^(F2Poly a, const F2Poly& b) {
    a ^= b;
    return a;
  }

  // *this ^= src * z^e
  void xor_shifted(const F2Poly& src, int e);
  // *this ^= a * b
  void xor_mul(const F2Poly& a, const F2Poly& b);
  // coefficient slice [lo, hi) re-based to exponent 0
  F2Poly slice(int lo, int hi) const;

  friend bool operator==(const F2Poly&, const F2Poly&) = default;
  // Degree first, then lexicographic on words; a total order for stable
  // report output.
  friend bool operator<(const F2Poly& a, const F2Poly& b);

 private:
  std::vector<uint64_t> words_;
  void trim();
  friend F2Poly poly_mul(const F2Poly&, const F2Poly&);
};

F2Poly poly_mul(const F2Poly& a, const F2Poly& b);

// a = q*b + r with deg r < deg b; throws std::invalid_argument when b = 0.
std::pair<F2Poly, F2Poly> poly_divrem(const F2Poly& a, const F2Poly& b);
F2Poly poly_mod(const F2Poly& a, const F2Poly& m);

struct ExtGcd {
  F2Poly g, s, t;  // s*a + t*b = g
};
// Throws std::invalid_argument when both inputs are zero.
ExtGcd poly_extgcd(const F2Poly& a, const F2Poly& b);

// r with r*a = 1 (mod m), deg r < deg m. Requires deg m >= 1; throws
// std::domain_error when gcd(a, m) != 1.
F2Poly poly_inverse_mod(const F2Poly& a, const F2Poly& m);

std::size_t poly_weight(const F2Poly& a);

// Minimal polynomial C of the shortest linear recurrence satisfied by the
// bit sequence, with the convention sum_j C_j * bits[i+j] = 0 for all valid
// i. The all-zero sequence yields the constant polynomial 1.
F2Poly berlekamp_massey(std::span<const uint8_t> bits);

}  // namespace f2lin

#endif
