#include "f2lin/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

#include "f2lin/kernels.hpp"

namespace f2lin {

namespace {
constexpr int kWordBits = 64;
inline std::size_t word_count(int nbits) {
  return (static_cast<std::size_t>(nbits) + kWordBits - 1) / kWordBits;
}
}  // namespace

void F2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

F2Poly F2Poly::monomial(int e) {
  if (e < 0) throw std::invalid_argument("monomial exponent must be >= 0");
  F2Poly p;
  p.words_.resize(word_count(e + 1), 0);
  p.words_[e / kWordBits] = 1ull << (e % kWordBits);
  return p;
}

F2Poly F2Poly::from_bits(std::span<const uint8_t> bits) {
  F2Poly p;
  p.words_.resize(word_count(static_cast<int>(bits.size())), 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) p.words_[i / kWordBits] |= 1ull << (i % kWordBits);
  p.trim();
  return p;
}

F2Poly F2Poly::from_words(std::vector<uint64_t> words) {
  F2Poly p;
  p.words_ = std::move(words);
  p.trim();
  return p;
}

F2Poly F2Poly::from_hex(std::string_view hex) {
  F2Poly p;
  int bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    char c = *it;
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument("bad hex digit in polynomial");
    }
    for (int k = 0; k < 4; ++k)
      if (v >> k & 1) p.set_coeff(bit + k, true);
    bit += 4;
  }
  return p;
}

int F2Poly::degree() const {
  if (words_.empty()) return deg_neg_inf;
  int top = static_cast<int>(words_.size()) - 1;
  return top * kWordBits + (kWordBits - 1 - std::countl_zero(words_.back()));
}

std::size_t F2Poly::weight() const {
  return kern::active().popcount_words(words_.data(), words_.size());
}

bool F2Poly::coeff(int e) const {
  if (e < 0) return false;
  std::size_t w = static_cast<std::size_t>(e) / kWordBits;
  if (w >= words_.size()) return false;
  return words_[w] >> (e % kWordBits) & 1u;
}

void F2Poly::set_coeff(int e, bool value) {
  if (e < 0) throw std::invalid_argument("coefficient exponent must be >= 0");
  std::size_t w = static_cast<std::size_t>(e) / kWordBits;
  if (value) {
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= 1ull << (e % kWordBits);
  } else if (w < words_.size()) {
    words_[w] &= ~(1ull << (e % kWordBits));
    trim();
  }
}

std::string F2Poly::to_hex() const {
  if (words_.empty()) return "0";
  std::string out;
  static const char* digits = "0123456789abcdef";
  bool leading = true;
  for (std::size_t wi = words_.size(); wi-- > 0;) {
    for (int nib = 15; nib >= 0; --nib) {
      int v = words_[wi] >> (nib * 4) & 0xf;
      if (leading && v == 0) continue;
      leading = false;
      out.push_back(digits[v]);
    }
  }
  return out;
}

std::string F2Poly::describe() const {
  if (is_zero()) return "deg=-inf w=0 hex=0";
  return "deg=" + std::to_string(degree()) + " w=" + std::to_string(weight()) +
         " hex=" + to_hex();
}

F2Poly& F2Poly::operator^=(const F2Poly& o) {
  if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
  kern::active().xor_words(words_.data(), o.words_.data(), o.words_.size());
  trim();
  return *this;
}

void F2Poly::xor_shifted(const F2Poly& src, int e) {
  if (src.is_zero()) return;
  if (e < 0) throw std::invalid_argument("shift must be >= 0");
  int ws = e / kWordBits;
  int bs = e % kWordBits;
  std::size_t need = src.words_.size() + ws + (bs ? 1 : 0);
  if (need > words_.size()) words_.resize(need, 0);
  if (bs == 0) {
    kern::active().xor_words(words_.data() + ws, src.words_.data(),
                             src.words_.size());
  } else {
    uint64_t carry = 0;
    for (std::size_t i = 0; i < src.words_.size(); ++i) {
      uint64_t w = src.words_[i];
      words_[ws + i] ^= (w << bs) | carry;
      carry = w >> (kWordBits - bs);
    }
    words_[ws + src.words_.size()] ^= carry;
  }
  trim();
}

void F2Poly::xor_mul(const F2Poly& a, const F2Poly& b) {
  if (a.is_zero() || b.is_zero()) return;
  std::size_t need = a.words_.size() + b.words_.size();
  if (need > words_.size()) words_.resize(need, 0);
  kern::active().clmul_acc(words_.data(), a.words_.data(), a.words_.size(),
                           b.words_.data(), b.words_.size());
  trim();
}

F2Poly F2Poly::slice(int lo, int hi) const {
  if (lo < 0 || hi < lo) throw std::invalid_argument("bad slice bounds");
  F2Poly out;
  if (hi == lo) return out;
  out.words_.resize(word_count(hi - lo), 0);
  for (int e = lo; e < hi; ++e)
    if (coeff(e)) out.words_[(e - lo) / kWordBits] |= 1ull << ((e - lo) % 64);
  out.trim();
  return out;
}

bool operator<(const F2Poly& a, const F2Poly& b) {
  if (a.words().size() != b.words().size())
    return a.words().size() < b.words().size();
  for (std::size_t i = a.words().size(); i-- > 0;)
    if (a.words()[i] != b.words()[i]) return a.words()[i] < b.words()[i];
  return false;
}

F2Poly poly_mul(const F2Poly& a, const F2Poly& b) {
  F2Poly out;
  out.xor_mul(a, b);
  return out;
}

std::pair<F2Poly, F2Poly> poly_divrem(const F2Poly& a, const F2Poly& b) {
  if (b.is_zero())
    throw std::invalid_argument("division by the zero polynomial");
  F2Poly q, r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int e = r.degree() - db;
    q.set_coeff(e, true);
    r.xor_shifted(b, e);
  }
  return {std::move(q), std::move(r)};
}

F2Poly poly_mod(const F2Poly& a, const F2Poly& m) {
  return poly_divrem(a, m).second;
}

ExtGcd poly_extgcd(const F2Poly& a, const F2Poly& b) {
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  F2Poly r0 = a, r1 = b;
  F2Poly s0 = F2Poly::one(), s1;
  F2Poly t0, t1 = F2Poly::one();
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    F2Poly s2 = s0;
    s2.xor_mul(q, s1);
    s0 = std::move(s1);
    s1 = std::move(s2);
    F2Poly t2 = t0;
    t2.xor_mul(q, t1);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

F2Poly poly_inverse_mod(const F2Poly& a, const F2Poly& m) {
  if (m.degree() < 1)
    throw std::invalid_argument("modulus must have degree >= 1");
  F2Poly ar = poly_mod(a, m);
  if (ar.is_zero()) throw std::domain_error("element not invertible");
  ExtGcd e = poly_extgcd(ar, m);
  if (e.g != F2Poly::one()) throw std::domain_error("element not invertible");
  return poly_mod(e.s, m);
}

std::size_t poly_weight(const F2Poly& a) { return a.weight(); }

F2Poly berlekamp_massey(std::span<const uint8_t> bits) {
  const std::size_t n = bits.size();
  // rb bit k holds bits[j-k] for the step currently being processed, so the
  // discrepancy is a plain AND/parity against the connection polynomial.
  std::vector<uint64_t> rb(word_count(static_cast<int>(n) + 1), 0);
  F2Poly c = F2Poly::one();
  F2Poly b = F2Poly::one();
  int len = 0;
  int m = 1;
  for (std::size_t j = 0; j < n; ++j) {
    // rb <<= 1; rb |= bits[j]
    uint64_t carry = bits[j] & 1u;
    std::size_t used = j / kWordBits + 1;
    for (std::size_t i = 0; i < used; ++i) {
      uint64_t w = rb[i];
      rb[i] = (w << 1) | carry;
      carry = w >> 63;
    }
    uint64_t acc = 0;
    auto cw = c.words();
    std::size_t lim = std::min(cw.size(), rb.size());
    for (std::size_t i = 0; i < lim; ++i) acc ^= cw[i] & rb[i];
    bool d = std::popcount(acc) & 1;
    if (!d) {
      ++m;
    } else if (2 * len <= static_cast<int>(j)) {
      F2Poly t = c;
      c.xor_shifted(b, m);
      len = static_cast<int>(j) + 1 - len;
      b = std::move(t);
      m = 1;
    } else {
      c.xor_shifted(b, m);
      ++m;
    }
  }
  // Reciprocal at length `len`: the recurrence indexed by increasing lag.
  F2Poly out;
  for (int i = 0; i <= len; ++i)
    if (c.coeff(i)) out.set_coeff(len - i, true);
  return out;
}

}  // namespace f2lin
