#include "f2lin/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace f2lin {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return bits_[r * wpr_ + c / 64] >> (c % 64) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  uint64_t& w = bits_[r * wpr_ + c / 64];
  if (v)
    w |= 1ull << (c % 64);
  else
    w &= ~(1ull << (c % 64));
}

std::size_t BitMatrix::rank() const {
  std::vector<uint64_t> m = bits_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t piv = rows_;
    for (std::size_t r = rank; r < rows_; ++r)
      if (m[r * wpr_ + c / 64] >> (c % 64) & 1u) {
        piv = r;
        break;
      }
    if (piv == rows_) continue;
    for (std::size_t k = 0; k < wpr_; ++k)
      std::swap(m[rank * wpr_ + k], m[piv * wpr_ + k]);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank) continue;
      if (m[r * wpr_ + c / 64] >> (c % 64) & 1u)
        for (std::size_t k = 0; k < wpr_; ++k)
          m[r * wpr_ + k] ^= m[rank * wpr_ + k];
    }
    ++rank;
  }
  return rank;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

std::vector<std::vector<uint64_t>> BitMatrix::null_space() const {
  // Row-reduce a copy, track pivot columns, then read one basis vector per
  // free column.
  std::vector<uint64_t> m = bits_;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t piv = rows_;
    for (std::size_t r = rank; r < rows_; ++r)
      if (m[r * wpr_ + c / 64] >> (c % 64) & 1u) {
        piv = r;
        break;
      }
    if (piv == rows_) continue;
    for (std::size_t k = 0; k < wpr_; ++k)
      std::swap(m[rank * wpr_ + k], m[piv * wpr_ + k]);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank) continue;
      if (m[r * wpr_ + c / 64] >> (c % 64) & 1u)
        for (std::size_t k = 0; k < wpr_; ++k)
          m[r * wpr_ + k] ^= m[rank * wpr_ + k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<uint64_t>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint64_t> vec(wpr_, 0);
    vec[f / 64] |= 1ull << (f % 64);
    for (std::size_t r = 0; r < rank; ++r)
      if (m[r * wpr_ + f / 64] >> (f % 64) & 1u)
        vec[pivot_col[r] / 64] |= 1ull << (pivot_col[r] % 64);
    basis.push_back(std::move(vec));
  }
  return basis;
}

namespace {

uint64_t dense_step(const SmallDenseSpec& d, uint64_t x) {
  uint64_t nx = 0;
  for (int i = 0; i < d.p; ++i)
    nx |= static_cast<uint64_t>(std::popcount(d.a_rows[i] & x) & 1) << i;
  return nx;
}

uint32_t dense_output(const SmallDenseSpec& d, uint64_t x) {
  uint32_t y = 0;
  for (int l = 0; l < d.w; ++l)
    y |= static_cast<uint32_t>(std::popcount(d.b_rows[l] & x) & 1)
         << (d.w - 1 - l);
  return y;
}

}  // namespace

BitMatrix output_map_matrix(const SmallDenseSpec& d, int k, int v) {
  if (d.p > 24) throw std::invalid_argument("oracle limited to p <= 24");
  if (v < 1 || v > d.w) throw std::invalid_argument("v out of range");
  BitMatrix m(static_cast<std::size_t>(k) * v, d.p);
  for (int s = 0; s < d.p; ++s) {
    uint64_t x = 1ull << s;
    for (int i = 0; i < k; ++i) {
      uint32_t y = dense_output(d, x);
      for (int l = 0; l < v; ++l)
        if (y >> (d.w - 1 - l) & 1u)
          m.set(static_cast<std::size_t>(i) * v + l, s, true);
      x = dense_step(d, x);
    }
  }
  return m;
}

int brute_k_v(const SmallDenseSpec& d, int v) {
  int k = 0;
  for (;;) {
    if (static_cast<long long>(k + 1) * v > d.p) return k;
    BitMatrix m = output_map_matrix(d, k + 1, v);
    if (m.rank() != static_cast<std::size_t>(k + 1) * v) return k;
    ++k;
  }
}

int brute_k_v_counting(const SmallDenseSpec& d, int v) {
  if (d.p > 12) throw std::invalid_argument("cell counting limited to p <= 12");
  auto equidistributed = [&](int k) {
    if (static_cast<long long>(k) * v > d.p) return false;
    std::vector<uint32_t> cells(1ull << (k * v), 0);
    for (uint64_t x0 = 0; x0 < (1ull << d.p); ++x0) {
      uint64_t idx = 0;
      uint64_t x = x0;
      for (int i = 0; i < k; ++i) {
        idx = (idx << v) | (dense_output(d, x) >> (d.w - v));
        x = dense_step(d, x);
      }
      ++cells[idx];
    }
    uint32_t expect = 1u << (d.p - k * v);
    return std::all_of(cells.begin(), cells.end(),
                       [&](uint32_t c) { return c == expect; });
  };
  int k = 0;
  while (equidistributed(k + 1)) ++k;
  return k;
}

LinearRelation codeword_to_relation(const std::vector<uint64_t>& code, int k,
                                    int v) {
  LinearRelation rel;
  rel.v = v;
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < v; ++l) {
      std::size_t pos = static_cast<std::size_t>(i) * v + l;
      if (code[pos / 64] >> (pos % 64) & 1u) rel.terms.emplace_back(i, l);
    }
  if (rel.terms.empty()) throw std::invalid_argument("zero codeword");
  return rel;
}

std::optional<std::size_t> dual_code_min_weight(const SmallDenseSpec& d, int k,
                                                int v) {
  BitMatrix phi = output_map_matrix(d, k, v);
  auto basis = phi.transposed().null_space();
  std::size_t dim = basis.size();
  if (dim == 0) return std::nullopt;
  if (dim > 24) throw std::invalid_argument("dual code dimension too large");

  // Gray walk over the span, one XOR per step.
  std::size_t words = basis[0].size();
  std::vector<uint64_t> running(words, 0);
  std::size_t best = ~std::size_t{0};
  for (uint64_t s = 1; s < (1ull << dim); ++s) {
    int flip = std::countr_zero(s);
    uint64_t wsum = 0;
    for (std::size_t i = 0; i < words; ++i) {
      running[i] ^= basis[flip][i];
      wsum += std::popcount(running[i]);
    }
    best = std::min(best, static_cast<std::size_t>(wsum));
  }
  return best;
}

std::optional<LinearRelation> dual_code_min_weight_relation(
    const SmallDenseSpec& d, int k, int v) {
  BitMatrix phi = output_map_matrix(d, k, v);
  auto basis = phi.transposed().null_space();
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 24)
    throw std::invalid_argument("dual code dimension too large");
  std::size_t words = basis[0].size();
  std::vector<uint64_t> running(words, 0), best_vec;
  std::size_t best = ~std::size_t{0};
  for (uint64_t s = 1; s < (1ull << basis.size()); ++s) {
    int flip = std::countr_zero(s);
    uint64_t wsum = 0;
    for (std::size_t i = 0; i < words; ++i) {
      running[i] ^= basis[flip][i];
      wsum += std::popcount(running[i]);
    }
    if (wsum < best) {
      best = wsum;
      best_vec = running;
    }
  }
  return codeword_to_relation(best_vec, k, v);
}

SmallDenseSpec random_maximal_small_dense(std::mt19937_64& rng, int p, int w) {
  if (p < 2 || p > 20) throw std::invalid_argument("p must be in [2,20]");
  if (w < 1 || w > std::min(p, 32))
    throw std::invalid_argument("w out of range");
  uint64_t mask = (1ull << p) - 1;
  for (;;) {
    SmallDenseSpec d;
    d.p = p;
    d.w = w;
    d.a_rows.resize(p);
    for (auto& r : d.a_rows) r = rng() & mask;
    d.b_rows.resize(w);
    for (auto& r : d.b_rows) r = rng() & mask;
    if (d.b_rows[0] == 0) d.b_rows[0] = 1;  // bit-0 stream must be alive

    GeneratorSpec spec;
    try {
      spec = GeneratorSpec::small(d);
    } catch (const std::invalid_argument&) {
      continue;  // singular transition
    }

    // Cheap reject first: minimal polynomial must reach degree p.
    GeneratorState g(spec, Seed::raw(std::vector<uint8_t>(p, 1)));
    auto bits = bit_stream(g, 0, 2 * static_cast<std::size_t>(p));
    if (berlekamp_massey(bits).degree() != p) continue;

    // Then the full orbit: first return to the start must be step 2^p - 1.
    uint64_t x0 = 1, x = dense_step(d, 1);
    uint64_t period = 1;
    while (x != x0 && period <= mask) {
      x = dense_step(d, x);
      ++period;
    }
    if (period != mask) continue;
    return d;
  }
}

}  // namespace f2lin
