#include "f2lin/generator.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "f2lin/kernels.hpp"

namespace f2lin {

namespace {

constexpr uint32_t kUpper = 0x80000000u;
constexpr uint32_t kLower = 0x7fffffffu;
constexpr uint32_t kMatrixA = 0x9908b0dfu;
constexpr uint32_t kMemtMask1 = 0xb219beabu;  // lag 473
constexpr uint32_t kMemtMask2 = 0x56bde52au;  // lag 588
constexpr int kN = 624;

inline uint32_t twist(uint32_t upper_word, uint32_t lower_word) {
  uint32_t y = (upper_word & kUpper) | (lower_word & kLower);
  return (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
}

inline uint32_t memt_output(uint32_t m_cur, uint32_t m_l473, uint32_t m_l588) {
  uint32_t z = m_cur;
  z ^= m_l473 & kMemtMask1;
  z ^= z << 8;
  z ^= z << 14;
  return z ^ (m_l588 & kMemtMask2);
}

bool dense_invertible(const SmallDenseSpec& d) {
  std::vector<uint64_t> rows(d.a_rows);
  int rank = 0;
  for (int col = 0; col < d.p; ++col) {
    int piv = -1;
    for (int r = rank; r < d.p; ++r)
      if (rows[r] >> col & 1u) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < d.p; ++r)
      if (r != rank && (rows[r] >> col & 1u)) rows[r] ^= rows[rank];
    ++rank;
  }
  return true;
}

}  // namespace

uint32_t mt_temper(uint32_t y) {
  y ^= y >> 11;
  y ^= (y << 7) & 0x9d2c5680u;
  y ^= (y << 15) & 0xefc60000u;
  y ^= y >> 18;
  return y;
}

uint32_t mt_untemper(uint32_t y) {
  y ^= y >> 18;
  y ^= (y << 15) & 0xefc60000u;
  uint32_t x = y;
  for (int i = 0; i < 4; ++i) x = y ^ ((x << 7) & 0x9d2c5680u);
  y = x;
  x = y;
  for (int i = 0; i < 2; ++i) x = y ^ (x >> 11);
  return x;
}

GeneratorSpec GeneratorSpec::mt19937() {
  GeneratorSpec s;
  s.kind = GenKind::mt19937;
  s.p = 19937;
  s.w = 32;
  return s;
}

GeneratorSpec GeneratorSpec::memt19937ii() {
  GeneratorSpec s;
  s.kind = GenKind::memt19937ii;
  s.p = 19937;
  s.w = 32;
  return s;
}

GeneratorSpec GeneratorSpec::small(SmallDenseSpec d) {
  if (d.p < 1 || d.p > 64) throw std::invalid_argument("p must be in [1,64]");
  if (d.w < 1 || d.w > 32) throw std::invalid_argument("w must be in [1,32]");
  if (static_cast<int>(d.a_rows.size()) != d.p)
    throw std::invalid_argument("A must have p rows");
  if (static_cast<int>(d.b_rows.size()) != d.w)
    throw std::invalid_argument("B must have w rows");
  uint64_t mask = d.p == 64 ? ~0ull : (1ull << d.p) - 1;
  for (uint64_t r : d.a_rows)
    if (r & ~mask) throw std::invalid_argument("A row exceeds p columns");
  for (uint64_t r : d.b_rows)
    if (r & ~mask) throw std::invalid_argument("B row exceeds p columns");
  if (!dense_invertible(d))
    throw std::invalid_argument("transition matrix is singular");
  GeneratorSpec s;
  s.kind = GenKind::small_dense;
  s.p = d.p;
  s.w = d.w;
  s.dense = std::move(d);
  return s;
}

GeneratorSpec GeneratorSpec::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator config: " + path);
  nlohmann::json j;
  in >> j;
  SmallDenseSpec d;
  d.p = j.at("p").get<int>();
  d.w = j.at("w").get<int>();
  for (const auto& row : j.at("A"))
    d.a_rows.push_back(std::stoull(row.get<std::string>(), nullptr, 16));
  for (const auto& row : j.at("B"))
    d.b_rows.push_back(std::stoull(row.get<std::string>(), nullptr, 16));
  return small(std::move(d));
}

GeneratorSpec GeneratorSpec::by_name(const std::string& name) {
  if (name == "mt19937") return mt19937();
  if (name == "memt19937ii") return memt19937ii();
  if (name.rfind("smalldense:", 0) == 0)
    return from_config_file(name.substr(11));
  throw std::invalid_argument(
      "unknown generator '" + name +
      "' (expected mt19937, memt19937ii or smalldense:<config.json>)");
}

std::string GeneratorSpec::name() const {
  switch (kind) {
    case GenKind::mt19937:
      return "mt19937";
    case GenKind::memt19937ii:
      return "memt19937ii";
    case GenKind::small_dense:
      return "smalldense(p=" + std::to_string(p) + ",w=" + std::to_string(w) +
             ")";
  }
  return "?";
}

void GeneratorState::seed_mt_array(uint32_t s) {
  mt_[0] = s;
  for (uint32_t i = 1; i < kN; ++i)
    mt_[i] = 1812433253u * (mt_[i - 1] ^ (mt_[i - 1] >> 30)) + i;
  pos_ = 0;
}

GeneratorState::GeneratorState(const GeneratorSpec& spec, const Seed& seed)
    : spec_(spec) {
  if (spec_.kind == GenKind::small_dense) {
    if (seed.kind == Seed::Kind::raw_state) {
      if (static_cast<int>(seed.raw_bits.size()) != spec_.p)
        throw std::invalid_argument("raw state must have exactly p bits");
      uint64_t x = 0;
      for (int i = 0; i < spec_.p; ++i)
        if (seed.raw_bits[i] & 1) x |= 1ull << i;
      if (x == 0) throw std::invalid_argument("raw state must be nonzero");
      dense_x_ = x;
    } else {
      // Expand the integer seed with the standard initialization recurrence
      // and take state bits from successive words until nonzero.
      uint64_t mask = spec_.p == 64 ? ~0ull : (1ull << spec_.p) - 1;
      uint32_t v = seed.value;
      uint32_t i = 1;
      uint64_t x = 0;
      do {
        uint64_t lo = v;
        v = 1812433253u * (v ^ (v >> 30)) + i++;
        uint64_t hi = v;
        v = 1812433253u * (v ^ (v >> 30)) + i++;
        x = ((hi << 32) | lo) & mask;
      } while (x == 0);
      dense_x_ = x;
    }
    return;
  }
  if (seed.kind == Seed::Kind::raw_state) {
    if (static_cast<int>(seed.raw_bits.size()) != spec_.p)
      throw std::invalid_argument("raw state must have exactly p bits");
    bool nonzero = false;
    for (uint8_t b : seed.raw_bits) nonzero |= (b & 1) != 0;
    if (!nonzero) throw std::invalid_argument("raw state must be nonzero");
    // Bit 0 is the retained (top) bit of the oldest word; bits 1.. fill the
    // newer words MSB-first.
    mt_.fill(0);
    mt_[0] = (seed.raw_bits[0] & 1) ? kUpper : 0u;
    std::size_t idx = 1;
    for (int word = 1; word < kN; ++word)
      for (int bit = 0; bit < 32; ++bit, ++idx)
        if (seed.raw_bits[idx] & 1) mt_[word] |= 1u << (31 - bit);
    pos_ = 0;
  } else {
    seed_mt_array(seed.value);
  }
}

uint32_t GeneratorState::step_mt_word() {
  // Window invariant: mt_[(pos_+k) % 624] is the word generated 623-k steps
  // ago; mt_[pos_] is the oldest.
  uint32_t oldest = mt_[pos_];
  int next = pos_ + 1 == kN ? 0 : pos_ + 1;
  int mid = pos_ + 397 >= kN ? pos_ + 397 - kN : pos_ + 397;
  uint32_t fresh = mt_[mid] ^ twist(oldest, mt_[next]);
  mt_[pos_] = fresh;
  pos_ = next;
  return fresh;
}

uint32_t GeneratorState::step_and_output() {
  ++steps_;
  switch (spec_.kind) {
    case GenKind::mt19937:
      return mt_temper(step_mt_word());
    case GenKind::memt19937ii: {
      uint32_t fresh = step_mt_word();
      int i473 = pos_ + 150 >= kN ? pos_ + 150 - kN : pos_ + 150;
      int i588 = pos_ + 35 >= kN ? pos_ + 35 - kN : pos_ + 35;
      return memt_output(fresh, mt_[i473], mt_[i588]);
    }
    case GenKind::small_dense: {
      uint64_t x = dense_x_;
      uint64_t nx = 0;
      for (int i = 0; i < spec_.p; ++i)
        nx |= static_cast<uint64_t>(std::popcount(spec_.dense.a_rows[i] & x) &
                                    1)
              << i;
      dense_x_ = nx;
      uint32_t y = 0;
      for (int l = 0; l < spec_.w; ++l)
        y |= static_cast<uint32_t>(std::popcount(spec_.dense.b_rows[l] & nx) &
                                   1)
             << (spec_.w - 1 - l);
      return y;
    }
  }
  return 0;
}

void GeneratorState::xor_dense_state(uint64_t mask) {
  if (spec_.kind != GenKind::small_dense)
    throw std::logic_error("dense state access on a word generator");
  dense_x_ ^= mask;
}

std::vector<uint8_t> bit_stream(const GeneratorState& state, int bit_index,
                                std::size_t count) {
  if (bit_index < 0 || bit_index >= state.spec().w)
    throw std::invalid_argument("bit index out of range");
  GeneratorState g = state;
  std::vector<uint8_t> out(count);
  int shift = state.spec().w - 1 - bit_index;
  for (std::size_t i = 0; i < count; ++i)
    out[i] = g.step_and_output() >> shift & 1u;
  return out;
}

std::vector<uint32_t> word_stream(const GeneratorState& state,
                                  std::size_t count) {
  GeneratorState g = state;
  std::vector<uint32_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = g.step_and_output();
  return out;
}

F2Poly characteristic_poly(const GeneratorSpec& spec) {
  GeneratorState g(spec, Seed::integer(5489));
  auto bits = bit_stream(g, 0, 2 * static_cast<std::size_t>(spec.p));
  F2Poly P = berlekamp_massey(bits);
  if (P.degree() != spec.p)
    throw std::runtime_error(
        "minimal polynomial degree " +
        std::to_string(P.degree() == F2Poly::deg_neg_inf ? -1 : P.degree()) +
        " != p = " + std::to_string(spec.p) +
        " (sequence not maximal or bad spec)");
  return P;
}

std::vector<F2Poly> numerator_polys(const GeneratorState& state, int v,
                                    const F2Poly& P) {
  if (v < 1 || v > state.spec().w)
    throw std::invalid_argument("v out of range");
  const int p = state.spec().p;
  GeneratorState g = state;
  // One pass over p outputs, split into per-bit streams afterwards.
  std::vector<uint32_t> words(p);
  for (int i = 0; i < p; ++i) words[i] = g.step_and_output();

  std::vector<F2Poly> out;
  out.reserve(v);
  std::vector<uint8_t> rev(p);
  for (int l = 0; l < v; ++l) {
    int shift = state.spec().w - 1 - l;
    for (int i = 0; i < p; ++i) rev[p - 1 - i] = words[i] >> shift & 1u;
    // h_l sits in the coefficient window [p, 2p) of P * reversed-stream.
    F2Poly prod = poly_mul(P, F2Poly::from_bits(rev));
    out.push_back(prod.slice(p, 2 * p));
  }
  if (out[0].is_zero())
    throw std::runtime_error("h_0 = 0: zero bit-0 stream from nonzero state");
  if (poly_extgcd(out[0], P).g != F2Poly::one())
    throw std::runtime_error("gcd(h_0, P) != 1");
  return out;
}

bool remark2_identity_check(std::span<const uint32_t> outputs) {
  for (std::size_t i = kN; i < outputs.size(); ++i) {
    uint32_t prev_old = mt_untemper(outputs[i - 624]);
    uint32_t prev_new = mt_untemper(outputs[i - 623]);
    uint32_t rhs = outputs[i - 227] ^
                   mt_temper(twist(prev_old, prev_new));
    if (outputs[i] != rhs) return false;
  }
  return true;
}

bool remark2_identity_check(std::size_t steps, uint32_t seed) {
  GeneratorState g(GeneratorSpec::mt19937(), Seed::integer(seed));
  return remark2_identity_check(word_stream(g, steps));
}

namespace {

// Fast path for the two 19937-bit generators: kernel twist on the raw word
// array, output transformation applied lazily per position.
class TwistBlockSource final : public BlockSource {
 public:
  TwistBlockSource(const GeneratorSpec& spec, const Seed& seed) {
    if (seed.kind != Seed::Kind::integer)
      throw std::invalid_argument("block source expects an integer seed");
    memt_ = spec.kind == GenKind::memt19937ii;
    cur_[0] = seed.value;
    for (uint32_t i = 1; i < kBlock; ++i)
      cur_[i] = 1812433253u * (cur_[i - 1] ^ (cur_[i - 1] >> 30)) + i;
  }

  void next_block() override {
    prev_ = cur_;
    kern::active().mt_twist(cur_.data());
  }

  uint32_t output_at(int k) const override {
    if (!memt_) return mt_temper(cur_[k]);
    uint32_t m473 = k >= 473 ? cur_[k - 473] : prev_[k + 151];
    uint32_t m588 = k >= 588 ? cur_[k - 588] : prev_[k + 36];
    return memt_output(cur_[k], m473, m588);
  }

 private:
  bool memt_ = false;
  std::array<uint32_t, kBlock> cur_{};
  std::array<uint32_t, kBlock> prev_{};
};

class GenericBlockSource final : public BlockSource {
 public:
  GenericBlockSource(const GeneratorSpec& spec, const Seed& seed)
      : state_(spec, seed) {}
  void next_block() override {
    for (int k = 0; k < kBlock; ++k) block_[k] = state_.step_and_output();
  }
  uint32_t output_at(int k) const override { return block_[k]; }

 private:
  GeneratorState state_;
  std::array<uint32_t, kBlock> block_{};
};

}  // namespace

std::unique_ptr<BlockSource> BlockSource::make(const GeneratorSpec& spec,
                                               const Seed& seed) {
  if ((spec.kind == GenKind::mt19937 || spec.kind == GenKind::memt19937ii) &&
      seed.kind == Seed::Kind::integer)
    return std::make_unique<TwistBlockSource>(spec, seed);
  return std::make_unique<GenericBlockSource>(spec, seed);
}

}  // namespace f2lin
