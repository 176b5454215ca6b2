#ifndef F2LIN_GENERATOR_HPP
#define F2LIN_GENERATOR_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "f2lin/f2poly.hpp"

// Linear generators over GF(2): a p-bit state advanced by an invertible
// transition, and a w-bit output word per step. Output bit 0 is the most
// significant bit of the word, so the word read as a binary fraction is the
// uniform deviate.

namespace f2lin {

enum class GenKind { mt19937, memt19937ii, small_dense };

// Dense generator given by explicit transition/output bit matrices, p <= 64.
// Row value bit j is entry (i, j).
struct SmallDenseSpec {
  int p = 0;
  int w = 0;
  std::vector<uint64_t> a_rows;  // p rows
  std::vector<uint64_t> b_rows;  // w rows; row 0 produces output bit 0 (MSB)
};

struct GeneratorSpec {
  GenKind kind = GenKind::mt19937;
  int p = 0;  // state bits
  int w = 0;  // output word bits
  SmallDenseSpec dense;

  static GeneratorSpec mt19937();
  static GeneratorSpec memt19937ii();
  // Validates dimensions and that the transition is invertible.
  static GeneratorSpec small(SmallDenseSpec d);
  // JSON config with fields p, w, A, B (rows as hex strings).
  static GeneratorSpec from_config_file(const std::string& path);
  static GeneratorSpec by_name(const std::string& name);  // CLI selector

  std::string name() const;
};

struct Seed {
  enum class Kind { integer, raw_state };
  Kind kind = Kind::integer;
  uint32_t value = 5489;
  std::vector<uint8_t> raw_bits;  // one bit per element, p entries

  static Seed integer(uint32_t v) { return {Kind::integer, v, {}}; }
  static Seed raw(std::vector<uint8_t> bits) {
    return {Kind::raw_state, 0, std::move(bits)};
  }
};

class GeneratorState {
 public:
  GeneratorState(const GeneratorSpec& spec, const Seed& seed);

  const GeneratorSpec& spec() const { return spec_; }
  uint64_t step_count() const { return steps_; }

  // Advances the state and returns the next output word (bit 0 = MSB of the
  // low w bits).
  uint32_t step_and_output();

  // Raw p-bit state snapshot (SmallDense only), bit i = state bit i.
  uint64_t dense_state() const { return dense_x_; }
  void xor_dense_state(uint64_t mask);  // test hook, SmallDense only

 private:
  GeneratorSpec spec_;
  // mt19937 / memt19937ii: sliding window of the last 624 words.
  std::array<uint32_t, 624> mt_{};
  int pos_ = 0;
  uint64_t dense_x_ = 0;
  uint64_t steps_ = 0;

  void seed_mt_array(uint32_t s);
  uint32_t step_mt_word();
};

// MT19937 tempering and its inverse, exposed for structural checks.
uint32_t mt_temper(uint32_t x);
uint32_t mt_untemper(uint32_t y);

// Bits l of the next `count` outputs from a fresh copy of the state.
std::vector<uint8_t> bit_stream(const GeneratorState& state, int bit_index,
                                std::size_t count);
// The next `count` output words from a fresh copy of the state.
std::vector<uint32_t> word_stream(const GeneratorState& state,
                                  std::size_t count);

// Minimal polynomial of output bit 0 over 2p steps from a fixed nonzero
// state; throws std::runtime_error if the recovered degree is below p.
F2Poly characteristic_poly(const GeneratorSpec& spec);

// Numerators h_0..h_{v-1} of the per-bit generating functions h_l / P.
// Throws std::runtime_error when h_0 = 0 or gcd(h_0, P) != 1.
std::vector<F2Poly> numerator_polys(const GeneratorState& state, int v,
                                    const F2Poly& P);

// Word-recurrence identity on an observed MT19937 output stream: each word
// is determined by the words 227, 623 and 624 steps earlier through the
// tempering conjugation. Vacuously true for short streams.
bool remark2_identity_check(std::span<const uint32_t> outputs);
bool remark2_identity_check(std::size_t steps, uint32_t seed = 5489);

// Block producer for throughput-sensitive consumers. Blocks hold 624 raw
// state words; output words are formed on demand so untouched positions
// never pay for the output transformation.
class BlockSource {
 public:
  static constexpr int kBlock = 624;
  virtual ~BlockSource() = default;
  virtual void next_block() = 0;
  virtual uint32_t output_at(int k) const = 0;
  static std::unique_ptr<BlockSource> make(const GeneratorSpec& spec,
                                           const Seed& seed);
};

}  // namespace f2lin

#endif
