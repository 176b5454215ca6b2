#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "f2lin/generator.hpp"

using namespace f2lin;

namespace {

// Companion of x^4 + x + 1 with an identity output map.
SmallDenseSpec lfsr4_spec() {
  SmallDenseSpec d;
  d.p = 4;
  d.w = 4;
  d.a_rows = {0b0010, 0b0100, 0b1000, 0b0011};
  d.b_rows = {0b0001, 0b0010, 0b0100, 0b1000};
  return d;
}

std::vector<uint8_t> raw_bits(std::initializer_list<int> bits) {
  return std::vector<uint8_t>(bits.begin(), bits.end());
}

}  // namespace

TEST_CASE("small dense raw seeding") {
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  GeneratorState g(spec, Seed::raw(raw_bits({1, 0, 1, 1})));
  CHECK(g.dense_state() == 0b1101);
  CHECK_THROWS_AS(GeneratorState(spec, Seed::raw(raw_bits({0, 0, 0, 0}))),
                  std::invalid_argument);
  CHECK_THROWS_AS(GeneratorState(spec, Seed::raw(raw_bits({1, 0}))),
                  std::invalid_argument);
}

TEST_CASE("small dense singular transition rejected") {
  SmallDenseSpec d = lfsr4_spec();
  d.a_rows[1] = d.a_rows[0];
  CHECK_THROWS_AS(GeneratorSpec::small(d), std::invalid_argument);
}

TEST_CASE("maximal 4-bit generator has period 15") {
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  GeneratorState g(spec, Seed::raw(raw_bits({1, 0, 0, 0})));
  uint64_t start = g.dense_state();
  int period = 0;
  do {
    g.step_and_output();
    ++period;
  } while (g.dense_state() != start && period <= 16);
  CHECK(period == 15);
}

TEST_CASE("mt19937 matches the standard library generator") {
  GeneratorState g(GeneratorSpec::mt19937(), Seed::integer(5489));
  CHECK(word_stream(g, 1)[0] == 3499211612u);

  std::mt19937 ref(5489);
  auto ours = word_stream(g, 1000);
  for (int i = 0; i < 1000; ++i) CHECK(ours[i] == ref());

  std::mt19937 ref2(20250101);
  GeneratorState g2(GeneratorSpec::mt19937(), Seed::integer(20250101));
  auto ours2 = word_stream(g2, 1000);
  for (int i = 0; i < 1000; ++i) CHECK(ours2[i] == ref2());
}

TEST_CASE("tempering round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    uint32_t x = static_cast<uint32_t>(rng());
    CHECK(mt_untemper(mt_temper(x)) == x);
  }
}

TEST_CASE("bit_stream conventions") {
  GeneratorSpec spec = GeneratorSpec::mt19937();
  GeneratorState g(spec, Seed::integer(5489));
  auto words = word_stream(g, 64);
  for (int l : {0, 1, 13, 31}) {
    auto bits = bit_stream(g, l, 64);
    for (int i = 0; i < 64; ++i) CHECK(bits[i] == (words[i] >> (31 - l) & 1u));
  }
  CHECK_THROWS_AS(bit_stream(g, 32, 4), std::invalid_argument);
  CHECK_THROWS_AS(bit_stream(g, -1, 4), std::invalid_argument);
}

TEST_CASE("pipeline linearity on small generators") {
  std::mt19937_64 rng(9);
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  for (int iter = 0; iter < 50; ++iter) {
    uint64_t s1 = rng() % 15 + 1;
    uint64_t s2 = rng() % 15 + 1;
    if (s1 == s2 || (s1 ^ s2) == 0) continue;
    auto mk = [&](uint64_t s) {
      std::vector<uint8_t> bits(4);
      for (int i = 0; i < 4; ++i) bits[i] = s >> i & 1;
      return GeneratorState(spec, Seed::raw(bits));
    };
    auto a = word_stream(mk(s1), 40);
    auto b = word_stream(mk(s2), 40);
    auto c = word_stream(mk(s1 ^ s2), 40);
    for (int i = 0; i < 40; ++i) CHECK((a[i] ^ b[i]) == c[i]);
  }
}

TEST_CASE("characteristic polynomial of the lfsr4 companion") {
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  F2Poly P = characteristic_poly(spec);
  CHECK(P == F2Poly::from_hex("13"));
}

TEST_CASE("characteristic polynomial is state independent") {
  std::mt19937_64 rng(13);
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  F2Poly P = characteristic_poly(spec);
  for (int iter = 0; iter < 10; ++iter) {
    uint64_t s = rng() % 15 + 1;
    std::vector<uint8_t> bits(4);
    for (int i = 0; i < 4; ++i) bits[i] = s >> i & 1;
    GeneratorState g(spec, Seed::raw(bits));
    CHECK(berlekamp_massey(bit_stream(g, 0, 8)) == P);
  }
}

TEST_CASE("numerators reproduce the streams by long division") {
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  F2Poly P = characteristic_poly(spec);
  GeneratorState g(spec, Seed::raw(raw_bits({1, 1, 0, 1})));
  auto h = numerator_polys(g, 4, P);
  const int p = 4;
  for (int l = 0; l < 4; ++l) {
    CHECK(h[l].degree() < P.degree());
    // Series expansion of h_l / P, term by term: the k-th stream bit is the
    // leading coefficient of z^{p-1-?}. Multiply up and divide repeatedly.
    auto bits = bit_stream(g, l, 3 * p);
    F2Poly rem = h[l];
    for (int i = 0; i < 3 * p; ++i) {
      // Series term i of h/P: multiply the residue by z, the quotient digit
      // is the next stream bit.
      F2Poly shifted = poly_mul(rem, F2Poly::monomial(1));
      auto [q, r] = poly_divrem(shifted, P);
      CHECK(q.degree() <= 0);
      CHECK((q == F2Poly::one()) == (bits[i] == 1));
      rem = r;
    }
  }

  // Identical bit streams give identical numerators.
  SmallDenseSpec dup = lfsr4_spec();
  dup.b_rows = {0b0001, 0b0001, 0b1000, 0b1000};
  GeneratorSpec dspec = GeneratorSpec::small(dup);
  GeneratorState dg(dspec, Seed::raw(raw_bits({1, 0, 0, 1})));
  auto dh = numerator_polys(dg, 4, characteristic_poly(dspec));
  CHECK(dh[0] == dh[1]);
  CHECK(dh[2] == dh[3]);
}

TEST_CASE("numerators reproduce mt19937 bit streams") {
  GeneratorSpec spec = GeneratorSpec::mt19937();
  F2Poly P = characteristic_poly(spec);
  GeneratorState g(spec, Seed::integer(5489));
  auto h = numerator_polys(g, 2, P);
  const int p = spec.p;
  for (int l = 0; l < 2; ++l) {
    auto bits = bit_stream(g, l, static_cast<std::size_t>(p) + 200);
    // Long-division oracle on a window past the numerator degrees.
    F2Poly rem = h[l];
    for (int i = 0; i < p + 200; ++i) {
      F2Poly shifted = poly_mul(rem, F2Poly::monomial(1));
      auto [q, r] = poly_divrem(shifted, P);
      CHECK((q == F2Poly::one()) == (bits[i] == 1));
      rem = r;
    }
  }
}

TEST_CASE("zero bit-0 stream is rejected") {
  SmallDenseSpec d = lfsr4_spec();
  d.b_rows[0] = 0;  // output bit 0 always zero
  GeneratorSpec spec = GeneratorSpec::small(d);
  GeneratorState g(spec, Seed::raw(raw_bits({1, 0, 0, 0})));
  CHECK_THROWS_AS(numerator_polys(g, 2, F2Poly::from_hex("13")),
                  std::runtime_error);
}

TEST_CASE("memt19937ii shares the mt19937 transition") {
  // Same twist, different output path: characteristic polynomials match.
  F2Poly a = characteristic_poly(GeneratorSpec::mt19937());
  F2Poly b = characteristic_poly(GeneratorSpec::memt19937ii());
  CHECK(a == b);
  CHECK(a.degree() == 19937);
  CHECK(a.weight() == 135);
}

TEST_CASE("word recurrence identity holds on mt19937 output") {
  CHECK(remark2_identity_check(10000));
  CHECK(remark2_identity_check(0));
  CHECK(remark2_identity_check(623));  // shorter than one window: vacuous

  GeneratorState g(GeneratorSpec::mt19937(), Seed::integer(97));
  auto words = word_stream(g, 4000);
  CHECK(remark2_identity_check(words));
  words[1700] ^= 0x40u;
  CHECK_FALSE(remark2_identity_check(words));

  // MEMT output words do not satisfy the MT identity.
  GeneratorState m(GeneratorSpec::memt19937ii(), Seed::integer(97));
  CHECK_FALSE(remark2_identity_check(word_stream(m, 4000)));
}

TEST_CASE("block sources match the one-step path") {
  for (auto kind : {GeneratorSpec::mt19937(), GeneratorSpec::memt19937ii()}) {
    GeneratorState g(kind, Seed::integer(4357));
    auto want = word_stream(g, 100000);
    auto src = BlockSource::make(kind, Seed::integer(4357));
    std::size_t i = 0;
    while (i < want.size()) {
      src->next_block();
      for (int k = 0; k < BlockSource::kBlock && i < want.size(); ++k, ++i)
        REQUIRE(src->output_at(k) == want[i]);
    }
  }
}

TEST_CASE("config file round trip") {
  SmallDenseSpec d = lfsr4_spec();
  std::string path = "lfsr4_config_test.json";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f);
    std::fputs("{\"p\":4,\"w\":4,\"A\":[\"2\",\"4\",\"8\",\"3\"],"
               "\"B\":[\"1\",\"2\",\"4\",\"8\"]}\n",
               f);
    std::fclose(f);
  }
  GeneratorSpec spec = GeneratorSpec::from_config_file(path);
  CHECK(spec.p == 4);
  CHECK(spec.w == 4);
  CHECK(spec.dense.a_rows == d.a_rows);
  CHECK(spec.dense.b_rows == d.b_rows);
  std::remove(path.c_str());
}

TEST_CASE("integer seeding of small generators avoids the zero state") {
  GeneratorSpec spec = GeneratorSpec::small(lfsr4_spec());
  for (uint32_t s = 0; s < 50; ++s) {
    GeneratorState g(spec, Seed::integer(s));
    CHECK(g.dense_state() != 0);
  }
}
