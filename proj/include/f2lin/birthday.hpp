#ifndef F2LIN_BIRTHDAY_HPP
#define F2LIN_BIRTHDAY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "f2lin/generator.hpp"

// Birthday spacings on t-dimensional points assembled from lagged outputs:
// point i takes its m-th coordinate from output (j_t+1)*i + j_m, keeping the
// top v bits. Box indices are lexicographic, first lag most significant.

namespace f2lin {

struct BirthdayParams {
  uint64_t n = 0;          // points per replication
  int reps = 1;            // N
  int t = 0;               // dimension (defaults to lags.size())
  int log2d = 0;           // v: bits kept per coordinate
  std::vector<int> lags;   // j_1 < ... < j_t, j_1 = 0 allowed
  uint32_t base_seed = 0;  // replication r uses seed base_seed + 1 + r
  int threads = 1;
  bool progress = false;

  void validate(int word_bits) const;
  double lambda() const;  // n^3 / (4 d^t)
  int stride() const { return lags.back() + 1; }
};

struct BirthdayReport {
  BirthdayParams params;
  std::string generator;
  std::vector<uint64_t> collisions;  // Y_r per replication
  uint64_t total = 0;                // Y
  double lambda = 0;
  double mean = 0;  // N * lambda
  double p_value = 0;
  double seconds = 0;  // wall clock, excluded from golden comparisons
};

// Box indices of one replication (exposed so tests can poke at the stream
// assembly directly).
std::vector<uint64_t> lagged_boxes(const GeneratorSpec& spec, const Seed& seed,
                                   const BirthdayParams& params);

// Collision count of a prepared box list (sorts a copy).
uint64_t count_collisions(std::vector<uint64_t> boxes);

BirthdayReport birthday_spacings(const GeneratorSpec& spec,
                                 const BirthdayParams& params);

// P(X >= y) for X ~ Poisson(mu), log-space series with relative tail cutoff
// 1e-18; complement-summed below the mean. Throws when mu <= 0.
double poisson_right_tail(double mu, uint64_t y);

}  // namespace f2lin

#endif
