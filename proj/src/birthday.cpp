#include "f2lin/birthday.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "f2lin/parallel.hpp"

namespace f2lin {

void BirthdayParams::validate(int word_bits) const {
  if (n < 3) throw std::invalid_argument("need n >= 3 points");
  if (reps < 1) throw std::invalid_argument("need at least one replication");
  if (lags.empty()) throw std::invalid_argument("lag set is empty");
  if (t != static_cast<int>(lags.size()))
    throw std::invalid_argument("t does not match the lag count");
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (lags[i] < 0) throw std::invalid_argument("lags must be >= 0");
    if (i && lags[i] <= lags[i - 1])
      throw std::invalid_argument("lags must be strictly increasing");
  }
  if (log2d < 1 || log2d > word_bits)
    throw std::invalid_argument("log2d out of range for this word size");
  if (static_cast<long long>(log2d) * t > 63)
    throw std::invalid_argument("v*t must be <= 63 for 64-bit box indices");
}

double BirthdayParams::lambda() const {
  double dn = static_cast<double>(n);
  double cells = std::ldexp(1.0, log2d * t);
  return dn * dn * dn / (4.0 * cells);
}

std::vector<uint64_t> lagged_boxes(const GeneratorSpec& spec, const Seed& seed,
                                   const BirthdayParams& params) {
  params.validate(spec.w);
  const int stride = params.stride();
  const int v = params.log2d;
  const int w = spec.w;

  // Coordinate multipliers, first lag most significant.
  std::vector<uint64_t> mult(params.t);
  for (int m = 0; m < params.t; ++m)
    mult[m] = 1ull << (static_cast<uint64_t>(v) * (params.t - 1 - m));

  // Jump between used output indices; unused positions cost nothing beyond
  // the block twist itself.
  std::vector<uint64_t> boxes;
  boxes.reserve(params.n);
  auto src = BlockSource::make(spec, seed);
  uint64_t point = 0;        // i
  int m = 0;                 // next lag slot within point i
  uint64_t box = 0;
  uint64_t block_start = 0;  // absolute index of the current block
  while (boxes.size() < params.n) {
    src->next_block();
    uint64_t block_end = block_start + BlockSource::kBlock;
    for (;;) {
      uint64_t a = point * stride + static_cast<uint64_t>(params.lags[m]);
      if (a >= block_end) break;
      uint64_t coord = src->output_at(static_cast<int>(a - block_start)) >>
                       (w - v);
      box += coord * mult[m];
      if (++m == params.t) {
        m = 0;
        ++point;
        boxes.push_back(box);
        box = 0;
        if (boxes.size() == params.n) break;
      }
    }
    block_start = block_end;
  }
  return boxes;
}

uint64_t count_collisions(std::vector<uint64_t> boxes) {
  if (boxes.size() < 3) return 0;
  std::sort(boxes.begin(), boxes.end());
  // Spacings in place, then count adjacent equalities among them sorted.
  for (std::size_t j = 0; j + 1 < boxes.size(); ++j)
    boxes[j] = boxes[j + 1] - boxes[j];
  boxes.pop_back();
  std::sort(boxes.begin(), boxes.end());
  uint64_t y = 0;
  for (std::size_t j = 1; j < boxes.size(); ++j)
    if (boxes[j] == boxes[j - 1]) ++y;
  return y;
}

BirthdayReport birthday_spacings(const GeneratorSpec& spec,
                                 const BirthdayParams& params) {
  params.validate(spec.w);
  auto start = std::chrono::steady_clock::now();

  BirthdayReport rep;
  rep.params = params;
  rep.generator = spec.name();
  rep.collisions.assign(params.reps, 0);
  parallel_for(params.reps, params.threads, [&](std::size_t r) {
    Seed seed = Seed::integer(params.base_seed + 1 + static_cast<uint32_t>(r));
    auto boxes = lagged_boxes(spec, seed, params);
    rep.collisions[r] = count_collisions(std::move(boxes));
    if (params.progress)
      std::fprintf(stderr, "  replication %zu: Y = %llu\n", r + 1,
                   static_cast<unsigned long long>(rep.collisions[r]));
  });
  rep.total = std::accumulate(rep.collisions.begin(), rep.collisions.end(),
                              uint64_t{0});
  rep.lambda = params.lambda();
  rep.mean = params.reps * rep.lambda;
  rep.p_value = poisson_right_tail(rep.mean, rep.total);
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

double poisson_right_tail(double mu, uint64_t y) {
  if (!(mu > 0)) throw std::invalid_argument("mean must be positive");
  if (y == 0) return 1.0;
  double dy = static_cast<double>(y);
  if (dy > mu) {
    // P(X >= y) = t_y * (1 + mu/(y+1) + mu^2/((y+1)(y+2)) + ...)
    double logt = dy * std::log(mu) - mu - std::lgamma(dy + 1);
    double sum = 1.0, term = 1.0;
    for (uint64_t k = 1;; ++k) {
      term *= mu / (dy + k);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(logt) * sum;
  }
  // P(X >= y) = 1 - P(X <= y-1), summed downward from the largest term.
  double logt = (dy - 1) * std::log(mu) - mu - std::lgamma(dy);
  double sum = 1.0, term = 1.0;
  for (uint64_t j = 1; j < y; ++j) {
    term *= (dy - j) / mu;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 1.0 - std::exp(logt) * sum;
}

}  // namespace f2lin
