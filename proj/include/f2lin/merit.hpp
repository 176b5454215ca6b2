#ifndef F2LIN_MERIT_HPP
#define F2LIN_MERIT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "f2lin/lattice.hpp"

// Shortest-vector enumeration: every minimal relation on the top v output
// bits is a GF(2) combination of the first v' reduced rows, walked in
// Gray-code order with one row-XOR per step. The weight of a vector is its
// total set-coefficient count; N_v is the minimum over all of them.

namespace f2lin {

struct LinearRelation {
  int v = 0;                               // bit accuracy
  std::vector<std::pair<int, int>> terms;  // (lag, bit), sorted

  std::size_t weight() const { return terms.size(); }
  int max_lag() const;
  std::string render() const;  // "y[i,2] + y[i+792,4] + ..." style
  friend bool operator==(const LinearRelation&,
                         const LinearRelation&) = default;
  friend bool operator<(const LinearRelation& a, const LinearRelation& b) {
    return a.terms < b.terms;
  }
};

struct MeritReport {
  int v = 0;
  int k_v = 0;
  int v_prime = 0;
  uint64_t shortest_count = 0;  // 2^v' - 1
  bool sampled = false;         // true when the walk exceeded the budget
  uint64_t visited = 0;         // vectors actually weighed
  uint64_t min_weight = 0;      // N_v, or an upper bound when sampled
  std::vector<uint64_t> argmin_patterns;       // row-coefficient masks
  std::vector<LinearRelation> argmin_relations;
  std::vector<LinearRelation> all_minimal;  // filled only when collected
};

struct EnumerateOptions {
  uint64_t max_enum = 1ull << 28;  // full-walk budget in visited vectors
  uint64_t sample_count = 200000;  // used when the budget is exceeded
  int threads = 1;
  bool collect_all = false;   // keep every minimal relation (exact runs only)
  uint64_t collect_cap = 1ull << 16;
  bool progress = false;
};

LinearRelation vector_to_relation(std::span<const F2Poly> vec, int v);

MeritReport enumerate_min_weight(const ReducedBasis& reduced,
                                 const EnumerateOptions& opts = {});

// All minimal relations (every nonzero combination of the v' shortest
// rows). Requires an exact enumeration; throws when the budget forces
// sampling.
std::vector<LinearRelation> minimal_relations(const ReducedBasis& reduced,
                                              const EnumerateOptions& opts = {});

// True when the XOR of the designated output bits vanishes for every shift
// i in [0, span). Throws on an empty term set.
bool verify_relation(const GeneratorState& gen, const LinearRelation& rel,
                     std::size_t span);

}  // namespace f2lin

#endif
