#ifndef F2LIN_ORACLE_HPP
#define F2LIN_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "f2lin/generator.hpp"
#include "f2lin/merit.hpp"

// Desk-scale ground truth for small dense generators: equidistribution by
// rank (and by exhaustive cell counting for tiny p), and minimum relation
// weight by exhaustive dual-code search.

namespace f2lin {

class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  std::size_t rank() const;
  BitMatrix transposed() const;
  // Basis of {x : M x = 0}, each vector packed cols bits into words.
  std::vector<std::vector<uint64_t>> null_space() const;

 private:
  std::size_t rows_, cols_, wpr_;
  std::vector<uint64_t> bits_;
};

// Matrix of the map: initial state -> first k outputs truncated to their
// top v bits (row i*v + l is output bit l of step i).
BitMatrix output_map_matrix(const SmallDenseSpec& d, int k, int v);

// Largest k whose truncated-output map has full rank k*v.
int brute_k_v(const SmallDenseSpec& d, int v);

// Same property established by counting points per cell over all 2^p
// initial states; p <= 12 only.
int brute_k_v_counting(const SmallDenseSpec& d, int v);

// Minimum Hamming weight over the nonzero dual codewords of the k-step
// truncated-output code; nullopt when the dual code is trivial.
std::optional<std::size_t> dual_code_min_weight(const SmallDenseSpec& d, int k,
                                                int v);

// The same codeword reinterpreted as lag/bit terms.
LinearRelation codeword_to_relation(const std::vector<uint64_t>& code, int k,
                                    int v);
std::optional<LinearRelation> dual_code_min_weight_relation(
    const SmallDenseSpec& d, int k, int v);

// Rejection-samples a maximal-period generator: invertible transition,
// recovered minimal polynomial of degree p, state orbit of length 2^p - 1.
SmallDenseSpec random_maximal_small_dense(std::mt19937_64& rng, int p, int w);

}  // namespace f2lin

#endif
