#ifndef F2LIN_LATTICE_HPP
#define F2LIN_LATTICE_HPP

#include <vector>

#include "f2lin/f2poly.hpp"
#include "f2lin/generator.hpp"

// Dual lattice of the per-bit generating functions: the GF(2)[z]-row space
// spanned by (P, 0, ..., 0) and (hbar_l, e_l), whose shortest-vector length
// is the equidistribution dimension k(v). Row norms are max entry degrees.

namespace f2lin {

struct LatticeBasis {
  int v = 0;
  std::vector<std::vector<F2Poly>> rows;  // v rows of v entries
};

struct ReducedBasis {
  int v = 0;
  std::vector<std::vector<F2Poly>> rows;  // sorted by norm, ascending
  std::vector<int> minima;                // row norms, ascending
  int v_prime = 0;                        // multiplicity of minima[0]
};

int vector_norm(const std::vector<F2Poly>& row);

LatticeBasis build_dual_basis(const GeneratorState& gen, int v,
                              const F2Poly& P);

// Pivot-cancellation reduction to distinct-pivot form. Row norms of the
// result are the successive minima; when the caller knows the determinant
// degree (deg P for the dual construction) the sum rule is enforced.
ReducedBasis reduce_basis(const LatticeBasis& basis,
                          int expected_det_degree = -1);

inline int k_of_v(const ReducedBasis& rb) { return rb.minima.at(0); }

struct DefectRow {
  int v;
  int k;
  int d;  // floor(p/v) - k
};

struct DefectProfile {
  std::vector<DefectRow> rows;
  long long delta = 0;   // sum of d over the computed range
  bool complete = false; // true when the range covers v = 1..w
};

// Shared numerator data so per-v bases do not recompute the streams.
class LatticeContext {
 public:
  LatticeContext(const GeneratorSpec& spec, const Seed& seed);
  const F2Poly& P() const { return P_; }
  const GeneratorSpec& spec() const { return spec_; }
  LatticeBasis basis(int v) const;
  ReducedBasis reduced(int v) const;

 private:
  GeneratorSpec spec_;
  F2Poly P_;
  std::vector<F2Poly> hbar_;  // hbar_[l-1] for l = 1..w-1
};

DefectProfile defect_profile(const GeneratorSpec& spec, int v_max,
                             int threads = 1);
DefectProfile defect_profile(const LatticeContext& ctx, int v_max,
                             int threads = 1);

}  // namespace f2lin

#endif
