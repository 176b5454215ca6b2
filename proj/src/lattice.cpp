#include "f2lin/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "f2lin/parallel.hpp"

namespace f2lin {

int vector_norm(const std::vector<F2Poly>& row) {
  int norm = F2Poly::deg_neg_inf;
  for (const auto& e : row) norm = std::max(norm, e.degree());
  return norm;
}

namespace {

struct Pivot {
  int norm;
  int col;  // rightmost entry attaining the norm; -1 for a zero row
};

Pivot row_pivot(const std::vector<F2Poly>& row) {
  Pivot p{F2Poly::deg_neg_inf, -1};
  for (int c = 0; c < static_cast<int>(row.size()); ++c) {
    int d = row[c].degree();
    if (d == F2Poly::deg_neg_inf) continue;
    if (d >= p.norm) {
      p.norm = d;
      p.col = c;
    }
  }
  return p;
}

}  // namespace

LatticeBasis build_dual_basis(const GeneratorState& gen, int v,
                              const F2Poly& P) {
  if (v < 1 || v > gen.spec().w) throw std::invalid_argument("v out of range");
  auto h = numerator_polys(gen, v, P);
  F2Poly h0inv = poly_inverse_mod(h[0], P);

  LatticeBasis b;
  b.v = v;
  b.rows.assign(v, std::vector<F2Poly>(v));
  b.rows[0][0] = P;
  for (int l = 1; l < v; ++l) {
    b.rows[l][0] = poly_mod(poly_mul(h0inv, h[l]), P);
    b.rows[l][l] = F2Poly::one();
  }
  return b;
}

ReducedBasis reduce_basis(const LatticeBasis& basis, int expected_det_degree) {
  const int v = basis.v;
  auto rows = basis.rows;
  std::vector<Pivot> piv(v);
  std::vector<int> owner(v, -1);  // pivot column -> row currently holding it
  std::vector<int> work(v);
  std::iota(work.begin(), work.end(), 0);

  while (!work.empty()) {
    int r = work.back();
    work.pop_back();
    piv[r] = row_pivot(rows[r]);
    if (piv[r].col < 0)
      throw std::logic_error("lattice rows are linearly dependent");
    int c = piv[r].col;
    int o = owner[c];
    if (o < 0) {
      owner[c] = r;
      continue;
    }
    // Keep the lower-degree row as the column owner; cancel the other row's
    // leading pivot coefficient with a z-power multiple of the owner.
    if (rows[r][c].degree() < rows[o][c].degree()) {
      std::swap(owner[c], r);
      o = owner[c];
    }
    int e = rows[r][c].degree() - rows[o][c].degree();
    for (int k = 0; k < v; ++k) rows[r][k].xor_shifted(rows[o][k], e);
    work.push_back(r);
  }

  ReducedBasis out;
  out.v = v;
  std::vector<int> order(v);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (piv[a].norm != piv[b].norm) return piv[a].norm < piv[b].norm;
    return piv[a].col < piv[b].col;
  });
  long long sum = 0;
  for (int idx : order) {
    out.rows.push_back(std::move(rows[idx]));
    out.minima.push_back(piv[idx].norm);
    sum += piv[idx].norm;
  }
  out.v_prime = static_cast<int>(
      std::count(out.minima.begin(), out.minima.end(), out.minima[0]));

  if (expected_det_degree >= 0 && sum != expected_det_degree)
    throw std::logic_error("successive minima do not sum to deg P");
  return out;
}

LatticeContext::LatticeContext(const GeneratorSpec& spec, const Seed& seed)
    : spec_(spec), P_(characteristic_poly(spec)) {
  GeneratorState g(spec, seed);
  auto h = numerator_polys(g, spec.w, P_);
  F2Poly h0inv = poly_inverse_mod(h[0], P_);
  hbar_.reserve(spec.w - 1);
  for (int l = 1; l < spec.w; ++l)
    hbar_.push_back(poly_mod(poly_mul(h0inv, h[l]), P_));
}

LatticeBasis LatticeContext::basis(int v) const {
  if (v < 1 || v > spec_.w) throw std::invalid_argument("v out of range");
  LatticeBasis b;
  b.v = v;
  b.rows.assign(v, std::vector<F2Poly>(v));
  b.rows[0][0] = P_;
  for (int l = 1; l < v; ++l) {
    b.rows[l][0] = hbar_[l - 1];
    b.rows[l][l] = F2Poly::one();
  }
  return b;
}

ReducedBasis LatticeContext::reduced(int v) const {
  return reduce_basis(basis(v), P_.degree());
}

DefectProfile defect_profile(const LatticeContext& ctx, int v_max,
                             int threads) {
  const int w = ctx.spec().w;
  const int p = ctx.spec().p;
  if (v_max < 1 || v_max > w) throw std::invalid_argument("v_max out of range");
  DefectProfile out;
  out.rows.resize(v_max);
  parallel_for(v_max, threads, [&](std::size_t i) {
    int v = static_cast<int>(i) + 1;
    int k = k_of_v(ctx.reduced(v));
    out.rows[i] = {v, k, p / v - k};
  });
  for (const auto& r : out.rows) out.delta += r.d;
  out.complete = (v_max == w);
  return out;
}

DefectProfile defect_profile(const GeneratorSpec& spec, int v_max,
                             int threads) {
  LatticeContext ctx(spec, Seed::integer(5489));
  return defect_profile(ctx, v_max, threads);
}

}  // namespace f2lin
