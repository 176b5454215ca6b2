#ifndef F2LIN_TESTS_POISSON_ORACLE_HPP
#define F2LIN_TESTS_POISSON_ORACLE_HPP

#include <mpfr.h>

#include <cstdint>

// Test-only Poisson right tail at 512-bit precision, summed directly.
// Deliberately a different route from the log-space implementation.
inline double poisson_tail_oracle(double mu, uint64_t y) {
  const mpfr_prec_t prec = 512;
  mpfr_t m, term, sum, tmp;
  mpfr_inits2(prec, m, term, sum, tmp, (mpfr_ptr)nullptr);
  mpfr_set_d(m, mu, MPFR_RNDN);

  auto pmf0 = [&](uint64_t k, mpfr_t out) {
    mpfr_set_ui(out, 1, MPFR_RNDN);
    for (uint64_t i = 1; i <= k; ++i) {
      mpfr_mul(out, out, m, MPFR_RNDN);
      mpfr_div_ui(out, out, i, MPFR_RNDN);
    }
    mpfr_neg(tmp, m, MPFR_RNDN);
    mpfr_exp(tmp, tmp, MPFR_RNDN);
    mpfr_mul(out, out, tmp, MPFR_RNDN);
  };

  double result;
  if (static_cast<double>(y) > mu) {
    pmf0(y, term);
    mpfr_set(sum, term, MPFR_RNDN);
    for (uint64_t k = y + 1;; ++k) {
      mpfr_mul(term, term, m, MPFR_RNDN);
      mpfr_div_ui(term, term, k, MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
      mpfr_div(tmp, term, sum, MPFR_RNDN);
      if (mpfr_get_d(tmp, MPFR_RNDN) < 1e-60) break;
    }
    result = mpfr_get_d(sum, MPFR_RNDN);
  } else if (y == 0) {
    result = 1.0;
  } else {
    pmf0(0, term);
    mpfr_set_ui(sum, 0, MPFR_RNDN);
    for (uint64_t k = 0; k + 1 <= y; ++k) {
      mpfr_add(sum, sum, term, MPFR_RNDN);
      mpfr_mul(term, term, m, MPFR_RNDN);
      mpfr_div_ui(term, term, k + 1, MPFR_RNDN);
    }
    mpfr_ui_sub(sum, 1, sum, MPFR_RNDN);
    result = mpfr_get_d(sum, MPFR_RNDN);
  }
  mpfr_clears(m, term, sum, tmp, (mpfr_ptr)nullptr);
  return result;
}

#endif
