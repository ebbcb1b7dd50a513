// Arbitrary-precision evaluation of the closed-form thresholds, computed
// directly from 2^M rather than through the log-space rewrite.
#ifndef PVSCORE_TESTS_MPFR_ORACLE_HPP
#define PVSCORE_TESTS_MPFR_ORACLE_HPP

#include <cmath>

#include <mpfr.h>

namespace pvscore::testing {

class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, kPrecision); }
  explicit BigFloat(double x) : BigFloat() { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  ~BigFloat() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  static constexpr mpfr_prec_t kPrecision = 256;
  mpfr_t v_;
};

// Exponents up to about 4.6e18 fit once emax is raised to its maximum.
inline void widen_mpfr_exponent_range() { mpfr_set_emax(mpfr_get_emax_max()); }

// log(2 (2^M - 2)) into `out`.
inline void mp_log_cover(BigFloat& out, double cover) {
  BigFloat m(cover);
  mpfr_exp2(out.get(), m.get(), MPFR_RNDN);
  mpfr_sub_ui(out.get(), out.get(), 2, MPFR_RNDN);
  mpfr_mul_ui(out.get(), out.get(), 2, MPFR_RNDN);
  mpfr_log(out.get(), out.get(), MPFR_RNDN);
}

inline void mp_add_log_inverse(BigFloat& acc, double p, unsigned long factor) {
  BigFloat t(p);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), factor, MPFR_RNDN);
  mpfr_sub(acc.get(), acc.get(), t.get(), MPFR_RNDN);
}

// sqrt(2 (log(2(2^M-2)) + log(1/delta)) / N)
inline double mp_eta(double cover, double delta, double n) {
  BigFloat acc;
  mp_log_cover(acc, cover);
  mp_add_log_inverse(acc, delta, 1);
  mpfr_mul_ui(acc.get(), acc.get(), 2, MPFR_RNDN);
  BigFloat nn(n);
  mpfr_div(acc.get(), acc.get(), nn.get(), MPFR_RNDN);
  mpfr_sqrt(acc.get(), acc.get(), MPFR_RNDN);
  return acc.to_double();
}

// sqrt((log K + 2 log(2(2^M1-2)) + 2 log(1/alpha)) / N)
inline double mp_ppv_threshold(double cover1, double k, double alpha, double n) {
  BigFloat acc;
  mp_log_cover(acc, cover1);
  mpfr_mul_ui(acc.get(), acc.get(), 2, MPFR_RNDN);
  mp_add_log_inverse(acc, alpha, 2);
  BigFloat lk(k);
  mpfr_log(lk.get(), lk.get(), MPFR_RNDN);
  mpfr_add(acc.get(), acc.get(), lk.get(), MPFR_RNDN);
  BigFloat nn(n);
  mpfr_div(acc.get(), acc.get(), nn.get(), MPFR_RNDN);
  mpfr_sqrt(acc.get(), acc.get(), MPFR_RNDN);
  return acc.to_double();
}

// (4 log(2(2^M-2)) + 2 log(1/alpha) + 2 log(1/beta)) / theta0^2
inline double mp_sample_size_bound(double cover, double theta0, double alpha, double beta) {
  BigFloat acc;
  mp_log_cover(acc, cover);
  mpfr_mul_ui(acc.get(), acc.get(), 4, MPFR_RNDN);
  mp_add_log_inverse(acc, alpha, 2);
  mp_add_log_inverse(acc, beta, 2);
  BigFloat t(theta0);
  mpfr_sqr(t.get(), t.get(), MPFR_RNDN);
  mpfr_div(acc.get(), acc.get(), t.get(), MPFR_RNDN);
  return acc.to_double();
}

inline double relative_error(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace pvscore::testing

#endif  // PVSCORE_TESTS_MPFR_ORACLE_HPP
