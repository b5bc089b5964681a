#include "cmsunit/bigfloat.hpp"

#include <cmath>
#include <memory>

namespace cmsunit {

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

void cset(Complex& dst, const Complex& a) {
  mpfr_set(dst.re().get(), a.re().get(), MPFR_RNDN);
  mpfr_set(dst.im().get(), a.im().get(), MPFR_RNDN);
}

void cadd(Complex& dst, const Complex& a, const Complex& b) {
  mpfr_add(dst.re().get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_add(dst.im().get(), a.im().get(), b.im().get(), MPFR_RNDN);
}

void csub(Complex& dst, const Complex& a, const Complex& b) {
  mpfr_sub(dst.re().get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_sub(dst.im().get(), a.im().get(), b.im().get(), MPFR_RNDN);
}

void cmul(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2) {
  // (ar + i ai)(br + i bi)
  mpfr_mul(t1.get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im().get(), b.im().get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);  // real part
  mpfr_mul(t2.get(), a.re().get(), b.im().get(), MPFR_RNDN);
  // imaginary part needs a.im * b.re before dst.re is overwritten
  mpfr_fma(t2.get(), a.im().get(), b.re().get(), t2.get(), MPFR_RNDN);
  mpfr_swap(dst.re().get(), t1.get());
  mpfr_swap(dst.im().get(), t2.get());
}

void csqr(Complex& dst, const Complex& a, Real& t1, Real& t2) {
  mpfr_sqr(t1.get(), a.re().get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), a.im().get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re().get(), a.im().get(), MPFR_RNDN);
  mpfr_mul_2ui(t2.get(), t2.get(), 1, MPFR_RNDN);
  mpfr_swap(dst.re().get(), t1.get());
  mpfr_swap(dst.im().get(), t2.get());
}

void cdiv(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2, Real& t3) {
  // a * conj(b) / |b|^2
  mpfr_sqr(t3.get(), b.re().get(), MPFR_RNDN);
  mpfr_fma(t3.get(), b.im().get(), b.im().get(), t3.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_fma(t1.get(), a.im().get(), b.im().get(), t1.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im().get(), b.re().get(), MPFR_RNDN);
  mpfr_fms(t2.get(), a.re().get(), b.im().get(), t2.get(), MPFR_RNDN);
  mpfr_neg(t2.get(), t2.get(), MPFR_RNDN);
  mpfr_div(t1.get(), t1.get(), t3.get(), MPFR_RNDN);
  mpfr_div(t2.get(), t2.get(), t3.get(), MPFR_RNDN);
  mpfr_swap(dst.re().get(), t1.get());
  mpfr_swap(dst.im().get(), t2.get());
}

void cnorm(Real& dst, const Complex& a, Real& t) {
  mpfr_sqr(t.get(), a.re().get(), MPFR_RNDN);
  mpfr_fma(dst.get(), a.im().get(), a.im().get(), t.get(), MPFR_RNDN);
}

void clog_abs(Real& dst, const Complex& a, Real& t) {
  cnorm(dst, a, t);
  mpfr_log(dst.get(), dst.get(), MPFR_RNDN);
  mpfr_div_2ui(dst.get(), dst.get(), 1, MPFR_RNDN);
}

std::pair<mpz_class, double> round_to_integer(const Real& x) {
  Real r(x.precision());
  mpfr_rint(r.get(), x.get(), MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  Real diff(x.precision());
  mpfr_sub(diff.get(), x.get(), r.get(), MPFR_RNDN);
  return {z, std::fabs(diff.to_double())};
}

}  // namespace cmsunit
