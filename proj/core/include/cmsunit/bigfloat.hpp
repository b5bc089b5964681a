#pragma once

// Thin RAII wrappers over MPFR used by the j-function evaluator and the
// class-polynomial expansion. Operations are written as free functions that
// take an explicit destination so hot loops do not allocate.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace cmsunit {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const mpz_class& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

/// Complex number with arbitrary-precision real and imaginary parts.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  Complex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  Real& re() noexcept { return re_; }
  Real& im() noexcept { return im_; }
  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  mpfr_prec_t precision() const noexcept {
    return std::min(re_.precision(), im_.precision());
  }

 private:
  Real re_;
  Real im_;
};

// In-place complex helpers; scratch must have the working precision.
void cset(Complex& dst, const Complex& a);
void cadd(Complex& dst, const Complex& a, const Complex& b);
void csub(Complex& dst, const Complex& a, const Complex& b);
/// dst = a * b. dst may alias a or b.
void cmul(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2);
/// dst = a * a. dst may alias a.
void csqr(Complex& dst, const Complex& a, Real& t1, Real& t2);
/// dst = a / b. dst may alias a or b.
void cdiv(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2, Real& t3);
/// |a|^2
void cnorm(Real& dst, const Complex& a, Real& t);
/// log|a|
void clog_abs(Real& dst, const Complex& a, Real& t);

/// Nearest integer to x together with |x - round(x)| as a double.
std::pair<mpz_class, double> round_to_integer(const Real& x);

}  // namespace cmsunit
