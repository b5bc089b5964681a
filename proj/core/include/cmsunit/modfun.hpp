#pragma once

// The modular j-function at CM points, Hilbert class polynomials and exact
// norms of differences of singular moduli.

#include <gmpxx.h>

#include <span>
#include <vector>

#include "cmsunit/bigfloat.hpp"
#include "cmsunit/polynomial.hpp"
#include "cmsunit/quadclass.hpp"

namespace cmsunit {

/// tau = (-b + sqrt(disc)) / (2a) for one reduced form.
Complex cm_point(const QuadForm& form, const Discriminant& disc, mpfr_prec_t prec);

/// One CM point per reduced form, in the order of reduced_forms(disc).
std::vector<Complex> cm_points(const Discriminant& disc, mpfr_prec_t prec);

/// j(tau) with relative error about 2^-prec. tau is first moved into the
/// standard fundamental domain. Throws PrecisionExhausted if Im(tau) is so
/// small that the reduction cannot be carried out at the requested precision.
Complex eval_j(const Complex& tau, mpfr_prec_t prec);

/// j at the CM point of a reduced form; uses the exact rational real part.
Complex eval_j_cm(const QuadForm& form, const Discriminant& disc, mpfr_prec_t prec);

/// All singular moduli of one discriminant, evaluated once and shared between
/// norm, polynomial and height computations.
class SingularModuli {
 public:
  SingularModuli(const Discriminant& disc, mpfr_prec_t prec);

  const Discriminant& discriminant() const noexcept { return disc_; }
  const std::vector<QuadForm>& forms() const noexcept { return forms_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  mpfr_prec_t precision() const noexcept { return prec_; }

 private:
  Discriminant disc_;
  std::vector<QuadForm> forms_;
  std::vector<Complex> values_;
  mpfr_prec_t prec_;
};

/// Bits needed so that the product of (j_i - j0) is known to absolute error
/// well below 1/4: ceil(pi sqrt|D| sum(1/a) / ln 2) plus a cushion for |j0|,
/// log2 of the class number and guard_bits().
mpfr_prec_t initial_precision(const Discriminant& disc, double abs_j0 = 0.0);

/// Guard bits added by initial_precision (default 64). Process-wide.
void set_guard_bits(int bits);
int guard_bits() noexcept;

/// Number of double-and-retry rounds after the initial attempt.
inline constexpr int kPrecisionRetries = 3;

/// Monic H_D with integer coefficients; every coefficient is accepted only if
/// its floating value lies within 1/4 of the rounded integer.
IntPolynomial hilbert_class_polynomial(const Discriminant& disc);

/// N(j - j0) = prod_i (j_i - j0) for a rational integer j0.
mpz_class norm_difference(const Discriminant& disc, const mpz_class& j0);

/// N(j - j0) for several rational j0 sharing one evaluation of the j_i.
std::vector<mpz_class> norm_differences(const Discriminant& disc, std::span<const mpz_class> j0s);

/// Res(H_disc, H_disc0) = prod over roots a of H_disc of H_disc0(a).
mpz_class resultant_norm(const Discriminant& disc, const Discriminant& disc0);

/// (1/C) sum_i log max(1, |j_i|), returned at 64 bits or more.
Real weil_height_singular(const Discriminant& disc);

}  // namespace cmsunit
