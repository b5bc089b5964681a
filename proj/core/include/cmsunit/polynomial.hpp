#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace cmsunit {

/// Dense univariate polynomial over Z, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial monomial(long coefficient, int degree);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  const mpz_class& leading() const { return coeffs_.back(); }
  /// Coefficient of x^i, zero outside the stored range.
  mpz_class coefficient(int i) const;
  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }

  mpz_class evaluate(const mpz_class& x) const;
  IntPolynomial derivative() const;

  /// Renders e.g. "x^2 - 3x + 1"; zero renders as "0".
  std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

}  // namespace cmsunit
