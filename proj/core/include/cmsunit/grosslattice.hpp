#pragma once

// Ternary quadratic forms of Gross lattices, representation search, local
// valuation bounds and the j0 = 0 witness family.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmsunit/quadclass.hpp"

namespace cmsunit {

using Triple = std::array<std::int64_t, 3>;

/// Q(X,Y,Z) = q11 X^2 + q22 Y^2 + q33 Z^2 + q12 XY + q13 XZ + q23 YZ.
/// Coefficients may be half-integers, so they are stored doubled.
class TernaryForm {
 public:
  /// Integer coefficients; throws InvalidArgument unless positive definite.
  TernaryForm(std::int64_t q11, std::int64_t q22, std::int64_t q33, std::int64_t q12,
              std::int64_t q13, std::int64_t q23);
  /// Doubled coefficients (2*q11, ..., 2*q23).
  static TernaryForm from_doubled(const std::array<std::int64_t, 6>& twice);

  /// 2Q coefficient order: q11, q22, q33, q12, q13, q23.
  const std::array<std::int64_t, 6>& doubled() const noexcept { return twice_; }
  double coefficient(int i) const { return static_cast<double>(twice_.at(i)) / 2.0; }

  /// 2 Q(x, y, z), exact.
  mpz_class evaluate_doubled(const Triple& v) const;
  /// Q(x, y, z) when it is an integer; throws NonIntegral otherwise.
  mpz_class evaluate(const Triple& v) const;

  bool positive_definite() const;
  /// "7X^2 + 20Y^2 + 280Z^2 - 140YZ".
  std::string to_string() const;

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;

 private:
  TernaryForm() = default;
  std::array<std::int64_t, 6> twice_{};
};

/// Q_{l,n} = |D0| X^2 + 4 l^(2n+1) Y^2 + l^(2n+1)(D0^2 + |D0|) Z^2 + 4 l^(2n+1) D0 YZ.
TernaryForm gross_form(const Discriminant& disc0, std::int64_t ell, unsigned n);

/// The diagonal form |D0| X^2 + 4 l^(2n+1) Y^2 + l^(2n+1)|D0| Z^2 reached from
/// gross_form by Y -> Y + D0 Z / 2.
TernaryForm gross_form_diagonal(const Discriminant& disc0, std::int64_t ell, unsigned n);

/// 3X^2 + l^(2n)(4l+1)/3 Y^2 + 4 l^(2n+1) Z^2 + 2 l^n XY - 4 l^(2n+1) YZ.
/// Throws NonIntegral unless l = 2 mod 3, InvalidArgument if l < 5.
TernaryForm gross_form_j0(std::int64_t ell, unsigned n);

/// Every (x,y,z) with Q = m (gcd 1 when primitive), sorted by L1 norm and
/// then descending lexicographically. Exhaustive over the ellipsoid Q <= m.
std::vector<Triple> representations(const TernaryForm& q, std::int64_t m, bool primitive);

/// First entry of representations(), if any.
std::optional<Triple> represents(const TernaryForm& q, std::int64_t m, bool primitive);

/// O_{D0} is contained in O_D: same field and conductor(D) | conductor(D0).
bool order_contains(const Discriminant& outer, const Discriminant& inner);

/// (d0/2)(log(D0^2 |D|)/(2 log l) + 1/2) when l does not divide D, else d0/2.
/// Throws CaseUndefined in the first branch when O_{D0} is contained in O_D,
/// InvalidArgument when l | D0 or D == D0.
double valuation_bound(const Discriminant& disc0, const Discriminant& disc, std::int64_t ell,
                       int d0);

/// -(3 + 4 l^(2n+1)); l >= 5 prime with l = 2 mod 3, else InvalidArgument.
Discriminant witness_discriminant(std::int64_t ell, unsigned n);

struct WitnessReport {
  std::int64_t ell = 0;
  unsigned n = 0;
  std::int64_t disc = 0;
  unsigned predicted = 0;  // 3(n + 1)
  unsigned observed = 0;   // v_l(|H_D(0)|)
  bool pass = false;
};

/// Computes H_D(0) for the witness discriminant and its l-adic valuation.
WitnessReport verify_witness(std::int64_t ell, unsigned n);

}  // namespace cmsunit
