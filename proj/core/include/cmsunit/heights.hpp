#pragma once

// Explicit height bounds for differences of singular moduli: the majorants
// A, B, C, D and their threshold, the j - 1728 and j - 0 variants, and the
// Faltings-height lower bound under property P(k).
//
// Large discriminants are passed as L = log|D| so that thresholds far beyond
// any floating exponent range can still be located.

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "cmsunit/quadclass.hpp"

namespace cmsunit {

using Float = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Comparisons against reference constants use this slack.
inline constexpr double kBoundTolerance = 1e-9;

/// 2^k with k the largest number of distinct primes whose product is <= sqrt(n).
mpz_class compute_F(const mpz_class& abs_disc);

/// Same, returning only k.
unsigned compute_F_exponent(const mpz_class& abs_disc);

/// Upper bound for log(F log|D|) from omega(n) <= log n / (log log n - c1):
/// (log 2 / 2) L / (log L - c1 - log 2) + log L. DomainError when the
/// denominator is not positive.
Float log_F_logD_majorant(const Float& log_abs, double c1);

/// The pair (j0, {l, L}) with l < L the two primes of S.
struct BoundInputs {
  std::int64_t disc0 = -7;
  std::int64_t class_number0 = 1;  // C0 in the majorant for A
  Float h_j0 = 0;                  // log|j0| for rational j0
  std::int64_t ell = 13;           // min S
  std::int64_t big_ell = 17;       // max S
  double c1 = 1.1714;
};

struct BoundBreakdown {
  Float log_abs;  // L = log|D|
  Float Y;        // (3/sqrt 5) L - 9.78
  Float A, B, C, D;
  Float K;
  double c1 = 0;
  Float gamma;
  Float epsilon_sum;  // A + B + C + (D - sqrt5/3)
  Float total;        // A + B + C + D
};

/// Majorants at |D| = e^L. DomainError unless |D| > 10^15, Y > 0 and
/// log L > c1 + log 2.
BoundBreakdown majorants_log(const BoundInputs& in, const Float& log_abs);
BoundBreakdown majorants(const BoundInputs& in, const Float& abs_disc);

struct GridOptions {
  double ratio = 1.333521432163324;  // 10^(1/8)
  double ceiling = 1e100;
};

struct Threshold {
  Float log_abs;                  // natural log of B
  std::optional<mpz_class> value; // ceil(B) when B <= 10^1000
  bool extended = false;          // found only in the log log phase
  double c1 = 0;
  std::string describe() const;   // "1.234567e+81", or "exp(exp(117.389077))" when huge
};

/// Smallest grid point B >= 10^15 (refined by bisection in log|D|) with
/// total < 1 at B and at every grid point up to 10 B. NotFound past the ceiling.
Threshold find_threshold(const BoundInputs& in, const GridOptions& grid = {});

/// 4F L/C + 2 log(F e^(L/2) L / C) - 2.68 + max{log(16|D|) + log l, 2 log l}.
/// DomainError below |D| = 10^14 or for l < 5.
Float height_upper_1728(const Float& abs_disc, const mpz_class& class_number, const mpz_class& F,
                        std::int64_t ell);

/// 12F L/C + 3 log(F e^(L/2) L / C) - 3.77 + max{(3/2)(log(9|D|) + log l), 3 log l}.
Float height_upper_0(const Float& abs_disc, const mpz_class& class_number, const mpz_class& F,
                     std::int64_t ell);

/// Euler-Mascheroni constant at working precision.
Float euler_gamma();

/// C0(k) = (gamma + log 2 pi + k)/2 + 0.0605.
Float pk_constant(double k);

/// 1.509 log|D| - 12 C0(k) + 8.64. InvalidArgument for k < 0 or |D| < 3.
Float height_lower_pk(const Float& abs_disc, double k);

/// (1 - chi)/(p - chi) * (1 - p^-v)/(1 - p^-1), exact.
mpq_class e_f(std::uint64_t p, int chi, unsigned vpf);

/// 0.2485 log n - sum_{p | n} log p/(p+1) * (1 - p^-v)/(1 - p^-1).
Float delta_fn(std::uint64_t n);

/// Lower minus upper bound for h(j - 1728) at the least favourable class
/// number; positive means no {l}-unit j - 1728 can have |D| = e^L.
Float gap_1728(const Float& log_abs, std::int64_t ell, double c1);
/// Same for h(j) with j0 = 0 under P(k).
Float gap_0(const Float& log_abs, std::int64_t ell, double k, double c1);

/// Thresholds for the two variants: smallest B >= 10^14 past which the gap
/// stays positive. The search continues in log log space past the ceiling.
Threshold find_threshold_1728(std::int64_t ell, double c1, const GridOptions& grid = {});
Threshold find_threshold_0(std::int64_t ell, double k, double c1, const GridOptions& grid = {});

}  // namespace cmsunit
