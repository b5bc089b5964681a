#pragma once

// Exact integer support: factoring, valuations, resultants and complete
// splitting of integer polynomials modulo a prime.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmsunit/polynomial.hpp"

namespace cmsunit {

/// Work budget for factor().
struct FactorBudget {
  /// Trial division by every prime up to this bound (capped at 10^6 primes table).
  std::uint64_t trial_limit = 1'000'000;
  /// Pollard-rho iterations per composite cofactor before giving up.
  std::uint64_t rho_iterations = 200'000;
  /// Seed mixed into the rho start value; 0 derives it from the input only.
  std::uint64_t seed = 0;
};

/// sign * prod p^e * cofactor, where cofactor is 1 when the factorization is
/// complete and otherwise a composite that the budget could not split.
struct Factorization {
  int sign = 1;
  std::map<mpz_class, unsigned> primes;
  mpz_class cofactor = 1;

  bool complete() const { return cofactor == 1; }
  std::size_t distinct_primes() const noexcept { return primes.size(); }
  mpz_class reconstruct() const;
  /// "-2^15*3", "1" for the unit, "C<n>" marks an unfactored cofactor.
  std::string to_string() const;
  /// Inverse of to_string(); throws InvalidArgument on malformed input.
  static Factorization parse(const std::string& text);

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Factors n != 0; throws Error(ZeroInput) for n == 0.
Factorization factor(const mpz_class& n, const FactorBudget& budget = {});

/// Strong probable-prime test (deterministic below 3.3e24).
bool is_probable_prime(const mpz_class& n);

/// Largest e with p^e | n, computed by repeated exact division; throws
/// Error(ZeroInput) for n == 0.
unsigned valuation(const mpz_class& n, const mpz_class& p);

/// Primes up to limit (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// True iff f mod ell is squarefree of full degree and has deg f distinct
/// roots in F_ell, tested as gcd(f, f') = 1 and x^ell == x mod (f, ell).
bool splits_completely(const IntPolynomial& f, std::uint64_t ell);

/// Number of roots of f in F_ell by exhaustive evaluation (test oracle helper).
std::size_t count_roots_mod(const IntPolynomial& f, std::uint64_t ell);

/// Res(f, g) via the subresultant remainder sequence. For monic f this equals
/// prod over roots a of f of g(a); Res(f, g) = (-1)^(deg f deg g) Res(g, f).
mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g);

}  // namespace cmsunit
