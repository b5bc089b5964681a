#pragma once

// S-unit scans of N(j - j0) over discriminants, the summary tables built
// from them, and structural audits of the hits.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cmsunit/intarith.hpp"
#include "cmsunit/polynomial.hpp"
#include "cmsunit/quadclass.hpp"

namespace cmsunit {

struct SurveyRecord {
  std::int64_t delta = 0;
  std::int64_t class_number = 0;
  Factorization norm;  // of N(j - j0), never zero

  bool complete() const { return norm.complete(); }
  /// Distinct primes dividing the norm; a lower bound when incomplete.
  std::size_t s() const { return norm.distinct_primes(); }
  /// Smallest s the record could still have: an unsplit cofactor is composite,
  /// so it hides at least one more prime.
  std::size_t s_lower_bound() const { return s() + (complete() ? 0 : 1); }
  friend bool operator==(const SurveyRecord&, const SurveyRecord&) = default;
};

struct ScanOptions {
  std::int64_t min_abs = 3;
  std::int64_t max_abs = 0;
  unsigned jobs = 1;
  FactorBudget budget{};
  /// When set, finished blocks are appended here and a rerun resumes after
  /// the last finished block.
  std::string checkpoint_path;
  /// Called after each block with the largest |D| finished.
  std::function<void(std::int64_t)> progress;
};

inline constexpr std::int64_t kCheckpointBlock = 1000;

/// One record per discriminant with min_abs <= |D| <= max_abs and nonzero
/// norm, in increasing |D|, for each j0 (outer index follows j0s). The j_i
/// are evaluated once per discriminant and shared across j0s. The output is
/// independent of jobs.
std::vector<std::vector<SurveyRecord>> scan_many(std::span<const mpz_class> j0s, const ScanOptions& opt);

std::vector<SurveyRecord> scan(const mpz_class& j0, const ScanOptions& opt);

/// Records with s <= s_max (complete ones only).
std::vector<SurveyRecord> flagged(const std::vector<SurveyRecord>& records, std::size_t s_max);

struct TableRow {
  std::size_t s = 0;
  std::size_t count = 0;                  // #J_s(A): records with s(record) <= s
  std::optional<std::int64_t> delta_max;  // largest |D| among them
  std::set<mpz_class> primes_at_most;     // union over records with s(record) <= s
  std::set<mpz_class> primes_exactly;     // union over records with s(record) == s
};

/// Rows s = 1..s_max. Throws IncompleteFactorization when an incomplete record
/// could have s <= s_max. Norms of absolute value 1 have s = 0 and are counted.
std::vector<TableRow> table(const std::vector<SurveyRecord>& records, std::size_t s_max);

struct NicePair {
  std::int64_t disc0 = 0;
  IntPolynomial hilbert;
  std::vector<std::int64_t> primes;
  double height_j0 = 0;  // Weil height of j0
  bool valid = false;
  std::vector<std::string> failures;  // e.g. "7: divides D0"
};

/// Checks both nice-pair conditions for every prime of S.
NicePair check_nice_pair(const Discriminant& disc0, std::span<const std::int64_t> primes);

/// Hits for the pn audit: discriminants where N(j - j0) is an S-unit.
struct PnRecord {
  std::int64_t delta = 0;
  Factorization norm;
};

/// Reports every record whose norm is an S-unit but whose discriminant is not
/// p^n D0 with p in S and n >= 0.
std::vector<std::int64_t> audit_pn_structure(const std::vector<PnRecord>& records,
                                             const Discriminant& disc0,
                                             std::span<const std::int64_t> primes);

/// Scans |D| <= max_abs against a non-rational j0 through resultants and
/// returns the S-unit hits, for use with audit_pn_structure.
std::vector<PnRecord> scan_resultant(const Discriminant& disc0, std::span<const std::int64_t> primes,
                                     std::int64_t max_abs, const FactorBudget& budget = {});

/// Discriminants of records where some p = 1 mod 4 divides the norm but fewer
/// than three distinct primes not = 1 mod 4 do.
std::vector<std::int64_t> audit_mod4(const std::vector<SurveyRecord>& records);

}  // namespace cmsunit
