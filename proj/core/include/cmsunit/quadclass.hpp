#pragma once

// Negative discriminants, reduced binary quadratic forms and class numbers.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cmsunit {

/// True iff n < 0 and n is 0 or 1 modulo 4.
bool is_discriminant(std::int64_t n) noexcept;

/// True iff d is the discriminant of an imaginary quadratic field.
bool is_fundamental_discriminant(std::int64_t d) noexcept;

/// A negative discriminant together with its decomposition value = f^2 * fundamental.
class Discriminant {
 public:
  /// Throws Error(InvalidArgument) unless is_discriminant(value).
  explicit Discriminant(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  std::int64_t conductor() const noexcept { return conductor_; }
  std::int64_t fundamental() const noexcept { return fundamental_; }
  std::int64_t abs() const noexcept { return -value_; }

  friend bool operator==(const Discriminant& a, const Discriminant& b) noexcept {
    return a.value_ == b.value_;
  }
  friend auto operator<=>(const Discriminant& a, const Discriminant& b) noexcept {
    return b.value_ <=> a.value_;  // ordered by |value|
  }

 private:
  std::int64_t value_;
  std::int64_t conductor_;
  std::int64_t fundamental_;
};

struct Decomposition {
  std::int64_t conductor;
  std::int64_t fundamental;
};

/// Splits value = f^2 * d_K with d_K fundamental. Requires is_discriminant(value).
Decomposition decompose(std::int64_t value);

/// Integral binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const noexcept { return b * b - 4 * a * c; }
  bool is_reduced() const noexcept;
  bool is_primitive() const noexcept;
  /// Ambiguous classes are exactly those of order dividing 2.
  bool is_ambiguous() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

/// One reduced primitive form per class, sorted lexicographically by (a, b, c).
std::vector<QuadForm> reduced_forms(const Discriminant& disc);

/// Number of classes of primitive positive-definite forms of the discriminant.
std::int64_t class_number(const Discriminant& disc);

/// Kronecker symbol (d / n) for n >= 1.
int kronecker(std::int64_t d, std::int64_t n) noexcept;

/// True iff Q(j) is Galois over Q for j of this discriminant, i.e. every class
/// has order at most 2.
bool ring_class_field_real_part_is_galois(const Discriminant& disc);

}  // namespace cmsunit
