#include "cmsunit/quadclass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmsunit/error.hpp"

namespace cmsunit {

namespace {

std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_squarefree(std::int64_t n) {
  n = n < 0 ? -n : n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool is_discriminant(std::int64_t n) noexcept {
  if (n >= 0) return false;
  const auto r = floor_mod(n, 4);
  return r == 0 || r == 1;
}

bool is_fundamental_discriminant(std::int64_t d) noexcept {
  if (!is_discriminant(d)) return false;
  if (floor_mod(d, 4) == 1) return is_squarefree(d);
  const auto m = d / 4;
  const auto r = floor_mod(m, 4);
  return (r == 2 || r == 3) && is_squarefree(m);
}

Decomposition decompose(std::int64_t value) {
  if (!is_discriminant(value)) {
    raise(ErrorKind::InvalidArgument, "not a negative discriminant: " + std::to_string(value));
  }
  // Largest f with value / f^2 still a discriminant; that quotient is fundamental.
  std::int64_t n = -value;
  std::int64_t f = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      const auto candidate = value / ((f * p) * (f * p));
      if (!is_discriminant(candidate)) break;
      f *= p;
      n /= p * p;
    }
    while (n % p == 0) n /= p;
  }
  return {f, value / (f * f)};
}

Discriminant::Discriminant(std::int64_t value) : value_(value) {
  const auto d = decompose(value);
  conductor_ = d.conductor;
  fundamental_ = d.fundamental;
}

bool QuadForm::is_reduced() const noexcept {
  const auto ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

bool QuadForm::is_primitive() const noexcept {
  return std::gcd(std::gcd(a, b), c) == 1;
}

bool QuadForm::is_ambiguous() const noexcept {
  return b == 0 || a == b || a == c;
}

std::string QuadForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

std::vector<QuadForm> reduced_forms(const Discriminant& disc) {
  const auto delta = disc.value();
  const auto n = -delta;
  std::vector<QuadForm> out;
  const auto bmax = isqrt(n / 3);
  for (std::int64_t b = (n & 1); b <= bmax; b += 2) {
    const auto m = (b * b - delta) / 4;  // = a*c
    const auto amax = isqrt(m);
    for (std::int64_t a = std::max<std::int64_t>(b, 1); a <= amax; ++a) {
      if (m % a != 0) continue;
      const auto c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
      if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t class_number(const Discriminant& disc) {
  return static_cast<std::int64_t>(reduced_forms(disc).size());
}

int kronecker(std::int64_t d, std::int64_t n) noexcept {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) result = -result;
  }
  // Factor out powers of two using (d/2).
  while ((n & 1) == 0) {
    n >>= 1;
    if ((d & 1) == 0) return 0;
    const auto r = floor_mod(d, 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d/n) for odd n.
  std::int64_t a = floor_mod(d, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const auto r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool ring_class_field_real_part_is_galois(const Discriminant& disc) {
  const auto forms = reduced_forms(disc);
  return std::all_of(forms.begin(), forms.end(),
                     [](const QuadForm& f) { return f.is_ambiguous(); });
}

}  // namespace cmsunit
