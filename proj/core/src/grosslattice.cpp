#include "cmsunit/grosslattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "cmsunit/error.hpp"
#include "cmsunit/intarith.hpp"
#include "cmsunit/modfun.hpp"

namespace cmsunit {

namespace {

__extension__ using i128 = __int128;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) raise(ErrorKind::InvalidArgument, "coefficient overflow");
  return r;
}

std::int64_t checked_pow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

void require_prime(std::int64_t ell, const char* what) {
  if (ell < 2 || !is_probable_prime(mpz_class(static_cast<long>(ell)))) {
    raise(ErrorKind::InvalidArgument, std::string(what) + ": " + std::to_string(ell) + " is not prime");
  }
}

// 4A for the Gram matrix A of Q, i.e. [[2d11, d12, d13], [d12, 2d22, d23], [d13, d23, 2d33]]
// with d the doubled coefficients.
std::array<std::array<mpz_class, 3>, 3> gram4(const std::array<std::int64_t, 6>& d) {
  auto z = [](std::int64_t v) { return mpz_class(static_cast<long>(v)); };
  return {{{z(2 * d[0]), z(d[3]), z(d[4])},
           {z(d[3]), z(2 * d[1]), z(d[5])},
           {z(d[4]), z(d[5]), z(2 * d[2])}}};
}

mpz_class det3(const std::array<std::array<mpz_class, 3>, 3>& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

std::string term(std::int64_t coeff2, const char* var, bool first) {
  // coeff2 is twice the coefficient
  if (coeff2 == 0) return "";
  std::string out;
  const bool neg = coeff2 < 0;
  const std::int64_t mag = std::llabs(coeff2);
  if (first) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  std::string num = (mag % 2 == 0) ? std::to_string(mag / 2) : std::to_string(mag) + "/2";
  if (num != "1") out += num;
  return out + var;
}

}  // namespace

TernaryForm::TernaryForm(std::int64_t q11, std::int64_t q22, std::int64_t q33, std::int64_t q12,
                         std::int64_t q13, std::int64_t q23) {
  twice_ = {checked_mul(2, q11), checked_mul(2, q22), checked_mul(2, q33),
            checked_mul(2, q12), checked_mul(2, q13), checked_mul(2, q23)};
  if (!positive_definite()) raise(ErrorKind::InvalidArgument, "ternary form is not positive definite");
}

TernaryForm TernaryForm::from_doubled(const std::array<std::int64_t, 6>& twice) {
  TernaryForm f;
  f.twice_ = twice;
  if (!f.positive_definite()) raise(ErrorKind::InvalidArgument, "ternary form is not positive definite");
  return f;
}

mpz_class TernaryForm::evaluate_doubled(const Triple& v) const {
  const mpz_class x = static_cast<long>(v[0]), y = static_cast<long>(v[1]),
                  z = static_cast<long>(v[2]);
  auto c = [this](int i) { return mpz_class(static_cast<long>(twice_[static_cast<std::size_t>(i)])); };
  return c(0) * x * x + c(1) * y * y + c(2) * z * z + c(3) * x * y + c(4) * x * z + c(5) * y * z;
}

mpz_class TernaryForm::evaluate(const Triple& v) const {
  const mpz_class t = evaluate_doubled(v);
  if (!mpz_even_p(t.get_mpz_t())) raise(ErrorKind::NonIntegral, "form value is a half-integer");
  return t / 2;
}

bool TernaryForm::positive_definite() const {
  const auto g = gram4(twice_);
  const mpz_class m1 = g[0][0];
  const mpz_class m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  return m1 > 0 && m2 > 0 && det3(g) > 0;
}

std::string TernaryForm::to_string() const {
  static const char* vars[6] = {"X^2", "Y^2", "Z^2", "XY", "XZ", "YZ"};
  std::string out;
  for (int i = 0; i < 6; ++i) out += term(twice_[static_cast<std::size_t>(i)], vars[i], out.empty());
  return out.empty() ? "0" : out;
}

TernaryForm gross_form(const Discriminant& disc0, std::int64_t ell, unsigned n) {
  require_prime(ell, "gross_form");
  if (disc0.value() % ell == 0) raise(ErrorKind::InvalidArgument, "gross_form: l divides D0");
  const std::int64_t d = disc0.abs();
  const std::int64_t p = checked_pow(ell, 2 * n + 1);
  return TernaryForm(d, checked_mul(4, p), checked_mul(p, checked_mul(d, d) + d), 0, 0,
                     checked_mul(checked_mul(4, p), disc0.value()));
}

TernaryForm gross_form_diagonal(const Discriminant& disc0, std::int64_t ell, unsigned n) {
  require_prime(ell, "gross_form_diagonal");
  const std::int64_t d = disc0.abs();
  const std::int64_t p = checked_pow(ell, 2 * n + 1);
  return TernaryForm(d, checked_mul(4, p), checked_mul(p, d), 0, 0, 0);
}

TernaryForm gross_form_j0(std::int64_t ell, unsigned n) {
  require_prime(ell, "gross_form_j0");
  if (ell < 5) raise(ErrorKind::InvalidArgument, "gross_form_j0: l must be at least 5");
  if (ell % 3 != 2) {
    raise(ErrorKind::NonIntegral, "gross_form_j0: (4l+1)/3 is not integral for l = " + std::to_string(ell));
  }
  const std::int64_t ln = checked_pow(ell, n);
  const std::int64_t l2n = checked_mul(ln, ln);
  const std::int64_t l2n1 = checked_mul(l2n, ell);
  return TernaryForm(3, checked_mul(l2n, (4 * ell + 1) / 3), checked_mul(4, l2n1), checked_mul(2, ln),
                     0, checked_mul(-4, l2n1));
}

std::vector<Triple> representations(const TernaryForm& q, std::int64_t m, bool primitive) {
  std::vector<Triple> out;
  if (m < 0) return out;
  const auto& d = q.doubled();
  const auto g = gram4(d);
  const long double det = det3(g).get_d();
  // |x_i| <= sqrt(m * (A^-1)_ii) = sqrt(4 m cof_ii(G) / det G)
  auto cof = [&](int i) {
    const int a = (i + 1) % 3, b = (i + 2) % 3;
    return mpz_class(g[a][a] * g[b][b] - g[a][b] * g[b][a]).get_d();
  };
  auto bound = [&](int i) {
    return static_cast<std::int64_t>(std::floor(std::sqrt(4.0L * m * cof(i) / det))) + 1;
  };
  const std::int64_t by = bound(1), bz = bound(2);
  const i128 target = static_cast<i128>(2) * m;
  const i128 a = d[0];
  mpz_class disc_z, root;
  for (std::int64_t z = -bz; z <= bz; ++z) {
    for (std::int64_t y = -by; y <= by; ++y) {
      // d0 x^2 + B x + C = 2m
      const i128 b = static_cast<i128>(d[3]) * y + static_cast<i128>(d[4]) * z;
      const i128 c = static_cast<i128>(d[1]) * y * y + static_cast<i128>(d[2]) * z * z +
                     static_cast<i128>(d[5]) * y * z - target;
      const i128 disc = b * b - 4 * a * c;
      if (disc < 0) continue;
      // disc fits comfortably in 128 bits at witness scale; go through mpz for the root.
      const std::int64_t hi = static_cast<std::int64_t>(disc >> 62);
      const std::uint64_t lo = static_cast<std::uint64_t>(disc & ((static_cast<i128>(1) << 62) - 1));
      disc_z = mpz_class(static_cast<long>(hi));
      disc_z <<= 62;
      disc_z += mpz_class(static_cast<unsigned long>(lo));
      if (!mpz_perfect_square_p(disc_z.get_mpz_t())) continue;
      mpz_sqrt(root.get_mpz_t(), disc_z.get_mpz_t());
      const i128 r = static_cast<i128>(root.get_si());
      for (const i128 num : {-b + r, -b - r}) {
        if (num % (2 * a) != 0) continue;
        const auto x = static_cast<std::int64_t>(num / (2 * a));
        const Triple t{x, y, z};
        if (primitive && std::gcd(std::gcd(x, y), z) != 1) continue;
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
        if (r == 0) break;
      }
    }
  }
  auto l1 = [](const Triple& t) { return std::llabs(t[0]) + std::llabs(t[1]) + std::llabs(t[2]); };
  std::sort(out.begin(), out.end(), [&](const Triple& u, const Triple& v) {
    if (l1(u) != l1(v)) return l1(u) < l1(v);
    return u > v;
  });
  return out;
}

std::optional<Triple> represents(const TernaryForm& q, std::int64_t m, bool primitive) {
  auto all = representations(q, m, primitive);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool order_contains(const Discriminant& outer, const Discriminant& inner) {
  return outer.fundamental() == inner.fundamental() && inner.conductor() % outer.conductor() == 0;
}

double valuation_bound(const Discriminant& disc0, const Discriminant& disc, std::int64_t ell, int d0) {
  require_prime(ell, "valuation_bound");
  if (d0 < 2 || d0 % 2 != 0) raise(ErrorKind::InvalidArgument, "valuation_bound: d0 must be even and >= 2");
  if (disc0.value() % ell == 0) raise(ErrorKind::InvalidArgument, "valuation_bound: l divides D0");
  if (disc == disc0) raise(ErrorKind::InvalidArgument, "valuation_bound: D equals D0");
  const double half = d0 / 2.0;
  if (disc.value() % ell == 0) return half;
  if (order_contains(disc, disc0)) {
    raise(ErrorKind::CaseUndefined,
          "valuation_bound: O_D0 is contained in O_D for D=" + std::to_string(disc.value()));
  }
  const double d0sq = static_cast<double>(disc0.abs()) * static_cast<double>(disc0.abs());
  return half * (std::log(d0sq * static_cast<double>(disc.abs())) /
                     (2.0 * std::log(static_cast<double>(ell))) +
                 0.5);
}

Discriminant witness_discriminant(std::int64_t ell, unsigned n) {
  require_prime(ell, "witness_discriminant");
  if (ell < 5 || ell % 3 != 2) {
    raise(ErrorKind::InvalidArgument, "witness_discriminant: need l >= 5 and l = 2 mod 3");
  }
  const std::int64_t p = checked_pow(ell, 2 * n + 1);
  const std::int64_t d = -(3 + checked_mul(4, p));
  Discriminant disc(d);  // d = 1 mod 4 by construction
  if (d % ell == 0) raise(ErrorKind::InvalidArgument, "witness_discriminant: l divides D");
  return disc;
}

WitnessReport verify_witness(std::int64_t ell, unsigned n) {
  const Discriminant disc = witness_discriminant(ell, n);
  WitnessReport r;
  r.ell = ell;
  r.n = n;
  r.disc = disc.value();
  r.predicted = 3 * (n + 1);
  const mpz_class norm = norm_difference(disc, 0);
  r.observed = valuation(norm, mpz_class(static_cast<long>(ell)));
  r.pass = r.observed >= r.predicted;
  return r;
}

}  // namespace cmsunit
