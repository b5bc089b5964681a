#include "cmsunit/intarith.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <string_view>
#include <utility>

#include "cmsunit/error.hpp"

namespace cmsunit {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

std::shared_ptr<const std::vector<std::uint32_t>> prime_table(std::uint32_t limit) {
  // Shared table, rebuilt only when a larger limit is asked for.
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint32_t>> table;
  static std::uint32_t covered = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || limit > covered) {
    table = std::make_shared<const std::vector<std::uint32_t>>(primes_up_to(limit));
    covered = limit;
  }
  return table;
}

void add_prime(Factorization& f, const mpz_class& p, unsigned e) {
  if (e > 0) f.primes[p] += e;
}

// n^(1/k) if n is an exact k-th power for some k >= 2 (largest such k), else n.
std::pair<mpz_class, unsigned> perfect_power_root(const mpz_class& n) {
  if (!mpz_perfect_power_p(n.get_mpz_t()) || n < 4) return {n, 1};
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = bits; k >= 2; --k) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return {r, static_cast<unsigned>(k)};
  }
  return {n, 1};
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
mpz_class pollard_brent(const mpz_class& n, u64 seed, u64 max_iterations) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  u64 state = seed ^ mpz_get_ui(n.get_mpz_t()) ^ 0x9e3779b97f4a7c15ULL;
  auto next = [&state]() {
    // splitmix64
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  u64 used = 0;
  while (used < max_iterations) {
    const mpz_class c = 1 + mpz_class(static_cast<unsigned long>(next() % 1000003));
    mpz_class y = mpz_class(static_cast<unsigned long>(next())) % n;
    mpz_class x, ys, q = 1, g = 1;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](mpz_class& v) {
      v = v * v + c;
      v %= n;
    };
    while (g == 1 && used < max_iterations) {
      x = y;
      for (u64 i = 0; i < r; ++i) f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          f(y);
          q = (q * abs(x - y)) % n;
        }
        used += lim;
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_cofactor(Factorization& out, const mpz_class& n, unsigned mult,
                     const FactorBudget& budget, std::vector<std::pair<mpz_class, unsigned>>& stuck) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    add_prime(out, n, mult);
    return;
  }
  auto [root, k] = perfect_power_root(n);
  if (k > 1) {
    factor_cofactor(out, root, mult * k, budget, stuck);
    return;
  }
  const mpz_class d = pollard_brent(n, budget.seed, budget.rho_iterations);
  if (d == 0) {
    stuck.emplace_back(n, mult);
    return;
  }
  mpz_class rest = n / d;
  factor_cofactor(out, d, mult, budget, stuck);
  factor_cofactor(out, rest, mult, budget, stuck);
}

// Polynomials over F_p with p < 2^63, ascending coefficients, trimmed.
using ModPoly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly reduce(const IntPolynomial& f, u64 p) {
  ModPoly out;
  for (const auto& c : f.coefficients()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

// a mod b, b nonzero.
ModPoly poly_mod(ModPoly a, const ModPoly& b, u64 p) {
  const u64 inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const u64 coef = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(coef, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) c[i + k] = (c[i + k] + mulmod(a[i], b[k], p)) % p;
  trim(c);
  return poly_mod(std::move(c), m, p);
}

ModPoly poly_gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IntPolynomial primitive_part(const IntPolynomial& f, mpz_class& content) {
  content = 0;
  for (const auto& c : f.coefficients()) content = gcd(content, c);
  std::vector<mpz_class> out;
  for (const auto& c : f.coefficients()) out.push_back(c / content);
  return IntPolynomial(std::move(out));
}

// lc(b)^(deg a - deg b + 1) * a mod b over Z.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<mpz_class> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  int e = a.degree() - db + 1;
  const mpz_class lb = b.leading();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const mpz_class lr = r.back();
    const std::size_t shift = r.size() - bc.size();
    for (auto& c : r) c *= lb;
    for (std::size_t i = 0; i < bc.size(); ++i) r[shift + i] -= lr * bc[i];
    --e;
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(std::max(e, 0)));
  for (auto& c : r) c *= scale;
  return IntPolynomial(std::move(r));
}

mpz_class pow(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

mpz_class Factorization::reconstruct() const {
  mpz_class n = sign;
  for (const auto& [p, e] : primes) n *= pow(p, static_cast<int>(e));
  return n * cofactor;
}

std::string Factorization::to_string() const {
  std::string out;
  for (const auto& [p, e] : primes) {
    if (!out.empty()) out += "*";
    out += p.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (cofactor != 1) {
    if (!out.empty()) out += "*";
    out += "C" + cofactor.get_str();
  }
  if (out.empty()) out = "1";
  return sign < 0 ? "-" + out : out;
}

Factorization Factorization::parse(const std::string& text) {
  Factorization f;
  std::string_view rest = text;
  auto bad = [&text]() { raise(ErrorKind::InvalidArgument, "malformed factorization '" + text + "'"); };
  if (!rest.empty() && rest.front() == '-') {
    f.sign = -1;
    rest.remove_prefix(1);
  }
  if (rest.empty()) bad();
  if (rest == "1") return f;
  while (!rest.empty()) {
    const auto star = rest.find('*');
    std::string_view item = rest.substr(0, star);
    rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star + 1);
    if (item.empty()) bad();
    if (item.front() == 'C') {
      mpz_class c;
      if (c.set_str(std::string(item.substr(1)), 10) != 0 || c < 2) bad();
      f.cofactor *= c;
      continue;
    }
    const auto caret = item.find('^');
    mpz_class p;
    if (p.set_str(std::string(item.substr(0, caret)), 10) != 0 || p < 2) bad();
    unsigned long e = 1;
    if (caret != std::string_view::npos) {
      const std::string exp(item.substr(caret + 1));
      if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos) bad();
      e = std::stoul(exp);
    }
    f.primes[p] += static_cast<unsigned>(e);
  }
  return f;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 k = i * i; k <= limit; k += i) composite[k] = true;
  }
  return out;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) raise(ErrorKind::ZeroInput, "valuation: n must be nonzero");
  if (p < 2) raise(ErrorKind::InvalidArgument, "valuation: p must be at least 2");
  mpz_class m = abs(n);
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

Factorization factor(const mpz_class& n, const FactorBudget& budget) {
  if (n == 0) raise(ErrorKind::ZeroInput, "factor: n must be nonzero");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  mpz_class m = abs(n);

  const auto limit = static_cast<std::uint32_t>(std::min<u64>(budget.trial_limit, 0xffffffffULL));
  const auto primes = prime_table(limit);
  // One multi-word remainder per group of primes whose product fits a limb.
  const auto& table = *primes;
  std::size_t i = 0;
  while (i < table.size() && table[i] <= limit && m != 1) {
    const u64 first = table[i];
    if (mpz_cmp_ui(m.get_mpz_t(), first * first) < 0) break;
    u64 prod = 1;
    std::size_t end = i;
    while (end < table.size() && table[end] <= limit &&
           static_cast<u128>(prod) * table[end] <= ~static_cast<u64>(0)) {
      prod *= table[end++];
    }
    const u64 r = mpz_fdiv_ui(m.get_mpz_t(), prod);
    for (; i < end; ++i) {
      const u64 p = table[i];
      if (r % p != 0) continue;
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      add_prime(out, mpz_class(static_cast<unsigned long>(p)), e);
    }
  }
  if (m == 1) return out;

  std::vector<std::pair<mpz_class, unsigned>> stuck;
  factor_cofactor(out, m, 1, budget, stuck);
  for (const auto& [c, e] : stuck) out.cofactor *= pow(c, static_cast<int>(e));
  return out;
}

bool splits_completely(const IntPolynomial& f, std::uint64_t ell) {
  if (ell < 2 || ell >= (1ULL << 63)) raise(ErrorKind::InvalidArgument, "splits_completely: bad prime");
  if (f.degree() < 1) return f.degree() == 0;
  ModPoly g = reduce(f, ell);
  if (static_cast<int>(g.size()) - 1 != f.degree()) return false;
  ModPoly dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(mulmod(g[i], i % ell, ell));
  trim(dg);
  if (dg.empty()) return false;
  if (poly_gcd(g, dg, ell).size() != 1) return false;

  // x^ell mod g by square and multiply.
  ModPoly result{1};
  ModPoly base = poly_mod(ModPoly{0, 1}, g, ell);
  for (u64 e = ell; e; e >>= 1) {
    if (e & 1) result = poly_mulmod(result, base, g, ell);
    base = poly_mulmod(base, base, g, ell);
  }
  const ModPoly x = poly_mod(ModPoly{0, 1}, g, ell);
  return result == x;
}

std::size_t count_roots_mod(const IntPolynomial& f, std::uint64_t ell) {
  const ModPoly g = reduce(f, ell);
  if (g.empty()) return static_cast<std::size_t>(ell);
  std::size_t count = 0;
  for (u64 x = 0; x < ell; ++x) {
    u64 acc = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) acc = (mulmod(acc, x, ell) + *it) % ell;
    if (acc == 0) ++count;
  }
  return count;
}

mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  IntPolynomial a = f, b = g;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -1;
  }
  if (b.degree() == 0) return s * pow(b.leading(), a.degree());

  mpz_class ca, cb;
  a = primitive_part(a, ca);
  b = primitive_part(b, cb);
  const mpz_class t = pow(ca, b.degree()) * pow(cb, a.degree());
  mpz_class gg = 1, h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPolynomial r = pseudo_remainder(a, b);
    a = b;
    if (r.is_zero()) return 0;
    const mpz_class div = gg * pow(h, delta);
    std::vector<mpz_class> rc = r.coefficients();
    for (auto& c : rc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    b = IntPolynomial(std::move(rc));
    gg = a.leading();
    // h <- h^(1 - delta) g^delta
    if (delta == 0) {
      // h unchanged
    } else {
      mpz_class num = pow(gg, delta);
      const mpz_class den = pow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.degree() == 0) {
      const int da = a.degree();
      mpz_class num = pow(b.leading(), da);
      const mpz_class den = pow(h, da - 1);
      mpz_class hh;
      mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * hh;
    }
  }
}

}  // namespace cmsunit
