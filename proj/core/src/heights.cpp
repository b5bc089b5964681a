#include "cmsunit/heights.hpp"

#include <boost/math/constants/constants.hpp>
#include <algorithm>
#include <map>
#include <vector>

#include "cmsunit/error.hpp"
#include "cmsunit/intarith.hpp"

namespace cmsunit {

namespace {

const Float& pi() {
  static const Float v = boost::math::constants::pi<Float>();
  return v;
}

const Float& sqrt5_over_3() {
  static const Float v = sqrt(Float(5)) / 3;
  return v;
}

const Float& log2f() {
  static const Float v = log(Float(2));
  return v;
}

Float larger(const Float& a, const Float& b) { return a < b ? b : a; }

Float from_mpz(const mpz_class& z) { return Float(z.get_str()); }

void require_ell(std::int64_t ell, const char* what) {
  if (ell < 5 || !is_probable_prime(mpz_class(static_cast<long>(ell)))) {
    raise(ErrorKind::DomainError, std::string(what) + ": l must be a prime >= 5");
  }
}

void require_1e14(const Float& abs_disc, const char* what) {
  if (abs_disc < Float(1e14)) raise(ErrorKind::DomainError, std::string(what) + ": needs |D| >= 10^14");
}

}  // namespace

unsigned compute_F_exponent(const mpz_class& abs_disc) {
  if (abs_disc < 1) raise(ErrorKind::InvalidArgument, "compute_F: |D| must be positive");
  unsigned k = 0;
  mpz_class prod = 1, p = 2;
  for (;;) {
    const mpz_class next = prod * p;
    if (next * next > abs_disc) break;
    prod = next;
    ++k;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return k;
}

mpz_class compute_F(const mpz_class& abs_disc) {
  mpz_class f;
  mpz_ui_pow_ui(f.get_mpz_t(), 2, compute_F_exponent(abs_disc));
  return f;
}

Float log_F_logD_majorant(const Float& log_abs, double c1) {
  const Float ll = log(log_abs);
  const Float denom = ll - Float(c1) - log2f();
  if (denom <= 0) raise(ErrorKind::DomainError, "log log|D| must exceed c1 + log 2");
  return log2f() / 2 * log_abs / denom + ll;
}

BoundBreakdown majorants_log(const BoundInputs& in, const Float& log_abs) {
  static const Float log_1e15 = 15 * log(Float(10));
  if (log_abs <= log_1e15) raise(ErrorKind::DomainError, "majorants: needs |D| > 10^15");
  if (in.disc0 >= 0 || in.class_number0 < 1) raise(ErrorKind::InvalidArgument, "majorants: bad D0 or C0");
  if (in.ell < 2 || in.big_ell < in.ell) raise(ErrorKind::InvalidArgument, "majorants: need l <= L");
  const Float d0 = Float(-in.disc0);
  const Float log_ell = log(Float(in.ell));
  const Float log_big = log(Float(in.big_ell));
  if (log_abs < log(log_ell / (d0 * d0))) raise(ErrorKind::DomainError, "majorants: |D| < log l / D0^2");

  BoundBreakdown b;
  b.log_abs = log_abs;
  b.c1 = in.c1;
  b.gamma = euler_gamma();
  b.Y = 3 / sqrt(Float(5)) * log_abs - Float("9.78");
  if (b.Y <= 0) raise(ErrorKind::DomainError, "majorants: Y(D) is not positive");
  b.K = 4 * log(d0) + in.h_j0 + Float("1.33") + log2f();
  b.A = 8 * Float(in.class_number0) / pi() * exp(-Float("0.1908") * log_abs);
  b.B = (log_F_logD_majorant(log_abs, in.c1) + b.K) / b.Y;
  b.C = log(b.Y / pi()) / b.Y;
  b.D = sqrt5_over_3() + (sqrt5_over_3() * Float("9.78") + log_big * (log(d0 * d0) / log_ell + 1)) / b.Y;
  b.epsilon_sum = b.A + b.B + b.C + (b.D - sqrt5_over_3());
  b.total = b.A + b.B + b.C + b.D;
  return b;
}

BoundBreakdown majorants(const BoundInputs& in, const Float& abs_disc) {
  if (abs_disc <= 0) raise(ErrorKind::DomainError, "majorants: |D| must be positive");
  return majorants_log(in, log(abs_disc));
}

Float height_upper_1728(const Float& abs_disc, const mpz_class& class_number, const mpz_class& F,
                        std::int64_t ell) {
  require_1e14(abs_disc, "height_upper_1728");
  require_ell(ell, "height_upper_1728");
  if (class_number < 1 || F < 1) raise(ErrorKind::InvalidArgument, "height_upper_1728: bad C or F");
  const Float L = log(abs_disc);
  const Float c = from_mpz(class_number), f = from_mpz(F);
  const Float log_ell = log(Float(ell));
  const Float arch = 4 * f * L / c + 2 * log(f * sqrt(abs_disc) * L / c) - Float("2.68");
  const Float nonarch = larger(log(16 * abs_disc) + log_ell, 2 * log_ell);
  return arch + nonarch;
}

Float height_upper_0(const Float& abs_disc, const mpz_class& class_number, const mpz_class& F,
                     std::int64_t ell) {
  require_1e14(abs_disc, "height_upper_0");
  require_ell(ell, "height_upper_0");
  if (class_number < 1 || F < 1) raise(ErrorKind::InvalidArgument, "height_upper_0: bad C or F");
  const Float L = log(abs_disc);
  const Float c = from_mpz(class_number), f = from_mpz(F);
  const Float log_ell = log(Float(ell));
  const Float arch = 12 * f * L / c + 3 * log(f * sqrt(abs_disc) * L / c) - Float("3.77");
  const Float nonarch = larger(Float(3) / 2 * (log(9 * abs_disc) + log_ell), 3 * log_ell);
  return arch + nonarch;
}

Float euler_gamma() {
  static const Float v = boost::math::constants::euler<Float>();
  return v;
}

Float pk_constant(double k) {
  if (k < 0) raise(ErrorKind::InvalidArgument, "property P(k) needs k >= 0");
  return (euler_gamma() + log(2 * pi()) + Float(k)) / 2 + Float("0.0605");
}

Float height_lower_pk(const Float& abs_disc, double k) {
  if (abs_disc < 3) raise(ErrorKind::InvalidArgument, "height_lower_pk: |D| >= 3 required");
  return Float("1.509") * log(abs_disc) - 12 * pk_constant(k) + Float("8.64");
}

mpq_class e_f(std::uint64_t p, int chi, unsigned vpf) {
  if (vpf < 1) raise(ErrorKind::InvalidArgument, "e_f: v_p(f) must be >= 1");
  if (p < 2 || chi < -1 || chi > 1) raise(ErrorKind::InvalidArgument, "e_f: bad p or chi");
  const mpz_class P = static_cast<unsigned long>(p);
  mpz_class pv;
  mpz_pow_ui(pv.get_mpz_t(), P.get_mpz_t(), vpf);
  // (1 - p^-v)/(1 - p^-1) = (p^v - 1) / (p^(v-1) (p - 1))
  mpq_class geometric(pv - 1, pv / P * (P - 1));
  mpq_class first(1 - chi, P - chi);
  mpq_class r = first * geometric;
  r.canonicalize();
  return r;
}

Float delta_fn(std::uint64_t n) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "delta: n >= 1 required");
  // log n = sum v log p, so only logs of primes are needed; small ones are cached.
  struct Table {
    std::vector<std::uint32_t> primes;
    std::vector<Float> logs;
  };
  static const Table table = [] {
    Table t;
    t.primes = primes_up_to(1u << 16);
    t.logs.reserve(t.primes.size());
    for (auto p : t.primes) t.logs.push_back(log(Float(p)));
    return t;
  }();
  static const Float weight("0.2485");
  Float sum = 0;
  auto add = [&sum](std::uint64_t p, const Float& logp, unsigned v) {
    const Float fp = Float(p);
    Float pv = 1;
    for (unsigned i = 0; i < v; ++i) pv *= fp;
    sum += weight * v * logp - logp / (fp + 1) * ((1 - 1 / pv) / (1 - 1 / fp));
  };
  std::uint64_t m = n;
  for (std::size_t i = 0; i < table.primes.size(); ++i) {
    const std::uint64_t p = table.primes[i];
    if (p * p > m) break;
    if (m % p) continue;
    unsigned v = 0;
    while (m % p == 0) {
      m /= p;
      ++v;
    }
    add(p, table.logs[i], v);
  }
  const std::uint64_t last = table.primes.back();
  for (std::uint64_t p = last + 2; p * p <= m; p += 2) {
    if (m % p) continue;
    unsigned v = 0;
    while (m % p == 0) {
      m /= p;
      ++v;
    }
    add(p, log(Float(p)), v);
  }
  if (m > 1) {
    const auto it = std::lower_bound(table.primes.begin(), table.primes.end(), m);
    const bool cached = it != table.primes.end() && *it == m;
    add(m, cached ? table.logs[it - table.primes.begin()] : log(Float(m)), 1);
  }
  return sum;
}

Float gap_1728(const Float& log_abs, std::int64_t ell, double c1) {
  require_ell(ell, "gap_1728");
  const Float Y1 = 3 / sqrt(Float(5)) * log_abs - Float("9.78");
  if (Y1 <= 0) raise(ErrorKind::DomainError, "gap_1728: Y(D) is not positive");
  const Float log_ell = log(Float(ell));
  const Float log_fl = log_F_logD_majorant(log_abs, c1);
  // Lower minus upper is smallest where pi sqrt|D| / C meets Y1.
  Float log_c = log(pi()) + log_abs / 2 - log(Y1);
  if (log_c < 0) log_c = 0;
  const Float lower = larger(Y1, exp(log(pi()) + log_abs / 2 - log_c)) - log(Float(1728)) - log2f() - 1;
  const Float upper = 4 * exp(log_fl - log_c) + 2 * (log_fl + log_abs / 2 - log_c) - Float("2.68") +
                      larger(log(Float(16)) + log_abs + log_ell, 2 * log_ell);
  return lower - upper;
}

Float gap_0(const Float& log_abs, std::int64_t ell, double k, double c1) {
  require_ell(ell, "gap_0");
  const Float P = Float("1.509") * log_abs - 12 * pk_constant(k) + Float("8.64");
  const Float H = 3 / sqrt(Float(5)) * log_abs - Float("9.79");
  const Float flat = larger(P, H);
  if (flat <= 0) raise(ErrorKind::DomainError, "gap_0: lower bound is not positive");
  const Float log_ell = log(Float(ell));
  const Float log_fl = log_F_logD_majorant(log_abs, c1);
  Float log_c = log(pi()) + log_abs / 2 - log(flat);
  if (log_c < 0) log_c = 0;
  const Float easy = exp(log(pi()) + log_abs / 2 - log_c) - Float("0.01") * exp(-log_c);
  const Float lower = larger(flat, easy);
  const Float upper = 12 * exp(log_fl - log_c) + 3 * (log_fl + log_abs / 2 - log_c) - Float("3.77") +
                      larger(Float(3) / 2 * (log(Float(9)) + log_abs + log_ell), 3 * log_ell);
  return lower - upper;
}

}  // namespace cmsunit
