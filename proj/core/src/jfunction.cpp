#include <cmath>
#include <string>

#include "cmsunit/error.hpp"
#include "cmsunit/modfun.hpp"

namespace cmsunit {

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

struct Scratch {
  explicit Scratch(mpfr_prec_t p) : t1(p), t2(p), t3(p) {}
  Real t1, t2, t3;
};

// prod_{n>=1} (1 - q^n) via Euler's pentagonal series
//   1 + sum_{k>=1} (-1)^k (q^{k(3k-1)/2} + q^{k(3k+1)/2}),
// truncated once the next exponent makes |q|^e < 2^-(bits + 8).
void euler_product(Complex& out, const Complex& q, double neg_log2_abs_q, mpfr_prec_t bits,
                   Scratch& s) {
  const mpfr_prec_t w = out.precision();
  Complex u(w), step(w), qk(w), v(w), q3(w);
  mpfr_set_ui(out.re().get(), 1, MPFR_RNDN);
  mpfr_set_ui(out.im().get(), 0, MPFR_RNDN);
  mpfr_set_ui(u.re().get(), 1, MPFR_RNDN);
  mpfr_set_ui(u.im().get(), 0, MPFR_RNDN);
  cset(qk, u);
  cset(step, q);
  csqr(q3, q, s.t1, s.t2);
  cmul(q3, q3, q, s.t1, s.t2);

  const double target = static_cast<double>(bits) + 8.0;
  for (long k = 1;; ++k) {
    const double e = static_cast<double>(k) * (3.0 * static_cast<double>(k) - 1.0) / 2.0;
    if (e * neg_log2_abs_q > target) break;
    cmul(u, u, step, s.t1, s.t2);      // q^{k(3k-1)/2}
    cmul(step, step, q3, s.t1, s.t2);  // next increment q^{3k+1}
    cmul(qk, qk, q, s.t1, s.t2);       // q^k
    cmul(v, u, qk, s.t1, s.t2);        // q^{k(3k+1)/2}
    if (k & 1) {
      csub(out, out, u);
      csub(out, out, v);
    } else {
      cadd(out, out, u);
      cadd(out, out, v);
    }
  }
}

// j = (1 + 256 x)^3 / x with x = q * (P(q^2) / P(q))^24, P the Euler product.
void j_from_q(Complex& j, const Complex& q, double neg_log2_abs_q, mpfr_prec_t w) {
  Scratch s(w);
  Complex p1(w), p2(w), q2(w), r(w), r8(w), x(w);
  euler_product(p1, q, neg_log2_abs_q, w, s);
  csqr(q2, q, s.t1, s.t2);
  euler_product(p2, q2, 2.0 * neg_log2_abs_q, w, s);
  cdiv(r, p2, p1, s.t1, s.t2, s.t3);
  csqr(r, r, s.t1, s.t2);   // r^2
  csqr(r, r, s.t1, s.t2);   // r^4
  csqr(r8, r, s.t1, s.t2);  // r^8
  csqr(r, r8, s.t1, s.t2);  // r^16
  cmul(r, r, r8, s.t1, s.t2);  // r^24
  cmul(x, q, r, s.t1, s.t2);

  Complex y(w);
  mpfr_mul_ui(y.re().get(), x.re().get(), 256, MPFR_RNDN);
  mpfr_add_ui(y.re().get(), y.re().get(), 1, MPFR_RNDN);
  mpfr_mul_ui(y.im().get(), x.im().get(), 256, MPFR_RNDN);
  Complex y3(w);
  csqr(y3, y, s.t1, s.t2);
  cmul(y3, y3, y, s.t1, s.t2);
  cdiv(j, y3, x, s.t1, s.t2, s.t3);
}

Complex round_to(const Complex& z, mpfr_prec_t prec) {
  Complex out(prec);
  mpfr_set(out.re().get(), z.re().get(), MPFR_RNDN);
  mpfr_set(out.im().get(), z.im().get(), MPFR_RNDN);
  return out;
}

}  // namespace

Complex cm_point(const QuadForm& form, const Discriminant& disc, mpfr_prec_t prec) {
  Complex tau(prec);
  mpfr_set_si(tau.re().get(), -form.b, MPFR_RNDN);
  mpfr_div_si(tau.re().get(), tau.re().get(), 2 * form.a, MPFR_RNDN);
  mpfr_set_si(tau.im().get(), disc.abs(), MPFR_RNDN);
  mpfr_sqrt(tau.im().get(), tau.im().get(), MPFR_RNDN);
  mpfr_div_si(tau.im().get(), tau.im().get(), 2 * form.a, MPFR_RNDN);
  return tau;
}

std::vector<Complex> cm_points(const Discriminant& disc, mpfr_prec_t prec) {
  std::vector<Complex> out;
  for (const auto& f : reduced_forms(disc)) out.push_back(cm_point(f, disc, prec));
  return out;
}

Complex eval_j(const Complex& tau_in, mpfr_prec_t prec) {
  if (mpfr_sgn(tau_in.im().get()) <= 0) {
    raise(ErrorKind::InvalidArgument, "eval_j: Im(tau) must be positive");
  }
  const mpfr_prec_t w = prec + kGuardBits;
  Complex tau(w);
  cset(tau, tau_in);
  Scratch s(w);
  Real n(w), shift(w);

  // SL2(Z) reduction into |Re tau| <= 1/2, |tau| >= 1.
  for (int iter = 0;; ++iter) {
    if (iter > 10000) {
      raise(ErrorKind::PrecisionExhausted, "eval_j: fundamental-domain reduction did not settle");
    }
    mpfr_rint(shift.get(), tau.re().get(), MPFR_RNDN);
    mpfr_sub(tau.re().get(), tau.re().get(), shift.get(), MPFR_RNDN);
    cnorm(n, tau, s.t1);
    if (mpfr_cmp_d(n.get(), 1.0 - std::ldexp(1.0, -40)) >= 0) break;
    // tau <- -1/tau = -conj(tau) / |tau|^2
    mpfr_neg(tau.re().get(), tau.re().get(), MPFR_RNDN);
    mpfr_div(tau.re().get(), tau.re().get(), n.get(), MPFR_RNDN);
    mpfr_div(tau.im().get(), tau.im().get(), n.get(), MPFR_RNDN);
  }
  const double im = mpfr_get_d(tau.im().get(), MPFR_RNDN);
  if (!(im > 0.8)) {
    raise(ErrorKind::PrecisionExhausted,
          "eval_j: cannot certify accuracy; reduced Im(tau) = " + std::to_string(im));
  }

  // q = exp(2 pi i tau)
  Complex q(w);
  Real pi(w), mod(w);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_mul(mod.get(), pi.get(), tau.im().get(), MPFR_RNDN);
  mpfr_mul_si(mod.get(), mod.get(), -2, MPFR_RNDN);
  mpfr_exp(mod.get(), mod.get(), MPFR_RNDN);
  mpfr_mul(s.t1.get(), pi.get(), tau.re().get(), MPFR_RNDN);
  mpfr_mul_2ui(s.t1.get(), s.t1.get(), 1, MPFR_RNDN);
  mpfr_sin_cos(q.im().get(), q.re().get(), s.t1.get(), MPFR_RNDN);
  mpfr_mul(q.re().get(), q.re().get(), mod.get(), MPFR_RNDN);
  mpfr_mul(q.im().get(), q.im().get(), mod.get(), MPFR_RNDN);

  const double neg_log2_abs_q = 2.0 * M_PI * im / M_LN2;
  Complex j(w);
  j_from_q(j, q, neg_log2_abs_q, w);
  return round_to(j, prec);
}

Complex eval_j_cm(const QuadForm& form, const Discriminant& disc, mpfr_prec_t prec) {
  const mpfr_prec_t w = prec + kGuardBits;
  Real pi(w), mod(w), theta(w);
  mpfr_const_pi(pi.get(), MPFR_RNDN);

  // |q| = exp(-pi sqrt|D| / a), arg q = -pi b / a
  mpfr_set_si(mod.get(), disc.abs(), MPFR_RNDN);
  mpfr_sqrt(mod.get(), mod.get(), MPFR_RNDN);
  mpfr_mul(mod.get(), mod.get(), pi.get(), MPFR_RNDN);
  mpfr_div_si(mod.get(), mod.get(), form.a, MPFR_RNDN);
  mpfr_neg(mod.get(), mod.get(), MPFR_RNDN);
  mpfr_exp(mod.get(), mod.get(), MPFR_RNDN);

  Complex q(w);
  if (form.b == 0) {
    mpfr_set(q.re().get(), mod.get(), MPFR_RNDN);
    mpfr_set_ui(q.im().get(), 0, MPFR_RNDN);
  } else if (form.b == form.a || form.b == -form.a) {
    mpfr_neg(q.re().get(), mod.get(), MPFR_RNDN);
    mpfr_set_ui(q.im().get(), 0, MPFR_RNDN);
  } else {
    mpfr_mul_si(theta.get(), pi.get(), -form.b, MPFR_RNDN);
    mpfr_div_si(theta.get(), theta.get(), form.a, MPFR_RNDN);
    mpfr_sin_cos(q.im().get(), q.re().get(), theta.get(), MPFR_RNDN);
    mpfr_mul(q.re().get(), q.re().get(), mod.get(), MPFR_RNDN);
    mpfr_mul(q.im().get(), q.im().get(), mod.get(), MPFR_RNDN);
  }

  const double neg_log2_abs_q =
      M_PI * std::sqrt(static_cast<double>(disc.abs())) / static_cast<double>(form.a) / M_LN2;
  Complex j(w);
  j_from_q(j, q, neg_log2_abs_q, w);
  return round_to(j, prec);
}

}  // namespace cmsunit
