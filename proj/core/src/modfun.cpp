#include "cmsunit/modfun.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <string>

#include "cmsunit/error.hpp"
#include "cmsunit/intarith.hpp"

namespace cmsunit {

namespace {

constexpr double kRoundingTolerance = 0.25;

std::atomic<int> g_guard_bits{64};

// log2(e^t + c) without overflowing for large t.
double log2_exp_plus(double t, double c) {
  return t / M_LN2 + std::log2(1.0 + c * std::exp(-t));
}

using RealPoly = std::vector<Real>;

RealPoly poly_mul(const RealPoly& a, const RealPoly& b, mpfr_prec_t w) {
  RealPoly c;
  c.reserve(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size() + b.size() - 1; ++i) c.emplace_back(w);
  Real t(w);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      mpfr_mul(t.get(), a[i].get(), b[k].get(), MPFR_RNDN);
      mpfr_add(c[i + k].get(), c[i + k].get(), t.get(), MPFR_RNDN);
    }
  }
  return c;
}

RealPoly product_tree(std::vector<RealPoly>& factors, std::size_t lo, std::size_t hi,
                      mpfr_prec_t w) {
  if (hi - lo == 1) return std::move(factors[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  RealPoly left = product_tree(factors, lo, mid, w);
  RealPoly right = product_tree(factors, mid, hi, w);
  return poly_mul(left, right, w);
}

// Index of the partner (a, -b, c) for every form with b < 0, else -1.
std::vector<long> conjugate_partners(const std::vector<QuadForm>& forms) {
  std::map<QuadForm, long> index;
  for (std::size_t i = 0; i < forms.size(); ++i) index[forms[i]] = static_cast<long>(i);
  std::vector<long> partner(forms.size(), -1);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].b < 0) {
      partner[i] = index.at(QuadForm{forms[i].a, -forms[i].b, forms[i].c});
    }
  }
  return partner;
}

bool is_real_form(const QuadForm& f) { return f.is_ambiguous(); }

std::string precision_message(const char* what, const Discriminant& disc, mpfr_prec_t prec) {
  return std::string(what) + ": rounding not certified for D=" + std::to_string(disc.value()) +
         " after retries (last precision " + std::to_string(prec) + " bits)";
}

// prod_i (j_i - j0) as a real number; conjugate pairs contribute |j - j0|^2.
Real norm_product(const SingularModuli& sm, const mpz_class& j0) {
  const mpfr_prec_t w = sm.precision();
  const auto& forms = sm.forms();
  const auto& values = sm.values();
  Real acc(1.0, w), shifted(w), t(w), im2(w);
  Real j0r(j0, w);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].b < 0) continue;  // counted with its partner
    mpfr_sub(shifted.get(), values[i].re().get(), j0r.get(), MPFR_RNDN);
    if (is_real_form(forms[i])) {
      mpfr_mul(acc.get(), acc.get(), shifted.get(), MPFR_RNDN);
    } else {
      mpfr_sqr(t.get(), shifted.get(), MPFR_RNDN);
      mpfr_sqr(im2.get(), values[i].im().get(), MPFR_RNDN);
      mpfr_add(t.get(), t.get(), im2.get(), MPFR_RNDN);
      mpfr_mul(acc.get(), acc.get(), t.get(), MPFR_RNDN);
    }
  }
  return acc;
}

}  // namespace

mpfr_prec_t initial_precision(const Discriminant& disc, double abs_j0) {
  const double s = M_PI * std::sqrt(static_cast<double>(disc.abs()));
  const auto forms = reduced_forms(disc);
  double bits = 0.0;
  for (const auto& f : forms) {
    // |j(tau)| <= e^{2 pi Im tau} + 2100 on the fundamental domain.
    bits += log2_exp_plus(s / static_cast<double>(f.a), 2100.0 + abs_j0);
  }
  bits += std::log2(static_cast<double>(forms.size()) + 1.0);
  return static_cast<mpfr_prec_t>(std::ceil(bits)) + g_guard_bits.load();
}

void set_guard_bits(int bits) {
  if (bits < 16) raise(ErrorKind::InvalidArgument, "guard bits must be at least 16");
  g_guard_bits = bits;
}

int guard_bits() noexcept { return g_guard_bits.load(); }

SingularModuli::SingularModuli(const Discriminant& disc, mpfr_prec_t prec)
    : disc_(disc), forms_(reduced_forms(disc)), prec_(prec) {
  const auto partner = conjugate_partners(forms_);
  values_.reserve(forms_.size());
  for (std::size_t i = 0; i < forms_.size(); ++i) values_.emplace_back(prec);
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (forms_[i].b >= 0) values_[i] = eval_j_cm(forms_[i], disc_, prec);
  }
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (partner[i] >= 0) {
      cset(values_[i], values_[static_cast<std::size_t>(partner[i])]);
      mpfr_neg(values_[i].im().get(), values_[i].im().get(), MPFR_RNDN);
    }
  }
}

IntPolynomial hilbert_class_polynomial(const Discriminant& disc) {
  const auto h = class_number(disc);
  mpfr_prec_t prec = initial_precision(disc) + static_cast<mpfr_prec_t>(h);
  for (int attempt = 0; attempt <= kPrecisionRetries; ++attempt, prec *= 2) {
    SingularModuli sm(disc, prec);
    std::vector<RealPoly> factors;
    for (std::size_t i = 0; i < sm.forms().size(); ++i) {
      const auto& f = sm.forms()[i];
      const auto& j = sm.values()[i];
      if (f.b < 0) continue;
      if (is_real_form(f)) {
        RealPoly lin;
        lin.emplace_back(prec);
        mpfr_neg(lin[0].get(), j.re().get(), MPFR_RNDN);
        lin.emplace_back(1.0, prec);
        factors.push_back(std::move(lin));
      } else {
        // x^2 - 2 Re(j) x + |j|^2
        RealPoly quad;
        quad.emplace_back(prec);
        Real t(prec);
        cnorm(quad[0], j, t);
        quad.emplace_back(prec);
        mpfr_mul_si(quad[1].get(), j.re().get(), -2, MPFR_RNDN);
        quad.emplace_back(1.0, prec);
        factors.push_back(std::move(quad));
      }
    }
    RealPoly expanded = product_tree(factors, 0, factors.size(), prec);
    std::vector<mpz_class> coeffs;
    bool certified = true;
    for (const auto& c : expanded) {
      auto [z, dist] = round_to_integer(c);
      if (!(dist < kRoundingTolerance)) {
        certified = false;
        break;
      }
      coeffs.push_back(z);
    }
    if (certified) {
      IntPolynomial poly(std::move(coeffs));
      if (poly.degree() == h && poly.is_monic()) return poly;
    }
  }
  raise(ErrorKind::PrecisionExhausted, precision_message("hilbert_class_polynomial", disc, prec / 2));
}

std::vector<mpz_class> norm_differences(const Discriminant& disc, std::span<const mpz_class> j0s) {
  double max_j0 = 0.0;
  for (const auto& j0 : j0s) max_j0 = std::max(max_j0, std::fabs(j0.get_d()));
  mpfr_prec_t prec = initial_precision(disc, max_j0);
  for (int attempt = 0; attempt <= kPrecisionRetries; ++attempt, prec *= 2) {
    SingularModuli sm(disc, prec);
    std::vector<mpz_class> out;
    bool certified = true;
    for (const auto& j0 : j0s) {
      auto [z, dist] = round_to_integer(norm_product(sm, j0));
      if (!(dist < kRoundingTolerance)) {
        certified = false;
        break;
      }
      out.push_back(z);
    }
    if (certified) return out;
  }
  raise(ErrorKind::PrecisionExhausted, precision_message("norm_difference", disc, prec / 2));
}

mpz_class norm_difference(const Discriminant& disc, const mpz_class& j0) {
  return norm_differences(disc, std::span<const mpz_class>(&j0, 1)).front();
}

mpz_class resultant_norm(const Discriminant& disc, const Discriminant& disc0) {
  if (disc == disc0) {
    raise(ErrorKind::InvalidArgument, "resultant_norm: discriminants must differ");
  }
  return resultant(hilbert_class_polynomial(disc), hilbert_class_polynomial(disc0));
}

Real weil_height_singular(const Discriminant& disc) {
  constexpr mpfr_prec_t w = 128;
  const auto forms = reduced_forms(disc);
  Real sum(w), term(w), t(w);
  for (const auto& f : forms) {
    const Complex j = eval_j_cm(f, disc, w);
    clog_abs(term, j, t);
    if (mpfr_sgn(term.get()) > 0) mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  mpfr_div_si(sum.get(), sum.get(), static_cast<long>(forms.size()), MPFR_RNDN);
  return sum;
}

}  // namespace cmsunit
