#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "cmsunit/error.hpp"
#include "cmsunit/heights.hpp"

namespace cmsunit {

namespace {

constexpr int kStepsPerDecade = 8;  // points checked past B, i.e. up to 10 B at ratio 10^(1/8)
constexpr int kBisections = 80;

using Score = std::function<Float(const Float&)>;  // larger is better; passing means > 0

// A grid point passes when score > 0 there and on the next kStepsPerDecade
// points, with the score nondecreasing along them.
bool passes_ahead(const Score& score, const Float& x, const Float& step, bool multiplicative) {
  Float prev = score(x);
  if (prev <= 0) return false;
  Float y = x;
  for (int i = 0; i < kStepsPerDecade; ++i) {
    y = multiplicative ? y * step : y + step;
    const Float s = score(y);
    if (s <= 0 || s < prev) return false;
    prev = s;
  }
  return true;
}

// Searches x = start, start (+|*) step, ... up to ceiling; returns the refined
// crossing or nullopt. x is log|D| (additive) or log log|D| (multiplicative
// on log|D|, passed to score after exponentiation by the caller).
std::optional<Float> grid_search(const Score& score, const Float& start, const Float& step,
                                 const Float& ceiling) {
  std::optional<Float> prev_fail;
  for (Float x = start; x <= ceiling; x += step) {
    if (!passes_ahead(score, x, step, false)) {
      prev_fail = x;
      continue;
    }
    if (!prev_fail) return x;
    Float lo = *prev_fail, hi = x;
    for (int i = 0; i < kBisections; ++i) {
      const Float mid = (lo + hi) / 2;
      if (score(mid) > 0) hi = mid; else lo = mid;
    }
    return hi;
  }
  return std::nullopt;
}

Threshold make_threshold(const Float& log_abs, bool extended, double c1) {
  Threshold t;
  t.log_abs = log_abs;
  t.extended = extended;
  t.c1 = c1;
  static const Float limit = 1000 * log(Float(10));
  if (log_abs <= limit) {
    const Float b = ceil(exp(log_abs));
    std::string digits = b.str(0, std::ios_base::fixed);
    digits = digits.substr(0, digits.find('.'));
    t.value = mpz_class(digits);
  }
  return t;
}

Threshold variant_threshold(const std::function<Float(const Float&)>& gap, double floor_log10,
                            double c1, const GridOptions& grid) {
  if (!(grid.ratio > 1.0) || !(grid.ceiling > 1.0)) raise(ErrorKind::InvalidArgument, "bad grid");
  const Float step = log(Float(grid.ratio));
  const Float start = Float(floor_log10) * log(Float(10));
  const Float ceiling = log(Float(grid.ceiling));
  if (auto hit = grid_search(gap, start, step, ceiling)) return make_threshold(*hit, false, c1);

  // Past the ceiling: walk u = log L with the same ratio applied to L.
  const Score in_loglog = [&gap](const Float& u) { return gap(exp(u)); };
  const Float u_start = log(ceiling);
  const Float u_ceiling = log(Float(1e300));
  if (auto hit = grid_search(in_loglog, u_start, step, u_ceiling)) {
    return make_threshold(exp(*hit), true, c1);
  }
  raise(ErrorKind::NotFound, "threshold not found below exp(1e300)");
}

}  // namespace

std::string Threshold::describe() const {
  std::ostringstream os;
  const Float log10b = log_abs / log(Float(10));
  if (log10b < Float(1e6)) {
    const Float ip = floor(log10b);
    const Float mant = exp((log10b - ip) * log(Float(10)));
    os << mant.str(6, std::ios_base::fixed) << "e+" << ip.convert_to<long>();
  } else {
    os << "exp(exp(" << log(log_abs).str(6, std::ios_base::fixed) << "))";
  }
  return os.str();
}

Threshold find_threshold(const BoundInputs& in, const GridOptions& grid) {
  if (!(grid.ratio > 1.0) || !(grid.ceiling > 1e15)) raise(ErrorKind::InvalidArgument, "bad grid");
  const Score score = [&in](const Float& L) { return 1 - majorants_log(in, L).total; };
  const Float step = log(Float(grid.ratio));
  // Majorants are defined strictly above 10^15; start a hair past it.
  const Float start = 15 * log(Float(10)) + Float(1e-12);
  const Float ceiling = log(Float(grid.ceiling));
  if (auto hit = grid_search(score, start, step, ceiling)) return make_threshold(*hit, false, in.c1);
  raise(ErrorKind::NotFound, "majorant sum stays >= 1 up to the grid ceiling " +
                                 Float(grid.ceiling).str(3, std::ios_base::scientific));
}

Threshold find_threshold_1728(std::int64_t ell, double c1, const GridOptions& grid) {
  return variant_threshold([=](const Float& L) { return gap_1728(L, ell, c1); }, 14.0, c1, grid);
}

Threshold find_threshold_0(std::int64_t ell, double k, double c1, const GridOptions& grid) {
  return variant_threshold([=](const Float& L) { return gap_0(L, ell, k, c1); }, 14.0, c1, grid);
}

}  // namespace cmsunit
