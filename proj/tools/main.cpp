// cmsunit: command-line front end.
//
// Exit codes: 0 ok, 1 other failure (e.g. threshold not found), 2 usage or
// invalid input, 3 precision exhausted, 4 incomplete factorization,
// 5 failed precondition (nice-pair or domain conditions).

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cmsunit/config.hpp"
#include "cmsunit/error.hpp"
#include "cmsunit/grosslattice.hpp"
#include "cmsunit/heights.hpp"
#include "cmsunit/intarith.hpp"
#include "cmsunit/modfun.hpp"
#include "cmsunit/quadclass.hpp"
#include "cmsunit/serialize.hpp"
#include "cmsunit/survey.hpp"

using namespace cmsunit;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ZeroInput:
    case ErrorKind::NonIntegral:
      return 2;
    case ErrorKind::PrecisionExhausted:
      return 3;
    case ErrorKind::IncompleteFactorization:
      return 4;
    case ErrorKind::DomainError:
    case ErrorKind::CaseUndefined:
      return 5;
    case ErrorKind::NotFound:
      return 1;
  }
  return 1;
}

struct Globals {
  bool json = false;
  std::optional<std::string> config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

mpz_class parse_integer(const std::string& s, const char* flag) {
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) {
    raise(ErrorKind::InvalidArgument, std::string(flag) + ": not an integer: " + s);
  }
  return z;
}

Discriminant parse_disc(std::int64_t value) {
  if (!is_discriminant(value)) {
    raise(ErrorKind::InvalidArgument, std::to_string(value) + " is not a negative discriminant");
  }
  return Discriminant(value);
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

// The rational j of a class-number-one discriminant, if it has one.
std::optional<mpz_class> rational_j(const IntPolynomial& h) {
  if (h.degree() != 1) return std::nullopt;
  return mpz_class(-h.coefficient(0));
}

int cmd_hcp(const Globals& g, std::int64_t disc) {
  const auto h = hilbert_class_polynomial(parse_disc(disc));
  Json j;
  j["delta"] = disc;
  j["degree"] = h.degree();
  Json coeffs = Json::array();
  for (const auto& c : h.coefficients()) coeffs.push_back(c.get_str());
  j["coefficients"] = coeffs;
  j["polynomial"] = h.to_string();
  emit(g, j, h.to_string());
  return 0;
}

int cmd_norm(const Globals& g, const Config& cfg, std::int64_t disc, const std::optional<std::string>& jzero,
             const std::optional<std::int64_t>& delta0) {
  const Discriminant d = parse_disc(disc);
  if (jzero.has_value() == delta0.has_value()) {
    raise(ErrorKind::InvalidArgument, "norm: give exactly one of --jzero and --delta0");
  }
  const mpz_class n = jzero ? norm_difference(d, parse_integer(*jzero, "--jzero"))
                            : resultant_norm(d, parse_disc(*delta0));
  Json j;
  j["delta"] = disc;
  if (jzero) j["jzero"] = *jzero; else j["delta0"] = *delta0;
  j["norm"] = n.get_str();
  if (n == 0) {
    j["factorization"] = nullptr;
    emit(g, j, "0");
    return 0;
  }
  const Factorization f = factor(n, cfg.budget(g.seed));
  j["factorization"] = to_json(f);
  emit(g, j, f.to_string());
  return f.complete() ? 0 : 4;
}

struct SurveyArgs {
  std::string jzero = "0";
  std::int64_t min_abs = 3;
  std::int64_t max_abs = 0;
  std::size_t smax = 7;
  std::string out;
  std::string format = "csv";
  std::string checkpoint;
  bool audit_mod4 = false;
  bool quiet = false;
};

int cmd_survey(const Globals& g, const Config& cfg, const SurveyArgs& a) {
  if (a.format != "csv" && a.format != "json") raise(ErrorKind::InvalidArgument, "--format must be csv or json");
  ScanOptions opt;
  opt.min_abs = a.min_abs;
  opt.max_abs = a.max_abs;
  opt.jobs = g.jobs;
  opt.budget = cfg.budget(g.seed);
  opt.checkpoint_path = a.checkpoint;
  if (!a.quiet) {
    opt.progress = [max = a.max_abs](std::int64_t done) {
      std::cerr << "\rscanned |D| <= " << done << " of " << max << std::flush;
      if (done == max) std::cerr << '\n';
    };
  }
  const auto records = scan(parse_integer(a.jzero, "--jzero"), opt);

  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) raise(ErrorKind::InvalidArgument, "cannot write " + a.out);
    if (a.format == "csv") write_csv(f, records); else f << to_json(records).dump(1) << '\n';
  }

  Json j;
  j["jzero"] = a.jzero;
  j["min_abs"] = a.min_abs;
  j["max_abs"] = a.max_abs;
  j["records"] = records.size();
  std::size_t incomplete = 0;
  for (const auto& r : records) incomplete += r.complete() ? 0 : 1;
  j["incomplete"] = incomplete;
  std::ostringstream text;
  text << "j0 = " << a.jzero << ", " << a.min_abs << " <= |D| <= " << a.max_abs << ": " << records.size()
       << " records, " << incomplete << " incomplete\n";

  int code = 0;
  try {
    const auto rows = table(records, a.smax);
    j["table"] = to_json(rows);
    text << table_text(rows);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IncompleteFactorization) throw;
    j["table"] = nullptr;
    j["error"] = e.what();
    text << "table refused: " << e.what() << '\n';
    code = 4;
  }
  if (a.audit_mod4) {
    const auto v = audit_mod4(records);
    j["mod4_violations"] = v;
    text << "mod-4 audit: " << v.size() << " violations\n";
  }
  emit(g, j, text.str());
  return code;
}

struct BoundArgs {
  std::optional<std::int64_t> delta0;
  std::optional<std::string> jzero;
  std::vector<std::int64_t> primes;
  std::string variant = "generic";
  std::int64_t ell = 0;
  std::optional<double> k;
  std::optional<double> c1;
  std::optional<double> at;
};

int cmd_bound(const Globals& g, const Config& cfg, const BoundArgs& a) {
  const double c1 = a.c1.value_or(cfg.c1);
  Json j;
  j["variant"] = a.variant;
  j["c1"] = c1;
  j["config"] = cfg.source;
  std::ostringstream text;

  if (a.variant == "1728" || a.variant == "j0") {
    if (a.ell < 5 || !is_probable_prime(mpz_class(static_cast<long>(a.ell)))) {
      raise(ErrorKind::DomainError, "--ell must be a prime >= 5");
    }
    j["ell"] = a.ell;
    Threshold t;
    if (a.variant == "1728") {
      t = find_threshold_1728(a.ell, c1, cfg.grid());
    } else {
      const double k = a.k.value_or(cfg.k);
      j["k"] = k;
      t = find_threshold_0(a.ell, k, c1, cfg.grid());
    }
    j["threshold"] = to_json(t);
    text << "B = " << t.describe() << (t.extended ? " (found past the grid ceiling)" : "") << "\nc1 = " << c1
         << '\n';
    emit(g, j, text.str());
    return 0;
  }
  if (a.variant != "generic") raise(ErrorKind::InvalidArgument, "--variant must be generic, 1728 or j0");
  if (!a.delta0) raise(ErrorKind::InvalidArgument, "bound: --delta0 is required");
  if (a.primes.empty() || a.primes.size() > 2) raise(ErrorKind::InvalidArgument, "bound: --primes takes one or two primes");
  const Discriminant d0 = parse_disc(*a.delta0);
  if (d0.value() >= -4) raise(ErrorKind::DomainError, "bound: needs D0 < -4");

  const NicePair np = check_nice_pair(d0, a.primes);
  j["nice_pair"] = to_json(np);
  const auto j0 = rational_j(np.hilbert);
  if (a.jzero) {
    const mpz_class given = parse_integer(*a.jzero, "--jzero");
    if (!j0 || *j0 != given) {
      raise(ErrorKind::InvalidArgument, "--jzero " + *a.jzero + " is not the singular modulus of D0 = " +
                                            std::to_string(d0.value()));
    }
  }
  if (!np.valid) {
    text << "not a nice pair:\n";
    for (const auto& f : np.failures) text << "  " << f << '\n';
    emit(g, j, text.str());
    return 5;
  }

  BoundInputs in;
  in.disc0 = d0.value();
  in.class_number0 = class_number(d0);
  in.h_j0 = j0 ? log(Float(mpz_class(abs(*j0)).get_str())) : Float(np.height_j0);
  in.ell = std::min(a.primes.front(), a.primes.back());
  in.big_ell = std::max(a.primes.front(), a.primes.back());
  in.c1 = c1;

  if (a.at) {
    const BoundBreakdown b = majorants(in, Float(*a.at));
    j["at"] = *a.at;
    j["breakdown_at"] = to_json(b);
    text << "at |D| = " << *a.at << ": A = " << to_string(b.A, 6) << ", B = " << to_string(b.B, 6)
         << ", C = " << to_string(b.C, 6) << ", D = " << to_string(b.D, 6)
         << "\n  epsilon sum = " << to_string(b.epsilon_sum, 9) << ", total = " << to_string(b.total, 9) << '\n';
  }
  const Threshold t = find_threshold(in, cfg.grid());
  const BoundBreakdown bt = majorants_log(in, t.log_abs);
  j["threshold"] = to_json(t);
  j["breakdown"] = to_json(bt);
  text << "B = " << t.describe() << "\nc1 = " << c1 << ", h(j0) = " << to_string(in.h_j0, 9)
       << ", K = " << to_string(bt.K, 9) << "\nat B: A = " << to_string(bt.A, 6) << ", B = " << to_string(bt.B, 6)
       << ", C = " << to_string(bt.C, 6) << ", D = " << to_string(bt.D, 6)
       << ", total = " << to_string(bt.total, 9) << '\n';
  emit(g, j, text.str());
  return 0;
}

int cmd_witness(const Globals& g, std::int64_t ell, unsigned n) {
  const WitnessReport w = verify_witness(ell, n);
  std::ostringstream text;
  text << "D = " << w.disc << ", v_" << ell << "(|H_D(0)|) = " << w.observed << ", predicted >= " << w.predicted
       << ", " << (w.pass ? "PASS" : "FAIL");
  emit(g, to_json(w), text.str());
  return w.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular moduli, S-unit norms and explicit height bounds"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--config", g.config_path, "Constants file (else $CM_SUNIT_CONFIG, else the installed default)");
  app.add_option("--seed", g.seed, "Override the Pollard rho seed (stress testing)");
  app.add_option("--jobs", g.jobs, "Worker threads for surveys")->check(CLI::PositiveNumber);

  std::int64_t disc = 0;
  auto* hcp = app.add_subcommand("hcp", "Hilbert class polynomial");
  hcp->add_option("--disc", disc, "Discriminant D < 0")->required();

  std::int64_t ndisc = 0;
  std::optional<std::string> njzero;
  std::optional<std::int64_t> ndelta0;
  auto* norm = app.add_subcommand("norm", "Factored norm of j - j0");
  norm->add_option("--disc", ndisc, "Discriminant of j")->required();
  norm->add_option("--jzero", njzero, "Rational j0");
  norm->add_option("--delta0", ndelta0, "Discriminant of j0 (resultant norm)");

  SurveyArgs sa;
  auto* survey = app.add_subcommand("survey", "S-unit survey of N(j - j0)");
  survey->add_option("--jzero", sa.jzero, "Rational j0")->required();
  survey->add_option("--min", sa.min_abs, "Smallest |D|");
  survey->add_option("--max", sa.max_abs, "Largest |D|")->required();
  survey->add_option("--smax", sa.smax, "Table rows 1..smax");
  survey->add_option("--out", sa.out, "Record file");
  survey->add_option("--format", sa.format, "csv or json");
  survey->add_option("--checkpoint", sa.checkpoint, "Resumable checkpoint file");
  survey->add_flag("--audit-mod4", sa.audit_mod4, "Report the primes = 1 mod 4 audit");
  survey->add_flag("--quiet", sa.quiet, "No progress on stderr");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Discriminant thresholds from the explicit height bounds");
  bound->add_option("--delta0", ba.delta0, "Discriminant of j0");
  bound->add_option("--jzero", ba.jzero, "j0, checked against D0");
  bound->add_option("--primes", ba.primes, "The primes of S")->delimiter(',');
  bound->add_option("--variant", ba.variant, "generic, 1728 or j0");
  bound->add_option("--ell", ba.ell, "Prime for the 1728 and j0 variants");
  bound->add_option("--k", ba.k, "Property P(k) constant (j0 variant)");
  bound->add_option("--c1", ba.c1, "Override c1 from the constants file");
  bound->add_option("--at", ba.at, "Also print the majorants at this |D|");

  std::int64_t well = 0;
  unsigned wn = 0;
  auto* witness = app.add_subcommand("witness", "Valuation witness D = -(3 + 4 l^(2n+1))");
  witness->add_option("--ell", well, "Prime l = 2 mod 3")->required();
  witness->add_option("--n", wn, "n >= 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Config cfg = resolve_config(g.config_path);
    set_guard_bits(cfg.precision_margin_bits);
    if (*hcp) return cmd_hcp(g, disc);
    if (*norm) return cmd_norm(g, cfg, ndisc, njzero, ndelta0);
    if (*survey) return cmd_survey(g, cfg, sa);
    if (*bound) return cmd_bound(g, cfg, ba);
    if (*witness) return cmd_witness(g, well, wn);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
