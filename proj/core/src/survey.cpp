#include "cmsunit/survey.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cmsunit/error.hpp"
#include "cmsunit/modfun.hpp"

namespace cmsunit {

namespace {

std::string checkpoint_header(std::span<const mpz_class> j0s, const ScanOptions& opt) {
  std::ostringstream os;
  os << "# cmsunit scan j0=";
  for (std::size_t i = 0; i < j0s.size(); ++i) os << (i ? "," : "") << j0s[i].get_str();
  os << " min=" << opt.min_abs << " max=" << opt.max_abs;
  return os.str();
}

// Reads finished blocks back; returns the largest |D| already covered and sets
// `keep` to the byte length of the file up to the last finished block.
std::int64_t load_checkpoint(const std::string& path, const std::string& header,
                             std::vector<std::vector<SurveyRecord>>& out, std::uintmax_t& keep) {
  std::ifstream in(path);
  if (!in) return 0;
  std::string line;
  if (!std::getline(in, line)) return 0;
  if (line != header) {
    raise(ErrorKind::InvalidArgument, "checkpoint " + path + " belongs to a different scan");
  }
  std::vector<std::vector<SurveyRecord>> pending(out.size());
  std::int64_t done = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'B') {
      ls >> done;
      keep = in.eof() ? std::filesystem::file_size(path) : static_cast<std::uintmax_t>(in.tellg());
      for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].insert(out[k].end(), pending[k].begin(), pending[k].end());
        pending[k].clear();
      }
    } else if (tag == 'R') {
      std::size_t k;
      SurveyRecord r;
      std::string fac;
      ls >> k >> r.delta >> r.class_number >> fac;
      if (!ls || k >= out.size()) raise(ErrorKind::InvalidArgument, "corrupt checkpoint line: " + line);
      r.norm = Factorization::parse(fac);
      pending[k].push_back(std::move(r));
    }
  }
  return done;
}

}  // namespace

std::vector<std::vector<SurveyRecord>> scan_many(std::span<const mpz_class> j0s, const ScanOptions& opt) {
  if (opt.min_abs < 3 || opt.max_abs < opt.min_abs) {
    raise(ErrorKind::InvalidArgument, "scan: need 3 <= min_abs <= max_abs");
  }
  if (j0s.empty()) raise(ErrorKind::InvalidArgument, "scan: no j0 given");
  std::vector<std::vector<SurveyRecord>> out(j0s.size());

  std::int64_t resume_after = opt.min_abs - 1;
  std::ofstream ckpt;
  if (!opt.checkpoint_path.empty()) {
    const std::string header = checkpoint_header(j0s, opt);
    std::uintmax_t keep = 0;
    const std::int64_t done = load_checkpoint(opt.checkpoint_path, header, out, keep);
    if (done > 0) {
      resume_after = done;
      // Drop a torn block left by an interrupted run before appending.
      std::filesystem::resize_file(opt.checkpoint_path, keep);
      ckpt.open(opt.checkpoint_path, std::ios::app);
    } else {
      ckpt.open(opt.checkpoint_path, std::ios::trunc);
      ckpt << header << '\n';
    }
    if (!ckpt) raise(ErrorKind::InvalidArgument, "cannot write checkpoint " + opt.checkpoint_path);
  }

  const unsigned jobs = std::max(1u, opt.jobs);
  for (std::int64_t lo = resume_after + 1; lo <= opt.max_abs;) {
    // Blocks end on multiples of kCheckpointBlock so resumed runs line up.
    const std::int64_t hi = std::min(opt.max_abs, (lo / kCheckpointBlock + 1) * kCheckpointBlock);
    std::vector<std::int64_t> discs;
    for (std::int64_t a = lo; a <= hi; ++a) {
      if (is_discriminant(-a)) discs.push_back(-a);
    }
    std::vector<std::vector<std::optional<SurveyRecord>>> slot(
        j0s.size(), std::vector<std::optional<SurveyRecord>>(discs.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
      for (std::size_t i = next++; i < discs.size() && !failed; i = next++) {
        try {
          const Discriminant disc(discs[i]);
          const auto norms = norm_differences(disc, j0s);
          const auto h = class_number(disc);
          for (std::size_t k = 0; k < j0s.size(); ++k) {
            if (norms[k] == 0) continue;
            slot[k][i] = SurveyRecord{disc.value(), h, factor(norms[k], opt.budget)};
          }
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t k = 0; k < j0s.size(); ++k) {
      for (auto& r : slot[k]) {
        if (!r) continue;
        if (ckpt.is_open()) {
          ckpt << "R " << k << ' ' << r->delta << ' ' << r->class_number << ' ' << r->norm.to_string() << '\n';
        }
        out[k].push_back(std::move(*r));
      }
    }
    if (ckpt.is_open()) ckpt << "B " << hi << std::endl;
    if (opt.progress) opt.progress(hi);
    lo = hi + 1;
  }
  return out;
}

std::vector<SurveyRecord> scan(const mpz_class& j0, const ScanOptions& opt) {
  return std::move(scan_many(std::span<const mpz_class>(&j0, 1), opt).front());
}

std::vector<SurveyRecord> flagged(const std::vector<SurveyRecord>& records, std::size_t s_max) {
  std::vector<SurveyRecord> out;
  for (const auto& r : records) {
    if (r.complete() && r.s() <= s_max) out.push_back(r);
  }
  return out;
}

std::vector<TableRow> table(const std::vector<SurveyRecord>& records, std::size_t s_max) {
  for (const auto& r : records) {
    if (!r.complete() && r.s_lower_bound() <= s_max) {
      raise(ErrorKind::IncompleteFactorization,
            "table: norm for D=" + std::to_string(r.delta) + " is not fully factored (" +
                r.norm.to_string() + ") and could have s <= " + std::to_string(s_max));
    }
  }
  std::vector<TableRow> rows;
  for (std::size_t s = 1; s <= s_max; ++s) {
    TableRow row;
    row.s = s;
    for (const auto& r : records) {
      if (!r.complete() || r.s() > s) continue;
      ++row.count;
      if (!row.delta_max || -r.delta > -*row.delta_max) row.delta_max = r.delta;
      for (const auto& [p, e] : r.norm.primes) {
        row.primes_at_most.insert(p);
        if (r.s() == s) row.primes_exactly.insert(p);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

NicePair check_nice_pair(const Discriminant& disc0, std::span<const std::int64_t> primes) {
  NicePair np;
  np.disc0 = disc0.value();
  np.hilbert = hilbert_class_polynomial(disc0);
  np.primes.assign(primes.begin(), primes.end());
  np.height_j0 = weil_height_singular(disc0).to_double();
  // |Res(H, x)| = |H(0)| and |Res(H, x - 1728)| = |H(1728)| for monic H.
  const mpz_class n0 = abs(np.hilbert.evaluate(0));
  const mpz_class n1728 = abs(np.hilbert.evaluate(1728));
  for (std::int64_t ell : primes) {
    const std::string tag = std::to_string(ell) + ": ";
    const mpz_class L = static_cast<long>(ell);
    if (ell < 2 || !is_probable_prime(L)) {
      np.failures.push_back(tag + "not prime");
      continue;
    }
    if (disc0.value() % ell == 0) np.failures.push_back(tag + "divides D0");
    if (mpz_divisible_p(n0.get_mpz_t(), L.get_mpz_t())) np.failures.push_back(tag + "divides N(j0)");
    if (mpz_divisible_p(n1728.get_mpz_t(), L.get_mpz_t())) {
      np.failures.push_back(tag + "divides N(j0 - 1728)");
    }
    if (!splits_completely(np.hilbert, static_cast<std::uint64_t>(ell))) {
      np.failures.push_back(tag + "does not split completely in Q(j0)");
    }
  }
  np.valid = np.failures.empty();
  return np;
}

std::vector<std::int64_t> audit_pn_structure(const std::vector<PnRecord>& records,
                                             const Discriminant& disc0,
                                             std::span<const std::int64_t> primes) {
  std::vector<std::int64_t> violations;
  for (const auto& r : records) {
    bool s_unit = r.norm.complete();
    for (const auto& [p, e] : r.norm.primes) {
      if (std::find(primes.begin(), primes.end(), p.get_si()) == primes.end()) s_unit = false;
    }
    if (!s_unit) continue;
    bool shaped = false;
    if (r.delta % disc0.value() == 0) {
      std::int64_t ratio = r.delta / disc0.value();
      if (ratio == 1) shaped = true;
      for (std::int64_t p : primes) {
        if (shaped || p < 2) break;
        std::int64_t q = ratio;
        while (q % p == 0) q /= p;
        shaped = q == 1;
      }
    }
    if (!shaped) violations.push_back(r.delta);
  }
  return violations;
}

std::vector<PnRecord> scan_resultant(const Discriminant& disc0, std::span<const std::int64_t> primes,
                                     std::int64_t max_abs, const FactorBudget& budget) {
  std::vector<PnRecord> hits;
  const IntPolynomial h0 = hilbert_class_polynomial(disc0);
  for (std::int64_t a = 3; a <= max_abs; ++a) {
    if (!is_discriminant(-a) || -a == disc0.value()) continue;
    const Discriminant disc(-a);
    const mpz_class res = resultant(hilbert_class_polynomial(disc), h0);
    if (res == 0) continue;
    // Strip the primes of S first; anything left means not an S-unit.
    mpz_class rest = abs(res);
    for (std::int64_t p : primes) {
      const mpz_class P = static_cast<long>(p);
      while (p >= 2 && mpz_divisible_p(rest.get_mpz_t(), P.get_mpz_t())) rest /= P;
    }
    if (rest != 1) continue;
    hits.push_back(PnRecord{disc.value(), factor(res, budget)});
  }
  return hits;
}

std::vector<std::int64_t> audit_mod4(const std::vector<SurveyRecord>& records) {
  std::vector<std::int64_t> violations;
  for (const auto& r : records) {
    bool has_1mod4 = false;
    std::size_t others = 0;
    for (const auto& [p, e] : r.norm.primes) {
      if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) has_1mod4 = true; else ++others;
    }
    if (has_1mod4 && others < 3) violations.push_back(r.delta);
  }
  return violations;
}

}  // namespace cmsunit
