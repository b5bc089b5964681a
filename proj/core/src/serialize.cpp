#include "cmsunit/serialize.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "cmsunit/error.hpp"

namespace cmsunit {

namespace {

// Factorization text without its sign; the sign lives in its own column.
std::string unsigned_text(const Factorization& f) {
  std::string s = f.to_string();
  if (!s.empty() && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string join(const std::set<mpz_class>& primes, const char* sep) {
  std::string out;
  for (const auto& p : primes) {
    if (!out.empty()) out += sep;
    out += p.get_str();
  }
  return out;
}

Json prime_list(const std::set<mpz_class>& primes) {
  Json a = Json::array();
  for (const auto& p : primes) a.push_back(p.get_str());
  return a;
}

}  // namespace

std::string to_string(const Float& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

std::string to_csv_row(const SurveyRecord& r) {
  std::ostringstream os;
  os << r.delta << ',' << r.class_number << ',' << r.norm.sign << ',' << unsigned_text(r.norm) << ',';
  if (r.complete()) os << r.s();
  os << ',' << (r.complete() ? "true" : "false");
  return os.str();
}

void write_csv(std::ostream& out, const std::vector<SurveyRecord>& records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
}

Json to_json(const SurveyRecord& r) {
  Json j;
  j["delta"] = r.delta;
  j["class_number"] = r.class_number;
  j["norm_sign"] = r.norm.sign;
  j["factorization"] = unsigned_text(r.norm);
  j["s"] = r.complete() ? Json(r.s()) : Json(nullptr);
  j["complete"] = r.complete();
  return j;
}

SurveyRecord record_from_json(const Json& j) {
  try {
    SurveyRecord r;
    r.delta = j.at("delta").get<std::int64_t>();
    r.class_number = j.at("class_number").get<std::int64_t>();
    const int sign = j.at("norm_sign").get<int>();
    std::string text = j.at("factorization").get<std::string>();
    if (sign < 0) text = "-" + text;
    r.norm = Factorization::parse(text);
    if (r.complete() != j.at("complete").get<bool>()) {
      raise(ErrorKind::InvalidArgument, "record JSON: complete flag disagrees with factorization");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::InvalidArgument, std::string("record JSON: ") + e.what());
  }
}

Json to_json(const std::vector<SurveyRecord>& records) {
  Json a = Json::array();
  for (const auto& r : records) a.push_back(to_json(r));
  return a;
}

Json to_json(const Factorization& f) {
  Json j;
  j["text"] = f.to_string();
  j["sign"] = f.sign;
  Json primes = Json::array();
  for (const auto& [p, e] : f.primes) primes.push_back({{"p", p.get_str()}, {"e", e}});
  j["primes"] = primes;
  j["cofactor"] = f.cofactor.get_str();
  j["complete"] = f.complete();
  j["value"] = f.reconstruct().get_str();
  return j;
}

Json to_json(const TableRow& row) {
  Json j;
  j["s"] = row.s;
  j["count"] = row.count;
  j["delta_max"] = row.delta_max ? Json(*row.delta_max) : Json(nullptr);
  j["primes_at_most"] = prime_list(row.primes_at_most);
  j["primes_exactly"] = prime_list(row.primes_exactly);
  return j;
}

Json to_json(const std::vector<TableRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(3) << "s" << std::setw(7) << "count" << std::setw(10) << "delta_max"
     << "primes (s' <= s) | primes (s' == s)\n";
  for (const auto& r : rows) {
    os << std::setw(3) << r.s << std::setw(7) << r.count << std::setw(10)
       << (r.delta_max ? std::to_string(*r.delta_max) : std::string("n/a")) << join(r.primes_at_most, ",")
       << " | " << join(r.primes_exactly, ",") << '\n';
  }
  return os.str();
}

Json to_json(const BoundBreakdown& b) {
  Json j;
  j["log_abs_delta"] = to_string(b.log_abs);
  j["Y"] = to_string(b.Y);
  j["A"] = to_string(b.A);
  j["B"] = to_string(b.B);
  j["C"] = to_string(b.C);
  j["D"] = to_string(b.D);
  j["K"] = to_string(b.K);
  j["c1"] = b.c1;
  j["gamma"] = to_string(b.gamma);
  j["epsilon_sum"] = to_string(b.epsilon_sum);
  j["total"] = to_string(b.total);
  return j;
}

Json to_json(const Threshold& t) {
  Json j;
  j["bound"] = t.describe();
  j["log_bound"] = to_string(t.log_abs);
  j["value"] = t.value ? Json(t.value->get_str()) : Json(nullptr);
  j["extended_search"] = t.extended;
  j["c1"] = t.c1;
  return j;
}

Json to_json(const WitnessReport& w) {
  Json j;
  j["ell"] = w.ell;
  j["n"] = w.n;
  j["D"] = w.disc;
  j["predicted_at_least"] = w.predicted;
  j["observed"] = w.observed;
  j["pass"] = w.pass;
  return j;
}

Json to_json(const NicePair& np) {
  Json j;
  j["delta0"] = np.disc0;
  j["hilbert_class_polynomial"] = np.hilbert.to_string();
  j["primes"] = np.primes;
  j["height_j0"] = np.height_j0;
  j["valid"] = np.valid;
  j["failures"] = np.failures;
  return j;
}

}  // namespace cmsunit
