#pragma once

/// Text and JSON renderings of measurements, certificates and search outcomes.

#include <cstdio>
#include <sstream>
#include <string>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "ptf/boolean_function.hpp"
#include "ptf/exact_lp.hpp"
#include "ptf/hsf_search.hpp"

namespace ptf {

/// 12 significant digits, then "(exact)" when the decimal equals q, else "(approx)".
inline std::string decimal_text(const mpq_class& q) {
  mpf_class f(q, 256);
  char buf[64];
  gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
  mpq_class back;
  // Parse the printed decimal back as a rational to decide exactness.
  std::string s(buf);
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = std::stol(s.substr(e + 1));
  }
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string digits;
  long frac = 0;
  bool after = false;
  for (char c : mant) {
    if (c == '.') {
      after = true;
      continue;
    }
    digits += c;
    if (after) ++frac;
  }
  mpz_class num(digits), den = 1, ten = 10;
  const long shift = exp10 - frac;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    den = p;
  } else {
    num *= p;
  }
  back = mpq_class(neg ? mpz_class(-num) : num, den);
  back.canonicalize();
  return s + (back == q ? " (exact)" : " (approx)");
}

inline std::string exact_text(const mpq_class& q) { return q.get_str(); }

inline nlohmann::json to_json(const SearchStageReport& r) {
  nlohmann::json j;
  j["stage"] = r.stage;
  j["candidates_in"] = r.candidates_in;
  j["survivors_out"] = r.survivors_out;
  j["seconds"] = r.seconds;
  auto w = nlohmann::json::array();
  for (const auto& f : r.witnesses) w.push_back(to_hex(f));
  j["witnesses"] = w;
  return j;
}

/// Deterministic content only (no timings) unless with_timing is set.
inline nlohmann::json to_json(const SearchOutcome& o, bool with_timing = true) {
  nlohmann::json j;
  j["n"] = o.n;
  j["d"] = o.d;
  j["verdict"] = to_string(o.verdict);
  if (!o.note.empty()) j["note"] = o.note;
  auto reps = nlohmann::json::array();
  for (const auto& r : o.representatives) {
    reps.push_back({{"table", to_hex(r.function)},
                    {"dichromatic", r.dichromatic},
                    {"certificate", certificate_text(FeasibilityResult{r.certificate})}});
  }
  j["representatives"] = reps;
  auto stages = nlohmann::json::array();
  for (const auto& s : o.stages) {
    auto sj = to_json(s);
    if (!with_timing) sj.erase("seconds");
    stages.push_back(sj);
  }
  j["stages"] = stages;
  return j;
}

inline std::string outcome_text(const SearchOutcome& o, bool with_timing = true) {
  std::ostringstream os;
  os << "search n=" << o.n << " d=" << o.d << "\n";
  for (const auto& s : o.stages) {
    os << "  stage " << s.stage << ": " << s.candidates_in << " -> " << s.survivors_out;
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.2fs)", s.seconds);
      os << buf;
    }
    os << "\n";
  }
  for (const auto& r : o.representatives) os << "  class " << to_hex(r.function) << " D=" << r.dichromatic << "\n";
  os << "verdict: " << to_string(o.verdict);
  if (!o.note.empty()) os << " (" << o.note << ")";
  os << "\n";
  return os.str();
}

}  // namespace ptf
