#pragma once

/// Staged, symmetry-reduced searches for hypersensitive functions: degree-d
/// PTFs f on n variables with D[f] > D[f*_{n,d}].
///
/// Exhaustive pipeline (n <= 6, tables streamed in shards):
///   1. dichromatic-count   keep D[f] > D[f*_{n,d}]
///   2. canonical-dedup     keep f iff it is the smallest table of its orbit
///   3. necessary-filters   cheap certificates of non-PTF-ness (optional)
///   4. exact-lp            exact feasibility at degree d
/// Every surviving representative carries a primal certificate and a recount.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ptf/boolean_function.hpp"
#include "ptf/constructions.hpp"
#include "ptf/exact_lp.hpp"
#include "ptf/symmetry.hpp"

namespace ptf {

struct SearchBudget {
  std::uint64_t max_tables = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_classes = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_lp_calls = std::numeric_limits<std::uint64_t>::max();
};

struct SearchOptions {
  SearchBudget budget;
  unsigned threads = 1;
  bool necessary_filters = true;
  std::size_t max_witnesses = 16;
};

struct SearchStageReport {
  std::string stage;
  std::uint64_t candidates_in = 0;
  std::uint64_t survivors_out = 0;
  double seconds = 0;
  std::vector<BooleanFunction> witnesses;  // sorted, at most max_witnesses
};

enum class Verdict { NoHsfFound, HsfClassesFound, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NoHsfFound: return "no-HSF-found";
    case Verdict::HsfClassesFound: return "HSF-classes-found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct HsfRepresentative {
  BooleanFunction function;
  std::uint64_t dichromatic = 0;
  PtfCertificate certificate;
};

struct SearchOutcome {
  int n = 0;
  int d = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<HsfRepresentative> representatives;
  std::vector<SearchStageReport> stages;
  std::string note;
};

// ---------------------------------------------------------------------------
// Known maxima and necessary conditions

/// Largest D over degree-d PTFs on n variables where that maximum is
/// established: d <= 1 (O'Neil), d >= n-2 (parity arguments), n = 6, and the
/// unique exception (5,2) with 51. Empty where it is not known.
inline std::optional<std::uint64_t> known_max_count(int n, int d) {
  if (n < 1) return std::nullopt;
  if (d >= n) return static_cast<std::uint64_t>(n) << (n - 1);
  if (d <= 1 || d >= n - 2 || n == 6) return gl_extremal_count(n, d);
  if (n == 5 && d == 2) return 51;
  return std::nullopt;
}

enum class FilterVerdict { Inconclusive, ParitySubcube, RestrictionTooSensitive };

/// Cheap necessary conditions for f to be a degree-d PTF:
///  (a) no (d+1)-dimensional subcube restriction equals +-parity;
///  (b) no (n-1)-variable restriction exceeds the known (n-1, d) maximum.
inline FilterVerdict necessary_filter_verdict(const BooleanFunction& f, int d) {
  const int n = f.num_vars();
  if (d + 1 <= n) {
    const std::size_t all = f.size() - 1;
    for (std::size_t free = 0; free <= all; ++free) {
      if (std::popcount(free) != d + 1) continue;
      const std::size_t rest = all & ~free;
      // Iterate assignments of the fixed coordinates as submasks of `rest`.
      std::size_t base = 0;
      for (;;) {
        bool constant = true;
        int first = 0;
        bool have_first = false;
        std::size_t sub = 0;
        for (;;) {
          const int chi = std::popcount(free & ~sub) % 2;
          const int v = static_cast<int>(f.bit(base | sub)) ^ chi;
          if (!have_first) {
            first = v;
            have_first = true;
          } else if (v != first) {
            constant = false;
            break;
          }
          if (sub == free) break;
          sub = (sub - free) & free;
        }
        if (constant) return FilterVerdict::ParitySubcube;
        if (base == rest) break;
        base = (base - rest) & rest;
      }
    }
  }
  if (n >= 2) {
    if (const auto cap = known_max_count(n - 1, d)) {
      for (int i = 0; i < n; ++i) {
        for (Sign v : {Sign::Negative, Sign::Positive}) {
          if (dichromatic_count(restrict(f, i, v)) > *cap) return FilterVerdict::RestrictionTooSensitive;
        }
      }
    }
  }
  return FilterVerdict::Inconclusive;
}

/// False only when f is provably not a degree-d PTF; true is inconclusive.
inline bool necessary_filters(const BooleanFunction& f, int d) {
  return necessary_filter_verdict(f, d) == FilterVerdict::Inconclusive;
}

namespace detail {

// D of a table with n <= 5 variables held in the low 2^n bits.
inline int small_dichromatic(std::uint32_t t, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) {
    const unsigned s = 1U << i;
    d += std::popcount((t ^ (t >> s)) & static_cast<std::uint32_t>(kLowHalf[i]));
  }
  return d;
}

template <class Fn>
void run_shards(std::size_t shards, unsigned threads, Fn&& fn) {
  threads = std::max(1U, threads);
  if (threads == 1 || shards <= 1) {
    for (std::size_t s = 0; s < shards; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (std::size_t s = next++; s < shards; s = next++) fn(s);
    });
  }
  for (auto& th : pool) th.join();
}

class StageTimer {
 public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void keep_witnesses(SearchStageReport& r, std::vector<BooleanFunction> all, std::size_t cap) {
  std::sort(all.begin(), all.end());
  if (all.size() > cap) all.erase(all.begin() + static_cast<std::ptrdiff_t>(cap), all.end());
  r.witnesses = std::move(all);
}

// Stages 3 and 4 on canonical class representatives.
inline void finish_pipeline(SearchOutcome& out, std::vector<BooleanFunction> classes, const SearchOptions& opt,
                            bool exhaustive) {
  const int d = out.d;
  SearchStageReport filters{"necessary-filters", classes.size(), 0, 0, {}};
  detail::StageTimer t3;
  std::vector<BooleanFunction> residue;
  if (opt.necessary_filters) {
    for (auto& f : classes) {
      if (necessary_filters(f, d)) residue.push_back(std::move(f));
    }
  } else {
    residue = std::move(classes);
    filters.stage = "necessary-filters (disabled)";
  }
  filters.survivors_out = residue.size();
  filters.seconds = t3.seconds();
  keep_witnesses(filters, residue, opt.max_witnesses);
  out.stages.push_back(std::move(filters));

  SearchStageReport lp{"exact-lp", residue.size(), 0, 0, {}};
  detail::StageTimer t4;
  bool truncated = false;
  std::uint64_t calls = 0;
  for (const auto& f : residue) {
    if (calls++ >= opt.budget.max_lp_calls) {
      truncated = true;
      break;
    }
    const FeasibilityResult r = ptf_feasibility(f, d);
    if (const auto* cert = std::get_if<PtfCertificate>(&r)) {
      if (!verify_primal(f, d, *cert)) throw std::logic_error("solver returned an invalid primal certificate");
      out.representatives.push_back({f, dichromatic_count(f), *cert});
    } else if (!verify_farkas(f, d, std::get<InfeasibilityCertificate>(r))) {
      throw std::logic_error("solver returned an invalid Farkas certificate");
    }
  }
  lp.survivors_out = out.representatives.size();
  lp.seconds = t4.seconds();
  std::vector<BooleanFunction> found;
  for (const auto& rep : out.representatives) found.push_back(rep.function);
  keep_witnesses(lp, found, opt.max_witnesses);
  out.stages.push_back(std::move(lp));
  std::sort(out.representatives.begin(), out.representatives.end(),
            [](const HsfRepresentative& a, const HsfRepresentative& b) { return a.function < b.function; });

  if (!out.representatives.empty()) {
    out.verdict = Verdict::HsfClassesFound;
  } else if (truncated) {
    out.verdict = Verdict::Inconclusive;
    out.note = "LP budget exhausted";
  } else if (!exhaustive) {
    out.verdict = Verdict::Inconclusive;
    if (out.note.empty()) out.note = "candidate set is not exhaustive";
  } else {
    out.verdict = Verdict::NoHsfFound;
  }
}

}  // namespace detail

/// Exhaustive search over every function on n <= 6 variables. For n = 6 the
/// table space (2^64) exceeds any practical budget and the verdict is
/// inconclusive unless an HSF turns up.
inline SearchOutcome bounded_search(int n, int d, const SearchOptions& opt = {}) {
  if (n < 1 || n > 6) throw std::out_of_range("exhaustive search supports 1 <= n <= 6");
  check_degree(n, d);
  SearchOutcome out;
  out.n = n;
  out.d = d;
  const std::uint64_t threshold = gl_extremal_count(n, d);

  // Table space; 2^64 at n = 6 is represented by its last element.
  const std::uint64_t last = n == 6 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << (1U << n)) - 1;
  const std::uint64_t limit = opt.budget.max_tables == 0 ? 0 : std::min(last, opt.budget.max_tables - 1);
  const bool covers_all = opt.budget.max_tables > last;

  constexpr std::uint64_t kShardSize = std::uint64_t{1} << 24;
  const std::uint64_t shards = limit / kShardSize + 1;
  struct Shard {
    std::uint64_t above = 0;
    std::vector<std::uint64_t> classes;
  };
  std::vector<Shard> results(shards);
  SearchStageReport count_stage{"dichromatic-count", covers_all && n < 6 ? last + 1 : limit + 1, 0, 0, {}};
  detail::StageTimer t1;
  detail::run_shards(shards, opt.threads, [&](std::size_t s) {
    const std::uint64_t lo = s * kShardSize;
    const std::uint64_t hi = std::min(limit, lo + kShardSize - 1);
    Shard& r = results[s];
    for (std::uint64_t t = lo;; ++t) {
      int dcount = 0;
      if (n <= 5) {
        dcount = detail::small_dichromatic(static_cast<std::uint32_t>(t), n);
      } else {
        for (int i = 0; i < 6; ++i) {
          dcount += std::popcount((t ^ (t >> (1U << i))) & detail::kLowHalf[i]);
        }
      }
      if (static_cast<std::uint64_t>(dcount) > threshold) {
        ++r.above;
        if (is_orbit_minimum(t, n)) r.classes.push_back(t);
      }
      if (t == hi) break;
    }
  });
  std::uint64_t above = 0;
  std::vector<BooleanFunction> classes;
  for (auto& r : results) {
    above += r.above;
    for (auto t : r.classes) classes.push_back(BooleanFunction::from_words(n, {t}));
  }
  std::sort(classes.begin(), classes.end());
  count_stage.survivors_out = above;
  const double scan_seconds = t1.seconds();
  // Both streamed stages share the scan loop; the time is reported on stage 1.
  count_stage.seconds = scan_seconds;
  out.stages.push_back(count_stage);

  SearchStageReport dedup{"canonical-dedup", above, classes.size(), 0, {}};
  detail::keep_witnesses(dedup, classes, opt.max_witnesses);
  out.stages.push_back(std::move(dedup));

  if (!covers_all) {
    out.note = "table budget exhausted after " + std::to_string(limit + 1) + " tables";
  }
  if (classes.size() > opt.budget.max_classes) {
    out.verdict = Verdict::Inconclusive;
    out.note = "class budget exhausted";
    return out;
  }
  detail::finish_pipeline(out, std::move(classes), opt, covers_all);
  return out;
}

/// Exploratory search over caller-supplied candidates (any n <= 8). The
/// verdict is never no-HSF-found since the candidate set is not exhaustive.
inline SearchOutcome bounded_search(int n, int d, const std::function<std::optional<BooleanFunction>()>& next,
                                    const SearchOptions& opt = {}) {
  check_degree(n, d);
  detail::check_orbit_size(n);
  SearchOutcome out;
  out.n = n;
  out.d = d;
  const std::uint64_t threshold = gl_extremal_count(n, d);
  SearchStageReport count_stage{"dichromatic-count", 0, 0, 0, {}};
  detail::StageTimer t1;
  std::vector<BooleanFunction> above;
  bool truncated = false;
  while (auto f = next()) {
    if (f->num_vars() != n) throw std::invalid_argument("candidate has the wrong variable count");
    if (count_stage.candidates_in >= opt.budget.max_tables) {
      truncated = true;
      break;
    }
    ++count_stage.candidates_in;
    if (dichromatic_count(*f) > threshold) above.push_back(std::move(*f));
  }
  count_stage.survivors_out = above.size();
  count_stage.seconds = t1.seconds();
  out.stages.push_back(count_stage);

  SearchStageReport dedup{"canonical-dedup", above.size(), 0, 0, {}};
  detail::StageTimer t2;
  std::vector<BooleanFunction> classes;
  for (const auto& f : above) classes.push_back(canonical_form(f).representative);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  dedup.survivors_out = classes.size();
  dedup.seconds = t2.seconds();
  detail::keep_witnesses(dedup, classes, opt.max_witnesses);
  out.stages.push_back(std::move(dedup));
  if (truncated) out.note = "table budget exhausted";
  detail::finish_pipeline(out, std::move(classes), opt, false);
  return out;
}

/// Every function on 5 variables: exactly one class of (5,2)-HSFs is expected.
inline SearchOutcome search_5_2(const SearchOptions& opt = {}) { return bounded_search(5, 2, opt); }

/// The outcome claims a unique (5,2)-HSF class, equivalent to f_{5,2}, with D = 51.
inline bool matches_uniqueness_claim(const SearchOutcome& out) {
  if (out.n != 5 || out.d != 2 || out.verdict != Verdict::HsfClassesFound || out.representatives.size() != 1) {
    return false;
  }
  const auto& rep = out.representatives.front();
  return rep.dichromatic == 51 && equivalent(rep.function, build_hsf_5_2()).has_value();
}

// ---------------------------------------------------------------------------
// (6,2)

/// Exact replay of the counting chain that reduces a hypothetical
/// (6,2)-HSF to D = 122 with two restrictions equivalent to f_{5,2}.
struct SixTwoBounds {
  std::uint64_t max_5_2 = 51;              // largest D over (5,2)-PTFs
  std::uint64_t extremal_6_2 = 0;          // D[f*_{6,2}]
  mpq_class restriction_bound;             // (2n/(n-1)) * max_5_2 = 122.4
  std::uint64_t forced_count = 0;          // largest even integer <= bound
  mpq_class mean_restriction_count;        // (5/12) * forced_count
  bool forced_unique = false;              // extremal < forced_count <= bound, forced_count the only even option
  bool mean_exceeds_half_past_50 = false;  // mean > 50.5
};

inline SixTwoBounds six_two_bounds(std::uint64_t max_5_2 = 51) {
  SixTwoBounds b;
  b.max_5_2 = max_5_2;
  b.extremal_6_2 = gl_extremal_count(6, 2);
  b.restriction_bound = mpq_class(12, 5) * mpq_class(to_mpz(max_5_2));
  b.restriction_bound.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), b.restriction_bound.get_num_mpz_t(), b.restriction_bound.get_den_mpz_t());
  if (fl % 2 != 0) fl -= 1;
  b.forced_count = to_u64(fl);
  b.mean_restriction_count = mpq_class(5, 12) * mpq_class(fl);
  b.mean_restriction_count.canonicalize();
  b.forced_unique = b.extremal_6_2 < b.forced_count && b.forced_count - 2 <= b.extremal_6_2;
  b.mean_exceeds_half_past_50 = b.mean_restriction_count > mpq_class(101, 2);
  return b;
}

struct SixTwoResult {
  SearchOutcome outcome;
  std::uint64_t orbit_size = 0;
  std::uint64_t pairs = 0;
  std::uint64_t pairs_at_122 = 0;
  std::uint64_t reduced = 0;  // survivors whose x6 = -1 half is f_{5,2} itself
  std::uint64_t lp_infeasible = 0;
  std::uint64_t certificates_verified = 0;
  std::vector<std::pair<BooleanFunction, InfeasibilityCertificate>> reduced_certificates;
};

/// Farkas multipliers for apply(t, f), given multipliers for f.
inline InfeasibilityCertificate transport(const SignedPermutation& t, const InfeasibilityCertificate& lambda) {
  if (t.num_vars() != lambda.n) throw std::invalid_argument("dimension mismatch in transport");
  InfeasibilityCertificate mu{lambda.n, lambda.d, std::vector<mpq_class>(lambda.multipliers.size())};
  for (std::size_t y = 0; y < mu.multipliers.size(); ++y) mu.multipliers[y] = lambda.multipliers[t.source_index(y)];
  return mu;
}

inline SignedPermutation extend_fixing_last(const SignedPermutation& t) {
  std::vector<int> sigma = t.sigma();
  std::vector<Sign> alpha = t.alpha();
  sigma.push_back(t.num_vars());
  alpha.push_back(Sign::Positive);
  return SignedPermutation(std::move(sigma), std::move(alpha), t.beta());
}

/// All f on 6 variables whose restrictions x6 = -1 and x6 = +1 both lie in the
/// orbit of f_{5,2}, filtered to D[f] = 122, decided by exact LP at degree 2.
/// Pairs are reduced by the group acting on x1..x5 so the LP runs on classes
/// with first half f_{5,2}; each class certificate is transported back to and
/// verified on every individual survivor.
inline SixTwoResult search_6_2(const BooleanFunction& f52 = build_hsf_5_2(), const SearchOptions& opt = {}) {
  if (f52.num_vars() != 5) throw std::invalid_argument("search_6_2 needs the 5-variable orbit seed");
  SixTwoResult res;
  res.outcome.n = 6;
  res.outcome.d = 2;
  const std::uint64_t target = six_two_bounds(dichromatic_count(f52)).forced_count;

  detail::StageTimer t0;
  const auto orb = orbit_with_witnesses(f52);
  res.orbit_size = orb.size();
  std::vector<std::uint32_t> tables;
  std::vector<const SignedPermutation*> witness;
  for (const auto& [g, t] : orb) {
    tables.push_back(g.low_word32());
    witness.push_back(&t);
  }
  const std::uint64_t d5 = dichromatic_count(f52);
  SearchStageReport pair_stage{"condition-star-pairs", 0, 0, 0, {}};
  std::vector<std::pair<std::size_t, std::size_t>> survivors;
  for (std::size_t a = 0; a < tables.size(); ++a) {
    for (std::size_t b = 0; b < tables.size(); ++b) {
      ++pair_stage.candidates_in;
      if (2 * d5 + static_cast<std::uint64_t>(std::popcount(tables[a] ^ tables[b])) == target) {
        survivors.emplace_back(a, b);
      }
    }
  }
  auto join = [](std::uint32_t lo, std::uint32_t hi) {
    return BooleanFunction::from_words(6, {std::uint64_t{lo} | (std::uint64_t{hi} << 32)});
  };
  res.pairs = pair_stage.candidates_in;
  res.pairs_at_122 = survivors.size();
  pair_stage.survivors_out = survivors.size();
  pair_stage.seconds = t0.seconds();
  {
    std::vector<BooleanFunction> w;
    for (std::size_t k = 0; k < std::min(survivors.size(), opt.max_witnesses); ++k) {
      w.push_back(join(tables[survivors[k].first], tables[survivors[k].second]));
    }
    detail::keep_witnesses(pair_stage, std::move(w), opt.max_witnesses);
  }
  res.outcome.stages.push_back(std::move(pair_stage));

  // Reduce: map each pair (a, b) to (f52, t_a^{-1} b).
  detail::StageTimer t1;
  const std::uint32_t seed = f52.low_word32();
  std::map<BooleanFunction, std::size_t> reduced_index;
  std::vector<BooleanFunction> reduced;
  for (const auto& [a, b] : survivors) {
    if (tables[a] != seed) continue;
    const BooleanFunction f = join(tables[a], tables[b]);
    if (reduced_index.emplace(f, reduced.size()).second) reduced.push_back(f);
  }
  res.reduced = reduced.size();
  SearchStageReport reduce_stage{"symmetry-reduction", survivors.size(), reduced.size(), t1.seconds(), {}};
  detail::keep_witnesses(reduce_stage, reduced, opt.max_witnesses);
  res.outcome.stages.push_back(std::move(reduce_stage));

  detail::StageTimer t2;
  SearchStageReport lp_stage{"exact-lp", reduced.size(), 0, 0, {}};
  std::vector<std::optional<InfeasibilityCertificate>> certs(reduced.size());
  for (std::size_t k = 0; k < reduced.size(); ++k) {
    if (k >= opt.budget.max_lp_calls) break;
    const FeasibilityResult r = ptf_feasibility(reduced[k], 2);
    if (const auto* cert = std::get_if<PtfCertificate>(&r)) {
      if (!verify_primal(reduced[k], 2, *cert)) throw std::logic_error("invalid primal certificate");
      res.outcome.representatives.push_back({reduced[k], dichromatic_count(reduced[k]), *cert});
    } else {
      const auto& lambda = std::get<InfeasibilityCertificate>(r);
      if (!verify_farkas(reduced[k], 2, lambda)) throw std::logic_error("invalid Farkas certificate");
      certs[k] = lambda;
      res.reduced_certificates.emplace_back(reduced[k], lambda);
      ++res.lp_infeasible;
    }
  }
  lp_stage.survivors_out = res.outcome.representatives.size();
  lp_stage.seconds = t2.seconds();
  res.outcome.stages.push_back(std::move(lp_stage));

  // Transport each class certificate to every survivor and verify it there.
  detail::StageTimer t3;
  SearchStageReport transport_stage{"certificate-transport", survivors.size(), 0, 0, {}};
  for (const auto& [a, b] : survivors) {
    const BooleanFunction f = join(tables[a], tables[b]);
    const SignedPermutation to_seed = extend_fixing_last(witness[a]->inverse());
    const BooleanFunction g = apply(to_seed, f);
    const auto it = reduced_index.find(g);
    if (it == reduced_index.end()) throw std::logic_error("survivor does not reduce to a class representative");
    const auto& lambda = certs[it->second];
    if (!lambda) continue;
    // f = apply(to_seed^{-1}, g).
    if (verify_farkas(f, 2, transport(to_seed.inverse(), *lambda))) ++res.certificates_verified;
  }
  transport_stage.survivors_out = res.certificates_verified;
  transport_stage.seconds = t3.seconds();
  res.outcome.stages.push_back(std::move(transport_stage));

  if (!res.outcome.representatives.empty()) {
    res.outcome.verdict = Verdict::HsfClassesFound;
  } else if (res.certificates_verified == res.pairs_at_122) {
    res.outcome.verdict = Verdict::NoHsfFound;
    res.outcome.note = "among functions with both x6-restrictions equivalent to f_{5,2} and D = 122";
  } else {
    res.outcome.verdict = Verdict::Inconclusive;
    res.outcome.note = "not every survivor carries a verified certificate";
  }
  return res;
}

}  // namespace ptf
