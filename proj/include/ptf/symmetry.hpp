#pragma once

/// The signed-permutation group acting on boolean functions: permute inputs,
/// negate inputs, negate the output. Two functions are equivalent when one is
/// the image of the other.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptf/boolean_function.hpp"

namespace ptf {

inline constexpr int kMaxOrbitVariables = 8;

/// t = (sigma, alpha, beta) acts by (t.f)(x) = beta * f(alpha_0 x_sigma(0), ..., alpha_{n-1} x_sigma(n-1)).
class SignedPermutation {
 public:
  static SignedPermutation identity(int n) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    return SignedPermutation(std::move(sigma), std::vector<Sign>(static_cast<std::size_t>(n), Sign::Positive),
                             Sign::Positive);
  }

  SignedPermutation(std::vector<int> sigma, std::vector<Sign> alpha, Sign beta)
      : sigma_(std::move(sigma)), alpha_(std::move(alpha)), beta_(beta) {
    if (sigma_.size() != alpha_.size()) throw std::invalid_argument("sigma and alpha lengths differ");
    std::vector<int> sorted = sigma_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("sigma is not a permutation");
    }
  }

  int num_vars() const { return static_cast<int>(sigma_.size()); }
  const std::vector<int>& sigma() const { return sigma_; }
  const std::vector<Sign>& alpha() const { return alpha_; }
  Sign beta() const { return beta_; }

  // Index of T(x) for the point with index idx, where T(x)_k = alpha_k x_sigma(k).
  std::size_t source_index(std::size_t idx) const {
    std::size_t out = 0;
    for (std::size_t k = 0; k < sigma_.size(); ++k) {
      std::size_t b = (idx >> sigma_[k]) & 1U;
      if (alpha_[k] == Sign::Negative) b ^= 1U;
      out |= b << k;
    }
    return out;
  }

  SignedPermutation inverse() const {
    const std::size_t n = sigma_.size();
    std::vector<int> sigma(n);
    std::vector<Sign> alpha(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto j = static_cast<std::size_t>(sigma_[k]);
      sigma[j] = static_cast<int>(k);
      alpha[j] = alpha_[k];
    }
    return SignedPermutation(std::move(sigma), std::move(alpha), beta_);
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<int> sigma_;
  std::vector<Sign> alpha_;
  Sign beta_ = Sign::Positive;
};

/// The transformation "apply `first`, then `second`":
/// apply(compose(second, first), f) == apply(second, apply(first, f)).
inline SignedPermutation compose(const SignedPermutation& second, const SignedPermutation& first) {
  if (second.num_vars() != first.num_vars()) throw std::invalid_argument("dimension mismatch in compose");
  const auto n = static_cast<std::size_t>(first.num_vars());
  std::vector<int> sigma(n);
  std::vector<Sign> alpha(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto mid = static_cast<std::size_t>(first.sigma()[k]);
    sigma[k] = second.sigma()[mid];
    alpha[k] = first.alpha()[k] * second.alpha()[mid];
  }
  return SignedPermutation(std::move(sigma), std::move(alpha), first.beta() * second.beta());
}

inline BooleanFunction apply(const SignedPermutation& t, const BooleanFunction& f) {
  if (t.num_vars() != f.num_vars()) throw std::invalid_argument("dimension mismatch in apply");
  const bool negate = t.beta() == Sign::Negative;
  return BooleanFunction::from_predicate(f.num_vars(), [&](std::size_t y) {
    return f.bit(t.source_index(y)) != negate;
  });
}

template <class Rng>
SignedPermutation random_signed_permutation(int n, Rng& rng) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<Sign> alpha(static_cast<std::size_t>(n));
  for (auto& a : alpha) a = sign_from_bit(coin(rng));
  return SignedPermutation(std::move(sigma), std::move(alpha), sign_from_bit(coin(rng)));
}

// Text form: "sigma=<1-based images> alpha=<+-1 list> beta=<+-1>".
inline std::string to_text(const SignedPermutation& t) {
  std::ostringstream os;
  os << "sigma=";
  for (std::size_t k = 0; k < t.sigma().size(); ++k) os << (k ? " " : "") << t.sigma()[k] + 1;
  os << " alpha=";
  for (std::size_t k = 0; k < t.alpha().size(); ++k) os << (k ? " " : "") << to_int(t.alpha()[k]);
  os << " beta=" << to_int(t.beta());
  return os.str();
}

inline SignedPermutation parse_signed_permutation(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<int> sigma;
  std::vector<Sign> alpha;
  std::optional<Sign> beta;
  enum class Field { None, Sigma, Alpha, Beta } field = Field::None;
  auto take = [&](const std::string& value) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed signed permutation token '" + value + "'");
    }
    switch (field) {
      case Field::Sigma: sigma.push_back(v - 1); break;
      case Field::Alpha: alpha.push_back(sign_from_int(v)); break;
      case Field::Beta:
        if (beta) throw std::invalid_argument("beta given twice");
        beta = sign_from_int(v);
        break;
      case Field::None: throw std::invalid_argument("value before field name");
    }
  };
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      const std::string name = tok.substr(0, eq);
      if (name == "sigma") field = Field::Sigma;
      else if (name == "alpha") field = Field::Alpha;
      else if (name == "beta") field = Field::Beta;
      else throw std::invalid_argument("unknown field '" + name + "'");
      tok = tok.substr(eq + 1);
      if (tok.empty()) continue;
    }
    take(tok);
  }
  if (!beta) throw std::invalid_argument("missing beta");
  return SignedPermutation(std::move(sigma), std::move(alpha), *beta);
}

namespace detail {

// Adjacent transpositions (position of the left element) that visit all n!
// permutations, Steinhaus-Johnson-Trotter order.
inline std::vector<int> sjt_swaps(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::vector<int> dir(static_cast<std::size_t>(n), -1);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> swaps;
  for (;;) {
    int mobile = -1;
    for (int i = 0; i < n; ++i) {
      const int j = i + dir[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
      if (j < 0 || j >= n) continue;
      if (p[static_cast<std::size_t>(j)] > p[static_cast<std::size_t>(i)]) continue;
      if (mobile < 0 || p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(mobile)]) mobile = i;
    }
    if (mobile < 0) break;
    const int v = p[static_cast<std::size_t>(mobile)];
    const int j = mobile + dir[static_cast<std::size_t>(v)];
    swaps.push_back(std::min(mobile, j));
    std::swap(p[static_cast<std::size_t>(mobile)], p[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) {
      if (p[static_cast<std::size_t>(i)] > v) dir[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] *= -1;
    }
  }
  return swaps;
}

enum class StepKind : std::uint8_t { Flip, Swap };

// Calls step(kind, var) for a sequence of n! 2^n - 1 elementary moves that,
// started from any table, visits every input transformation exactly once.
// Flip v negates input v; Swap v exchanges inputs v and v+1. Stops early when
// step returns false; returns whether the sequence completed.
template <class Step>
bool for_each_group_step(int n, Step&& step) {
  const std::vector<int> swaps = sjt_swaps(n);
  const std::size_t flips = (std::size_t{1} << n) - 1;
  for (std::size_t block = 0; block <= swaps.size(); ++block) {
    for (std::size_t k = 1; k <= flips; ++k) {
      if (!step(StepKind::Flip, std::countr_zero(k))) return false;
    }
    if (block < swaps.size() && !step(StepKind::Swap, swaps[block])) return false;
  }
  return true;
}

// Truth table of at most 6 variables in one word.
struct WordTable {
  std::uint64_t w = 0;

  void flip(int v) {
    const unsigned s = 1U << v;
    w = ((w >> s) & kLowHalf[v]) | ((w & kLowHalf[v]) << s);
  }
  void swap_adjacent(int v) {
    const unsigned s = 1U << v;
    const std::uint64_t mask = ~kLowHalf[v] & kLowHalf[v + 1];
    const std::uint64_t x = ((w >> s) ^ w) & mask;
    w ^= x ^ (x << s);
  }
  WordTable negated(std::uint64_t used) const { return {~w & used}; }
  friend auto operator<=>(const WordTable&, const WordTable&) = default;
};

// Truth table of at most 8 variables in four words.
struct QuadTable {
  std::array<std::uint64_t, 4> w{};
  std::size_t words = 1;

  void flip(int v) {
    if (v < 6) {
      const unsigned s = 1U << v;
      for (std::size_t j = 0; j < words; ++j) w[j] = ((w[j] >> s) & kLowHalf[v]) | ((w[j] & kLowHalf[v]) << s);
    } else {
      const std::size_t stride = std::size_t{1} << (v - 6);
      for (std::size_t j = 0; j < words; ++j) {
        if (!(j & stride)) std::swap(w[j], w[j + stride]);
      }
    }
  }
  void swap_adjacent(int v) {
    if (v + 1 < 6) {
      const unsigned s = 1U << v;
      const std::uint64_t mask = ~kLowHalf[v] & kLowHalf[v + 1];
      for (std::size_t j = 0; j < words; ++j) {
        const std::uint64_t x = ((w[j] >> s) ^ w[j]) & mask;
        w[j] ^= x ^ (x << s);
      }
    } else if (v == 5) {
      constexpr std::uint64_t hi = ~kLowHalf[5];
      for (std::size_t j = 0; j < words; j += 2) {
        const std::uint64_t w0 = w[j];
        const std::uint64_t w1 = w[j + 1];
        w[j] = (w0 & ~hi) | ((w1 & ~hi) << 32);
        w[j + 1] = (w1 & hi) | ((w0 & hi) >> 32);
      }
    } else {
      const std::size_t lo = std::size_t{1} << (v - 6);
      const std::size_t hi = lo << 1;
      for (std::size_t j = 0; j < words; ++j) {
        if ((j & lo) && !(j & hi)) std::swap(w[j], w[j - lo + hi]);
      }
    }
  }
  QuadTable negated(std::uint64_t used) const {
    QuadTable r = *this;
    for (std::size_t j = 0; j < words; ++j) r.w[j] = ~w[j];
    r.w[words - 1] &= used;
    return r;
  }
  friend std::strong_ordering operator<=>(const QuadTable& a, const QuadTable& b) {
    for (std::size_t j = a.words; j-- > 0;) {
      if (a.w[j] != b.w[j]) return a.w[j] <=> b.w[j];
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const QuadTable& a, const QuadTable& b) { return (a <=> b) == 0; }
};

inline QuadTable to_quad(const BooleanFunction& f) {
  QuadTable t;
  t.words = f.words().size();
  std::copy(f.words().begin(), f.words().end(), t.w.begin());
  return t;
}

inline BooleanFunction from_quad(int n, const QuadTable& t) {
  return BooleanFunction::from_words(n, std::vector<std::uint64_t>(t.w.begin(), t.w.begin() + static_cast<std::ptrdiff_t>(t.words)));
}

// Tracks the group element reached by a sequence of elementary moves.
class TransformTracker {
 public:
  explicit TransformTracker(int n)
      : sigma_(static_cast<std::size_t>(n)), inverse_(static_cast<std::size_t>(n)),
        alpha_(static_cast<std::size_t>(n), Sign::Positive) {
    std::iota(sigma_.begin(), sigma_.end(), 0);
    std::iota(inverse_.begin(), inverse_.end(), 0);
  }

  void step(StepKind kind, int v) {
    if (kind == StepKind::Flip) {
      auto& a = alpha_[static_cast<std::size_t>(inverse_[static_cast<std::size_t>(v)])];
      a = -a;
    } else {
      const auto ka = static_cast<std::size_t>(inverse_[static_cast<std::size_t>(v)]);
      const auto kb = static_cast<std::size_t>(inverse_[static_cast<std::size_t>(v + 1)]);
      std::swap(sigma_[ka], sigma_[kb]);
      std::swap(inverse_[static_cast<std::size_t>(v)], inverse_[static_cast<std::size_t>(v + 1)]);
    }
  }

  SignedPermutation current(Sign beta) const { return SignedPermutation(sigma_, alpha_, beta); }

 private:
  std::vector<int> sigma_;
  std::vector<int> inverse_;
  std::vector<Sign> alpha_;
};

inline void check_orbit_size(int n) {
  if (n > kMaxOrbitVariables) {
    throw std::out_of_range("group enumeration is limited to n <= " + std::to_string(kMaxOrbitVariables));
  }
}

}  // namespace detail

/// Fast test used by the searches: is `table` (n <= 6 variables, one word) the
/// smallest table in its orbit? Exits at the first smaller image.
inline bool is_orbit_minimum(std::uint64_t table, int n) {
  if (n < 1 || n > 6) throw std::out_of_range("is_orbit_minimum supports 1 <= n <= 6");
  const std::uint64_t used = detail::used_mask(n);
  const detail::WordTable start{table};
  if (start.negated(used) < start) return false;
  detail::WordTable cur = start;
  return detail::for_each_group_step(n, [&](detail::StepKind kind, int v) {
    if (kind == detail::StepKind::Flip) cur.flip(v);
    else cur.swap_adjacent(v);
    return !(cur < start || cur.negated(used) < start);
  });
}

struct CanonicalForm {
  BooleanFunction representative;
  SignedPermutation witness;  // apply(witness, f) == representative
};

/// Smallest table in the orbit of f under the full group (n <= 8), with a
/// transformation reaching it.
inline CanonicalForm canonical_form(const BooleanFunction& f) {
  const int n = f.num_vars();
  detail::check_orbit_size(n);
  const std::uint64_t used = detail::used_mask(n);
  detail::QuadTable cur = detail::to_quad(f);
  detail::QuadTable best = cur;
  std::size_t best_step = 0;
  bool best_negated = false;
  auto consider = [&](std::size_t step) {
    if (cur < best) {
      best = cur;
      best_step = step;
      best_negated = false;
    }
    const auto neg = cur.negated(used);
    if (neg < best) {
      best = neg;
      best_step = step;
      best_negated = true;
    }
  };
  consider(0);
  std::size_t step = 0;
  detail::for_each_group_step(n, [&](detail::StepKind kind, int v) {
    if (kind == detail::StepKind::Flip) cur.flip(v);
    else cur.swap_adjacent(v);
    consider(++step);
    return true;
  });

  detail::TransformTracker tracker(n);
  std::size_t replay = 0;
  detail::for_each_group_step(n, [&](detail::StepKind kind, int v) {
    if (replay == best_step) return false;
    tracker.step(kind, v);
    ++replay;
    return true;
  });
  return {detail::from_quad(n, best), tracker.current(best_negated ? Sign::Negative : Sign::Positive)};
}

/// A witness t with apply(t, f) == g, if f ~ g.
inline std::optional<SignedPermutation> equivalent(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.num_vars() != g.num_vars()) throw std::invalid_argument("dimension mismatch in equivalent");
  const CanonicalForm cf = canonical_form(f);
  const CanonicalForm cg = canonical_form(g);
  if (cf.representative != cg.representative) return std::nullopt;
  return compose(cg.witness.inverse(), cf.witness);
}

/// Every image of f under the group, each with one transformation producing it.
inline std::map<BooleanFunction, SignedPermutation> orbit_with_witnesses(const BooleanFunction& f) {
  const int n = f.num_vars();
  detail::check_orbit_size(n);
  const std::uint64_t used = detail::used_mask(n);
  std::map<BooleanFunction, SignedPermutation> out;
  detail::QuadTable cur = detail::to_quad(f);
  detail::TransformTracker tracker(n);
  auto record = [&]() {
    out.try_emplace(detail::from_quad(n, cur), tracker.current(Sign::Positive));
    out.try_emplace(detail::from_quad(n, cur.negated(used)), tracker.current(Sign::Negative));
  };
  record();
  detail::for_each_group_step(n, [&](detail::StepKind kind, int v) {
    if (kind == detail::StepKind::Flip) cur.flip(v);
    else cur.swap_adjacent(v);
    tracker.step(kind, v);
    record();
    return true;
  });
  return out;
}

/// The orbit of f, sorted ascending. Size divides 2 n! 2^n.
inline std::vector<BooleanFunction> orbit(const BooleanFunction& f) {
  const int n = f.num_vars();
  detail::check_orbit_size(n);
  const std::uint64_t used = detail::used_mask(n);
  std::vector<detail::QuadTable> seen;
  std::size_t compact_at = std::size_t{1} << 20;
  detail::QuadTable cur = detail::to_quad(f);
  seen.push_back(cur);
  seen.push_back(cur.negated(used));
  detail::for_each_group_step(n, [&](detail::StepKind kind, int v) {
    if (kind == detail::StepKind::Flip) cur.flip(v);
    else cur.swap_adjacent(v);
    seen.push_back(cur);
    seen.push_back(cur.negated(used));
    if (seen.size() > compact_at) {
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      compact_at = std::max(compact_at, 2 * seen.size());
    }
    return true;
  });
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<BooleanFunction> out;
  out.reserve(seen.size());
  for (const auto& t : seen) out.push_back(detail::from_quad(n, t));
  return out;
}

}  // namespace ptf
