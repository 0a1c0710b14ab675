#pragma once

/// Boolean functions on {-1,+1}^n stored as packed truth tables.
///
/// A point x is addressed by idx(x) = sum_i b_i 2^i with b_i = (x_i + 1) / 2,
/// variables numbered from 0. Bit idx of the table is 1 iff f(x) = +1, so
/// fixing the highest variable splits the table into two contiguous halves.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ptf {

inline constexpr int kMaxVariables = 24;

enum class Sign : std::int8_t { Negative = -1, Positive = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign operator-(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }
constexpr Sign operator*(Sign a, Sign b) { return a == b ? Sign::Positive : Sign::Negative; }
constexpr Sign sign_from_bit(bool positive) { return positive ? Sign::Positive : Sign::Negative; }

inline Sign sign_from_int(int v) {
  if (v == 1) return Sign::Positive;
  if (v == -1) return Sign::Negative;
  throw std::invalid_argument("sign must be -1 or +1, got " + std::to_string(v));
}

// Sign of a value that must not vanish.
template <class T>
Sign sign_of_nonzero(const T& v) {
  if (v == 0) throw std::domain_error("sign of zero is undefined");
  return v > 0 ? Sign::Positive : Sign::Negative;
}

namespace detail {

// Bits of a word whose index has bit i clear, for i < 6.
inline constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};

constexpr std::size_t word_count(int n) { return n <= 6 ? 1 : std::size_t{1} << (n - 6); }

constexpr std::uint64_t used_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::size_t{1} << n)) - 1;
}

inline void check_vars(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw std::out_of_range("variable count " + std::to_string(n) + " outside [1, " +
                            std::to_string(kMaxVariables) + "]");
  }
}

}  // namespace detail

inline int hamming_weight(std::size_t idx) { return std::popcount(idx); }

// Coordinate sum of the point with the given index: s = 2k - n for weight k.
inline int coordinate_sum(std::size_t idx, int n) { return 2 * hamming_weight(idx) - n; }

constexpr int weight_from_sum(int sum, int n) { return (sum + n) / 2; }
constexpr int sum_from_weight(int weight, int n) { return 2 * weight - n; }

inline std::size_t index_of(std::span<const int> x) {
  if (x.size() > static_cast<std::size_t>(kMaxVariables)) throw std::out_of_range("point too long");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) {
      idx |= std::size_t{1} << i;
    } else if (x[i] != -1) {
      throw std::invalid_argument("point coordinates must be -1 or +1");
    }
  }
  return idx;
}

inline std::vector<int> point_of(std::size_t idx, int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (idx >> i) & 1U ? 1 : -1;
  return x;
}

class BooleanFunction {
 public:
  /// make_function: `bits[idx]` is nonzero iff f = +1 at idx.
  static BooleanFunction from_bits(int n, std::span<const std::uint8_t> bits) {
    detail::check_vars(n);
    if (bits.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("truth table has " + std::to_string(bits.size()) +
                                  " entries, expected 2^" + std::to_string(n));
    }
    BooleanFunction f(n);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) f.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return f;
  }

  static BooleanFunction from_words(int n, std::vector<std::uint64_t> words) {
    detail::check_vars(n);
    if (words.size() != detail::word_count(n)) {
      throw std::invalid_argument("word count does not match 2^n bits");
    }
    if (n < 6 && (words[0] & ~detail::used_mask(n)) != 0) {
      throw std::invalid_argument("bits set beyond 2^n");
    }
    BooleanFunction f(n);
    f.words_ = std::move(words);
    return f;
  }

  // Builds f with f(idx) = +1 iff positive_at(idx).
  template <class Pred>
  static BooleanFunction from_predicate(int n, Pred&& positive_at) {
    detail::check_vars(n);
    BooleanFunction f(n);
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t i = 0; i < size; ++i) {
      if (positive_at(i)) f.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return f;
  }

  static BooleanFunction constant(int n, Sign s) {
    return from_predicate(n, [s](std::size_t) { return s == Sign::Positive; });
  }

  // x_0 x_1 ... x_{n-1}
  static BooleanFunction parity(int n) {
    return from_predicate(n, [n](std::size_t i) { return (n - hamming_weight(i)) % 2 == 0; });
  }

  static BooleanFunction dictator(int n, int var) {
    if (var < 0 || var >= n) throw std::out_of_range("dictator variable out of range");
    return from_predicate(n, [var](std::size_t i) { return ((i >> var) & 1U) != 0; });
  }

  int num_vars() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool bit(std::size_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1U; }
  Sign at(std::size_t idx) const { return sign_from_bit(bit(idx)); }

  Sign operator()(std::span<const int> x) const {
    if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("point dimension mismatch");
    return at(index_of(x));
  }

  std::size_t count_positive() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BooleanFunction operator-() const {
    BooleanFunction g = *this;
    for (auto& w : g.words_) w = ~w;
    g.words_.back() &= detail::used_mask(n_);
    return g;
  }

  // Only the low 32 bits are meaningful; valid for n <= 5.
  std::uint32_t low_word32() const { return static_cast<std::uint32_t>(words_[0]); }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

  // Orders by variable count, then by the table read as an integer whose most
  // significant bit is the highest index (the order of the hex rendering).
  friend std::strong_ordering operator<=>(const BooleanFunction& a, const BooleanFunction& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  explicit BooleanFunction(int n) : n_(n), words_(detail::word_count(n), 0) {}

  int n_ = 1;
  std::vector<std::uint64_t> words_;
};

/// Sign of each Hamming-weight layer 0..n of a symmetric function.
class LayerSignPattern {
 public:
  LayerSignPattern(int n, std::vector<Sign> signs) : n_(n), signs_(std::move(signs)) {
    detail::check_vars(n);
    if (signs_.size() != static_cast<std::size_t>(n) + 1) {
      throw std::invalid_argument("layer pattern needs n+1 signs");
    }
  }

  int num_vars() const { return n_; }
  Sign at_weight(int k) const { return signs_.at(static_cast<std::size_t>(k)); }
  Sign at_sum(int s) const { return at_weight(weight_from_sum(s, n_)); }
  std::span<const Sign> signs() const { return signs_; }

 private:
  int n_;
  std::vector<Sign> signs_;
};

inline BooleanFunction symmetric_from_pattern(const LayerSignPattern& p) {
  return BooleanFunction::from_predicate(p.num_vars(), [&p](std::size_t i) {
    return p.at_weight(hamming_weight(i)) == Sign::Positive;
  });
}

/// Number of dichromatic edges along one axis.
inline std::uint64_t axis_dichromatic_count(const BooleanFunction& f, int var) {
  const auto w = f.words();
  std::uint64_t d = 0;
  if (var < 6) {
    const unsigned shift = 1U << var;
    for (auto word : w) d += static_cast<std::uint64_t>(std::popcount((word ^ (word >> shift)) & detail::kLowHalf[var]));
  } else {
    const std::size_t stride = std::size_t{1} << (var - 6);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j & stride) continue;
      d += static_cast<std::uint64_t>(std::popcount(w[j] ^ w[j + stride]));
    }
  }
  return d;
}

/// D[f]: unordered pairs of Hamming neighbours on which f differs.
inline std::uint64_t dichromatic_count(const BooleanFunction& f) {
  std::uint64_t d = 0;
  for (int i = 0; i < f.num_vars(); ++i) d += axis_dichromatic_count(f, i);
  return d;
}

/// AS[f] = 2^{1-n} D[f].
inline mpq_class average_sensitivity(const BooleanFunction& f) {
  mpq_class as(mpz_class(static_cast<unsigned long>(dichromatic_count(f))));
  mpz_class denom = 1;
  denom <<= static_cast<unsigned>(f.num_vars() - 1);
  as /= denom;
  as.canonicalize();
  return as;
}

/// Fixes x_var = value; the remaining variables keep their relative order.
inline BooleanFunction restrict(const BooleanFunction& f, int var, Sign value) {
  const int n = f.num_vars();
  if (n < 2) throw std::domain_error("cannot restrict a function of fewer than 2 variables");
  if (var < 0 || var >= n) throw std::out_of_range("restriction variable out of range");
  const std::size_t low = (std::size_t{1} << var) - 1;
  const std::size_t fixed = value == Sign::Positive ? std::size_t{1} << var : 0;
  return BooleanFunction::from_predicate(n - 1, [&](std::size_t o) {
    return f.bit((o & low) | fixed | ((o & ~low) << 1));
  });
}

// ---------------------------------------------------------------------------
// Truth-table text format:
//   n=<n>
//   <hex digits, most significant digit holds the highest indices>
// There are max(1, 2^n / 4) digits.

inline std::string to_hex(const BooleanFunction& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, f.size() / 4);
  std::string out(digits, '0');
  const auto w = f.words();
  for (std::size_t k = 0; k < digits; ++k) {
    const std::size_t bitpos = 4 * k;
    const unsigned nibble = static_cast<unsigned>((w[bitpos >> 6] >> (bitpos & 63)) & 0xFU);
    out[digits - 1 - k] = kDigits[nibble];
  }
  return out;
}

inline std::string to_truth_table_text(const BooleanFunction& f) {
  return "n=" + std::to_string(f.num_vars()) + "\n" + to_hex(f) + "\n";
}

inline BooleanFunction from_hex(int n, std::string_view hex) {
  detail::check_vars(n);
  const std::size_t digits = std::max<std::size_t>(1, (std::size_t{1} << n) / 4);
  if (hex.size() != digits) {
    throw std::invalid_argument("expected " + std::to_string(digits) + " hex digits, got " +
                                std::to_string(hex.size()));
  }
  std::vector<std::uint64_t> words(detail::word_count(n), 0);
  for (std::size_t k = 0; k < digits; ++k) {
    const char c = hex[digits - 1 - k];
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
    }
    const std::size_t bitpos = 4 * k;
    words[bitpos >> 6] |= std::uint64_t{v} << (bitpos & 63);
  }
  return BooleanFunction::from_words(n, std::move(words));
}

inline BooleanFunction parse_truth_table_text(std::string_view text) {
  auto next_line = [&text]() -> std::string_view {
    while (!text.empty() && (text.front() == '\n' || text.front() == '\r')) text.remove_prefix(1);
    const auto end = text.find_first_of("\r\n");
    std::string_view line = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end);
    return line;
  };
  const std::string_view header = next_line();
  if (header.substr(0, 2) != "n=") throw std::invalid_argument("truth table must start with 'n=<n>'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(std::string(header.substr(2)), &used);
    if (used != header.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed header '" + std::string(header) + "'");
  }
  const std::string_view hex = next_line();
  if (!next_line().empty()) throw std::invalid_argument("unexpected content after truth table");
  return from_hex(n, hex);
}

}  // namespace ptf
