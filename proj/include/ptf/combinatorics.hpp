#pragma once

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

namespace ptf {

// C(n, k), zero outside 0 <= k <= n. Exact for every n used here (n <= 62).
constexpr std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step.
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

inline mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

inline mpq_class to_mpq(std::uint64_t v) { return mpq_class(to_mpz(v)); }

inline std::uint64_t to_u64(const mpz_class& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) {
    throw std::overflow_error("integer does not fit in 64 bits");
  }
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

}  // namespace ptf
