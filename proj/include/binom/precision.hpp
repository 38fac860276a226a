#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "binom/bigint.hpp"

namespace binom {

struct PrecisionBudget {
  unsigned integer_bits = 0;
  unsigned fraction_bits = 0;

  [[nodiscard]] unsigned total() const noexcept { return integer_bits + fraction_bits; }
  friend bool operator==(const PrecisionBudget&, const PrecisionBudget&) = default;
};

inline constexpr unsigned kIntegerGuardBits = 8;
inline constexpr unsigned kFractionGuardBits = 32;
inline constexpr unsigned kMinIntegerBits = 16;

/// Fraction-bit floor; BINOM_DEFAULT_PRECISION raises or lowers it.
inline unsigned default_fraction_floor() {
  if (const char* env = std::getenv("BINOM_DEFAULT_PRECISION")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 8 && v <= 1u << 20) return static_cast<unsigned>(v);
  }
  return kFractionGuardBits;
}

namespace detail {
inline unsigned ceil_log2_plus_one(const BigInt& v) {
  // ceil(log2(v + 1)) for v >= 0 equals the bit length of v
  return static_cast<unsigned>(bit_length(v));
}
}  // namespace detail

/// Working precision for one solve.
///
/// integer_bits covers log2 of n^(4+3n/2) d^(3n) max(sigma, 1), the bound on
/// max |log gamma_i| after the monomial change of variables, plus guard bits.
/// fraction_bits keeps each diagonal root within relative error 1/(8 s_ii)
/// after back-substitution through U.
inline PrecisionBudget precision_budget(std::size_t n, const BigInt& d, double sigma,
                                        const BigInt& max_exponent,
                                        unsigned fraction_floor = default_fraction_floor()) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  long d_exp = 0;
  const double d_mant = mpz_get_d_2exp(&d_exp, (d < 1 ? BigInt(1) : d).get_mpz_t());
  const double log2_d = std::log2(d_mant) + static_cast<double>(d_exp);
  const double log2_bound =
      (4.0 + 1.5 * nn) * std::log2(nn) + 3.0 * nn * log2_d + std::log2(std::max(sigma, 1.0));

  PrecisionBudget b;
  const double log2_one_plus =
      log2_bound > 60.0 ? log2_bound : std::log2(1.0 + std::exp2(log2_bound));
  const auto formula = static_cast<unsigned>(std::ceil(log2_one_plus));
  b.integer_bits = std::max(kMinIntegerBits, formula + kIntegerGuardBits);

  const BigInt nd = BigInt(static_cast<unsigned long>(n)) * (d < 1 ? BigInt(1) : d);
  b.fraction_bits = fraction_floor + detail::ceil_log2_plus_one(max_exponent) +
                    detail::ceil_log2_plus_one(nd) +
                    detail::ceil_log2_plus_one(BigInt(static_cast<unsigned long>(n)));
  return b;
}

}  // namespace binom
