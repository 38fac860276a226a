#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace binom {

using BigInt = mpz_class;

inline BigInt big(long v) { return BigInt(v); }

inline BigInt big_from_i64(std::int64_t v) {
  BigInt r;
  if (v >= 0) {
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  } else {
    // two-step to avoid overflow on INT64_MIN
    const std::uint64_t mag = std::uint64_t(0) - static_cast<std::uint64_t>(v);
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
    r = -r;
  }
  return r;
}

inline std::optional<std::int64_t> to_i64(const BigInt& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 63) return std::nullopt;
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  const bool neg = sgn(v) < 0;
  BigInt mag = abs(v);
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, mag.get_mpz_t());
  return neg ? -static_cast<std::int64_t>(out) : static_cast<std::int64_t>(out);
}

/// Number of machine limbs; the unit of the SNF bit-operation proxy.
inline std::size_t limbs(const BigInt& v) {
  return std::max<std::size_t>(1, mpz_size(v.get_mpz_t()));
}

/// Bits needed for |v| (0 for v = 0).
inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline bool is_odd(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

/// Quotient a/b rounded to the nearest integer, so |a - q*b| <= |b|/2.
inline BigInt nearest_quotient(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // r has the sign of b; move to the nearer multiple
  BigInt twice_r = 2 * r;
  if (sgn(b) > 0 ? twice_r > b : twice_r < b) q += 1;
  return q;
}

}  // namespace binom
