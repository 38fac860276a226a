#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "binom/bigfloat.hpp"
#include "binom/error.hpp"
#include "binom/system.hpp"

namespace binom {

/// Brute-force answer: feasible sign patterns and the common root magnitudes.
struct OracleResult {
  bool exists = false;
  std::uint64_t count = 0;
  std::vector<std::vector<int>> sign_patterns;
  std::vector<double> log_magnitudes;  // ln|x_j|, shared by every real root
};

inline constexpr std::size_t kOracleMaxDimension = 20;

namespace detail {

// Exact inverse of a nonsingular integer matrix over Q (Gauss-Jordan).
inline std::vector<std::vector<mpq_class>> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(Errc::SingularMatrix, "matrix is singular");
    std::swap(a[p], a[c]);
    const mpq_class piv = a[c][c];
    for (auto& v : a[c]) v /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const mpq_class k = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= k * a[c][j];
    }
  }
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

}  // namespace detail

/// Enumerates every sigma in {+-1}^n and keeps those with
/// prod_j sigma_j^{a_ji} = sign(c~_i) for all i. Magnitudes solve
/// A^T ln|x| = ln|c~| exactly over Q, then in 128-bit floating point.
inline OracleResult sign_enumeration_oracle(const BinomialSystem& f) {
  const std::size_t n = f.n();
  if (n > kOracleMaxDimension) fail(Errc::DimensionTooLarge, "oracle enumerates 2^n sign patterns; n > 20");
  const IntMatrix& a = f.A().entries();

  // parity[i] has bit j set when a_ji is odd; target bit i set when c~_i < 0
  std::vector<std::uint32_t> parity(n, 0);
  std::uint32_t target = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (mpz_odd_p(a(j, i).get_mpz_t())) parity[i] |= std::uint32_t{1} << j;
    const auto& c = f.coefficients()[i];
    if (-(c.c0.sign() * c.c1.sign()) < 0) target |= std::uint32_t{1} << i;
  }

  OracleResult out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint32_t got = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (__builtin_popcount(parity[i] & static_cast<std::uint32_t>(mask)) & 1) got |= std::uint32_t{1} << i;
    if (got != target) continue;
    ++out.count;
    std::vector<int> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = (mask >> j & 1u) ? -1 : 1;
    out.sign_patterns.push_back(std::move(sigma));
  }
  out.exists = out.count > 0;

  const auto inv_t = detail::rational_inverse(a.transpose());
  constexpr mpfr_prec_t kBits = 128;
  std::vector<BigFloat> logs;
  for (const auto& c : f.coefficients())
    logs.push_back(BigFloat(c.c0.log_abs_approx() - c.c1.log_abs_approx(), kBits));
  out.log_magnitudes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigFloat acc(0.0, kBits);
    for (std::size_t i = 0; i < n; ++i) {
      BigFloat q(kBits);
      mpfr_set_q(q.raw(), inv_t[j][i].get_mpq_t(), MPFR_RNDN);
      acc = acc + q * logs[i];
    }
    out.log_magnitudes[j] = acc.to_double();
  }
  return out;
}

}  // namespace binom
