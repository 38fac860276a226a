#pragma once

// Independent oracles and generators shared by the test suites. Nothing here
// calls into the elimination code it is used to check.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "binom/bigint.hpp"
#include "binom/matrix.hpp"

namespace binom::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

inline IntMatrix random_nonsingular(std::mt19937_64& rng, std::size_t n, long bound) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, bound);
    if (determinant(m) != 0) return m;
  }
}

/// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps, long mult) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-mult, mult);
  for (int s = 0; s < steps && n > 1; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const long c = coef(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
    if (s % 3 == 0) u.swap_rows(a, b);
  }
  return u;
}

/// Cofactor expansion determinant; exponential but independent of Bareiss.
inline BigInt cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  BigInt det(0);
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    BigInt term = m(0, c) * cofactor_det(minor);
    if (c % 2 == 0) det += term; else det -= term;
  }
  return det;
}

namespace detail {
inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Smith invariants from determinantal divisors: s_k = D_k / D_{k-1} with
/// D_k the gcd of all k x k minors.
inline std::vector<BigInt> smith_by_minors(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<BigInt> divisors{BigInt(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur;
    detail::subsets(n, k, 0, cur, sets);
    BigInt g(0);
    for (const auto& rows : sets)
      for (const auto& cols : sets) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
        BigInt d = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    divisors.push_back(g);
  }
  std::vector<BigInt> s;
  for (std::size_t k = 1; k <= n; ++k) s.push_back(divisors[k] / divisors[k - 1]);
  return s;
}

}  // namespace binom::testing
