#pragma once

#include <cstddef>
#include <vector>

#include "binom/logsign.hpp"
#include "binom/monomial.hpp"
#include "binom/op_counter.hpp"
#include "binom/smith.hpp"
#include "binom/system.hpp"

namespace binom {

/// z_i^{s_i} = gamma_i for i = 1..n, with the factorization it came from.
///
/// If mu solves this system then mu^U solves x^A = c~.
struct DiagonalSystem {
  std::vector<BigInt> exponents;
  std::vector<LogSign> targets;
  SmithFactorization smith;

  [[nodiscard]] std::size_t n() const noexcept { return exponents.size(); }
};

/// gamma = c~^V using a precomputed factorization of A.
inline DiagonalSystem diagonalize(const BinomialSystem& f, SmithFactorization smith,
                                  unsigned frac_bits, OpCounter* counter = nullptr) {
  std::vector<LogSign> ratios = f.ratios(frac_bits);
  charge(counter, &OpCounter::logsign_ops, ratios.size());
  DiagonalSystem d;
  d.targets = apply_exponent(ratios, smith.V, counter);
  d.exponents = smith.S;
  d.smith = std::move(smith);
  return d;
}

inline DiagonalSystem diagonalize(const BinomialSystem& f, unsigned frac_bits,
                                  OpCounter* counter = nullptr) {
  return diagonalize(f, smith_normal_form(f.A().entries(), counter), frac_bits, counter);
}

/// Real roots exist iff every even exponent has a positive target.
inline bool has_real_root(const DiagonalSystem& d, OpCounter* counter = nullptr) {
  for (std::size_t i = 0; i < d.n(); ++i) {
    charge(counter, &OpCounter::comparisons);
    if (!is_odd(d.exponents[i]) && d.targets[i].sign() < 0) return false;
  }
  return true;
}

/// prod_i m_i with m_i = 1 (odd s_i), 2 (even s_i, gamma_i > 0), 0 otherwise.
inline BigInt count_real_roots(const DiagonalSystem& d, OpCounter* counter = nullptr) {
  BigInt count(1);
  for (std::size_t i = 0; i < d.n(); ++i) {
    charge(counter, &OpCounter::comparisons);
    if (is_odd(d.exponents[i])) continue;
    if (d.targets[i].sign() < 0) return BigInt(0);
    count *= 2;
  }
  return count;
}

// Signs of gamma do not depend on precision, so the decision runs on a
// coarse grid.
inline constexpr unsigned kDecisionBits = 8;

inline bool has_real_root(const BinomialSystem& f) {
  return has_real_root(diagonalize(f, kDecisionBits));
}

inline BigInt count_real_roots(const BinomialSystem& f) {
  return count_real_roots(diagonalize(f, kDecisionBits));
}

}  // namespace binom
