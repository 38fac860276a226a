#pragma once

#include <cstdint>

#include "binom/bigint.hpp"

namespace binom {

/// Unit-cost operation tallies for one solve (BSS-style cost model).
///
/// `logsign_ops` counts LogSign ring and root operations. An integer power
/// is one scaling of a log, so it counts once; what square-and-multiply
/// would have spent on the same powers is tallied in `power_chain_ops`,
/// outside the arithmetic total. Big-integer work inside the Smith
/// factorization is kept apart in `snf_bitop_proxy`.
struct OpCounter {
  std::uint64_t logsign_ops = 0;
  std::uint64_t newton_iters = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t snf_bitop_proxy = 0;
  std::uint64_t power_chain_ops = 0;

  [[nodiscard]] std::uint64_t arithmetic_ops() const noexcept {
    return logsign_ops + comparisons;
  }

  void reset() noexcept { *this = OpCounter{}; }

  OpCounter& operator+=(const OpCounter& o) noexcept {
    logsign_ops += o.logsign_ops;
    newton_iters += o.newton_iters;
    comparisons += o.comparisons;
    snf_bitop_proxy += o.snf_bitop_proxy;
    power_chain_ops += o.power_chain_ops;
    return *this;
  }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// Multiplications in the square-and-multiply chain for x^k (at least 1,
/// plus one inversion when k < 0).
inline std::uint64_t power_chain_cost(const BigInt& k) {
  if (sgn(k) == 0) return 1;
  BigInt mag = abs(k);
  const std::uint64_t bits = bit_length(mag);
  const std::uint64_t ones = mpz_popcount(mag.get_mpz_t());
  std::uint64_t cost = bits - 1 + ones - 1;
  if (cost == 0) cost = 1;
  if (sgn(k) < 0) cost += 1;
  return cost;
}

inline void charge(OpCounter* c, std::uint64_t OpCounter::*field, std::uint64_t n = 1) {
  if (c != nullptr) c->*field += n;
}

}  // namespace binom
