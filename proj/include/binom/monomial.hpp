#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "binom/error.hpp"
#include "binom/logsign.hpp"
#include "binom/matrix.hpp"
#include "binom/op_counter.hpp"

namespace binom {

/// y = x^M with the column convention y_i = prod_j x_j^(M_ji).
///
/// Runs at the largest precision among the inputs; exact in fixed point.
inline std::vector<LogSign> apply_exponent(std::span<const LogSign> x, const IntMatrix& m,
                                           OpCounter* counter = nullptr) {
  if (x.size() != m.rows()) fail(Errc::InvalidInput, "apply_exponent: length(x) != rows(M)");
  unsigned frac = 0;
  for (const auto& v : x) frac = std::max(frac, v.precision());
  std::vector<LogSign> promoted;
  promoted.reserve(x.size());
  for (const auto& v : x) promoted.push_back(v.at_precision(frac));

  std::vector<LogSign> y;
  y.reserve(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    BigInt acc(0);
    int sign = 1;
    std::uint64_t terms = 0;
    for (std::size_t j = 0; j < m.rows(); ++j) {
      const BigInt& e = m(j, i);
      if (sgn(e) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), e.get_mpz_t(), promoted[j].scaled().get_mpz_t());
      if (promoted[j].sign() < 0 && is_odd(e)) sign = -sign;
      charge(counter, &OpCounter::logsign_ops);
      charge(counter, &OpCounter::power_chain_ops, power_chain_cost(e));
      ++terms;
    }
    if (terms > 1) charge(counter, &OpCounter::logsign_ops, terms - 1);
    y.emplace_back(sign, std::move(acc), frac);
  }
  return y;
}

}  // namespace binom
