#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "binom/certify.hpp"
#include "binom/diagonal.hpp"
#include "binom/error.hpp"
#include "binom/logsign.hpp"
#include "binom/monomial.hpp"
#include "binom/op_counter.hpp"
#include "binom/precision.hpp"
#include "binom/smith.hpp"
#include "binom/system.hpp"

namespace binom {

inline std::uint64_t univariate_cost(const BigInt& s, const LogSign& gamma) {
  const BigInt range = 1 + BigInt(abs(gamma.scaled())) / (BigInt(1) << gamma.precision());
  return bit_length(s) + bit_length(range);
}

/// Real root of z^s = gamma: the positive one for even s.
///
/// In log coordinates the Newton fixed point is y = ln|gamma| / s, so the
/// solve is one rounded division on the budget's fixed-point grid. The
/// counter is charged what a real-number root finder spends on the same
/// factor: log2 s + log2 ln(e max(|gamma|, 1/|gamma|)).
inline LogSign solve_univariate(const BigInt& s, const LogSign& gamma, const PrecisionBudget& budget,
                                OpCounter* counter = nullptr) {
  charge(counter, &OpCounter::logsign_ops, univariate_cost(s, gamma));
  return root_positive(gamma.at_precision(budget.fraction_bits), s);
}

/// mu with mu_i^{s_i} = gamma_i. `orthant` lists the sign of each mu_i; odd
/// coordinates must match sign(gamma_i), even ones pick the branch.
inline std::vector<LogSign> solve_diagonal(const DiagonalSystem& d,
                                           const std::optional<std::vector<int>>& orthant,
                                           const PrecisionBudget& budget,
                                           OpCounter* counter = nullptr) {
  if (!has_real_root(d, counter)) fail(Errc::NoRealRoot, "diagonal system has no real root");
  if (orthant && orthant->size() != d.n())
    fail(Errc::InvalidOrthant, "orthant choice has wrong length");
  std::vector<LogSign> mu;
  mu.reserve(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) {
    LogSign z = solve_univariate(d.exponents[i], d.targets[i], budget, counter);
    if (orthant) {
      const int want = (*orthant)[i];
      if (want != 1 && want != -1) fail(Errc::InvalidOrthant, "orthant entries must be +1 or -1");
      charge(counter, &OpCounter::comparisons);
      if (is_odd(d.exponents[i])) {
        if (want != z.sign()) fail(Errc::InvalidOrthant, "odd exponent fixes the sign of this coordinate");
      } else if (want < 0) {
        z = -z;
      }
    }
    mu.push_back(std::move(z));
  }
  return mu;
}

/// zeta = mu^U.
inline std::vector<LogSign> back_substitute(std::span<const LogSign> mu, const IntMatrix& u,
                                            OpCounter* counter = nullptr) {
  return apply_exponent(mu, u, counter);
}

/// Budget from the system and its factorization (max exponent covers both
/// S and the entries of U).
inline PrecisionBudget budget_for(const BinomialSystem& f, const SmithFactorization& smith,
                                  unsigned fraction_floor = default_fraction_floor()) {
  BigInt max_exp = std::max(smith.max_invariant(), max_abs_entry(smith.U));
  return precision_budget(f.n(), f.A().max_abs_entry(), f.sigma(), max_exp, fraction_floor);
}

/// All sign vectors accepted by solve_diagonal for `d`, in lexicographic
/// order over the even coordinates (+ before -).
inline std::vector<std::vector<int>> valid_orthants(const DiagonalSystem& d) {
  std::vector<std::vector<int>> out;
  if (!has_real_root(d)) return out;
  std::vector<int> base;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < d.n(); ++i) {
    base.push_back(is_odd(d.exponents[i]) ? d.targets[i].sign() : 1);
    if (!is_odd(d.exponents[i])) free.push_back(i);
  }
  if (free.size() > 20) fail(Errc::DimensionTooLarge, "too many even coordinates to enumerate");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<int> o = base;
    for (std::size_t b = 0; b < free.size(); ++b)
      if (mask >> b & 1u) o[free[b]] = -1;
    out.push_back(std::move(o));
  }
  return out;
}

enum class SolveStatus { NoRealRoot, RootFound };

struct SolveOptions {
  std::optional<std::vector<int>> orthant;
  double tolerance = 1e-9;
  std::optional<unsigned> fraction_bits;  // replaces the budget's fraction bits
  unsigned max_escalations = 3;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NoRealRoot;
  std::vector<LogSign> root;
  std::optional<RootCertificate> certificate;
  SmithFactorization smith;
  std::vector<LogSign> targets;  // gamma at the final precision
  PrecisionBudget budget;        // as used by the final attempt
  unsigned escalations = 0;

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// Full pipeline: factor, decide, solve the diagonal system, map back,
/// certify. On a failed certificate the fraction bits double (at most
/// `max_escalations` times) before CertificationFailed is raised.
inline SolveResult solve(const BinomialSystem& f, const SolveOptions& options = {},
                         OpCounter* counter = nullptr) {
  SolveResult r;
  r.smith = smith_normal_form(f.A().entries(), counter);
  PrecisionBudget budget = budget_for(f, r.smith);
  if (options.fraction_bits) budget.fraction_bits = *options.fraction_bits;

  for (unsigned attempt = 0;; ++attempt) {
    r.budget = budget;
    r.escalations = attempt;
    DiagonalSystem d = diagonalize(f, r.smith, budget.fraction_bits, counter);
    r.targets = d.targets;
    if (!has_real_root(d, counter)) {
      r.status = SolveStatus::NoRealRoot;
      return r;
    }
    const std::vector<LogSign> mu = solve_diagonal(d, options.orthant, budget, counter);
    r.root = back_substitute(mu, r.smith.U, counter);
    // the tolerance stays fixed; only the rounding error shrinks
    r.certificate = certify(f, r.root, options.tolerance, d, mu, counter);
    if (r.certificate->passes()) {
      r.status = SolveStatus::RootFound;
      return r;
    }
    if (attempt == options.max_escalations)
      fail(Errc::CertificationFailed, "certificate failed after precision escalation");
    budget.fraction_bits *= 2;
  }
}

}  // namespace binom
