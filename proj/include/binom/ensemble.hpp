#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "binom/diagonal.hpp"
#include "binom/error.hpp"
#include "binom/rng.hpp"
#include "binom/smith.hpp"
#include "binom/system.hpp"

namespace binom {

/// Coefficients c_{i,j} ~ N(0, v_{i,j}); exponent entries uniform in [-d, d].
struct GaussianEnsemble {
  std::size_t n = 1;
  std::int64_t d = 1;
  std::vector<std::pair<double, double>> variances;  // (v_{i,0}, v_{i,1})
  std::uint64_t seed = 0;

  static GaussianEnsemble unit(std::size_t n, std::int64_t d, std::uint64_t seed) {
    return {n, d, std::vector<std::pair<double, double>>(n, {1.0, 1.0}), seed};
  }

  void validate() const {
    if (n == 0) fail(Errc::InvalidInput, "ensemble dimension must be positive");
    if (d < 1) fail(Errc::InvalidInput, "ensemble entry bound must be at least 1");
    if (variances.size() != n) fail(Errc::InvalidInput, "need one variance pair per equation");
    for (const auto& [v0, v1] : variances)
      if (!(v0 > 0.0) || !(v1 > 0.0) || !std::isfinite(v0) || !std::isfinite(v1))
        fail(Errc::InvalidInput, "variances must be positive and finite");
  }
};

namespace detail {
inline double nonzero_normal(Rng& rng, double sd) {
  for (;;) {
    const double x = rng.normal() * sd;
    if (x != 0.0) return x;
  }
}
}  // namespace detail

/// Draws A (resampled until nonsingular), then c_{i,0}, c_{i,1} per row.
inline BinomialSystem sample_system(const GaussianEnsemble& e) {
  e.validate();
  Rng rng(e.seed);
  IntMatrix a(e.n, e.n);
  for (;;) {
    for (std::size_t i = 0; i < e.n; ++i)
      for (std::size_t j = 0; j < e.n; ++j) a(i, j) = BigInt(static_cast<long>(rng.uniform_int(-e.d, e.d)));
    if (sgn(determinant(a)) != 0) break;
  }
  std::vector<CoefficientPair> c;
  c.reserve(e.n);
  for (const auto& [v0, v1] : e.variances) {
    const double c0 = detail::nonzero_normal(rng, std::sqrt(v0));
    const double c1 = detail::nonzero_normal(rng, std::sqrt(v1));
    c.push_back({Coefficient(c0), Coefficient(c1)});
  }
  return {ExponentMatrix(std::move(a)), std::move(c)};
}

/// Fraction bits for rescaling vectors and rescaled coefficients.
inline constexpr unsigned kRescaleBits = 192;

/// Positive r with r^A = ratio, via ln r = U^T S^-1 V^T ln ratio.
inline std::vector<LogSign> rescaling_vector(const ExponentMatrix& a, std::span<const LogSign> ratio) {
  if (ratio.size() != a.n()) fail(Errc::InvalidInput, "ratio vector has wrong length");
  const SmithFactorization f = smith_normal_form(a.entries());
  std::vector<LogSign> w = apply_exponent(ratio, f.V);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].sign() < 0) fail(Errc::InvalidInput, "ratio entries must be positive");
    w[i] = root_positive(w[i], f.S[i]);
  }
  return apply_exponent(w, f.U);
}

struct RescaledSystem {
  BinomialSystem system;
  std::vector<LogSign> r;
};

/// x = r y turns F into F~ whose coefficients have unit variance:
/// c~_{i,0} = c_{i,0}/sqrt(v_{i,0}) and c~_{i,1} = c_{i,1} r^{a_i}/sqrt(v_{i,0}),
/// where r^A = (sqrt(v_{i,0}/v_{i,1}))_i. Roots map back by x = r y.
inline RescaledSystem rescale_to_unit_variance(const BinomialSystem& f, const GaussianEnsemble& e) {
  e.validate();
  if (e.n != f.n()) fail(Errc::InvalidInput, "ensemble and system dimensions differ");
  constexpr unsigned fb = kRescaleBits;
  std::vector<LogSign> ratio;
  std::vector<LogSign> inv_sd0;
  for (const auto& [v0, v1] : e.variances) {
    const LogSign l0 = LogSign::from_real(v0, fb + 1);
    const LogSign l1 = LogSign::from_real(v1, fb + 1);
    ratio.push_back(root_positive(div(l0, l1), BigInt(2)).at_precision(fb));
    inv_sd0.push_back(root_positive(pow_int(l0, BigInt(-1)), BigInt(2)).at_precision(fb));
  }
  std::vector<LogSign> r = rescaling_vector(f.A(), ratio);
  const std::vector<LogSign> r_a = apply_exponent(r, f.A().entries());

  std::vector<CoefficientPair> c;
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto& orig = f.coefficients()[i];
    const LogSign c0 = mul(orig.c0.to_logsign(fb), inv_sd0[i]);
    const LogSign c1 = mul(mul(orig.c1.to_logsign(fb), r_a[i]), inv_sd0[i]);
    c.push_back({Coefficient(c0), Coefficient(c1)});
  }
  return {BinomialSystem(f.A(), std::move(c)), std::move(r)};
}

}  // namespace binom
