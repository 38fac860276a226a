#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "binom/bigfloat.hpp"
#include "binom/diagonal.hpp"
#include "binom/logsign.hpp"
#include "binom/monomial.hpp"
#include "binom/op_counter.hpp"
#include "binom/system.hpp"

namespace binom {

/// Alpha-theory threshold: alpha below this certifies an approximate root.
inline constexpr double kAlphaThreshold = 0.157671;

/// Newton iterations recorded per univariate factor.
inline constexpr int kNewtonSteps = 4;

/// Evidence for one factor z^s = gamma of the diagonal system.
struct FactorCheck {
  BigInt exponent;
  bool applicable = false;                // magnitudes fit the double range
  std::optional<double> alpha;            // empty when not applicable
  std::vector<double> log2_errors;        // log2 |z_k - ref| / |ref|, k = 0..4
  std::vector<double> contraction_ratios; // (e_{k+1}/|ref|) / (e_k/|ref|)^2
  bool contraction_ok = true;

  friend bool operator==(const FactorCheck&, const FactorCheck&) = default;
};

struct RootCertificate {
  double tolerance = 0.0;
  std::vector<double> residuals;  // |ln|c1 zeta^a_i| - ln|c0||
  std::vector<bool> sign_ok;      // sign(c1 zeta^a_i) == -sign(c0)
  std::vector<FactorCheck> factors;

  [[nodiscard]] double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }

  [[nodiscard]] bool passes() const {
    for (double r : residuals)
      if (!(r <= tolerance)) return false;
    for (bool ok : sign_ok)
      if (!ok) return false;
    for (const auto& f : factors)
      if (f.alpha && !(*f.alpha <= kAlphaThreshold)) return false;
    return true;
  }

  [[nodiscard]] bool contraction_ok() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const FactorCheck& f) { return f.contraction_ok; });
  }

  friend bool operator==(const RootCertificate&, const RootCertificate&) = default;
};

namespace detail {

inline double log2_relative(const BigFloat& z, const BigFloat& ref) {
  return abs(z - ref).log2_abs() - ref.log2_abs();
}

/// Newton on z^s - gamma from z0, in MPFR with room for four squarings of
/// the starting error, against ref = gamma^(1/s).
inline FactorCheck check_factor(const BigInt& s, const LogSign& gamma, const LogSign& z0) {
  FactorCheck out;
  out.exponent = s;
  out.applicable = gamma.fits_native() && z0.fits_native();
  if (!out.applicable) return out;

  const unsigned frac = std::max(gamma.precision(), z0.precision());
  const LogSign g = gamma.at_precision(frac);
  const LogSign z = z0.at_precision(frac);
  const auto s_bits = static_cast<mpfr_prec_t>(bit_length(s));

  // alpha(f, z) = |1 - gamma / z^s| (s - 1) / (2s); scale-free, exact in logs
  {
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(frac) + s_bits + 128;
    const BigInt l_scaled = g.scaled() - z.scaled() * s;
    const BigFloat l = BigFloat::from_scaled(l_scaled, frac, p + 32);
    const int q_sign = g.sign() * ((z.sign() < 0 && is_odd(s)) ? -1 : 1);
    const BigFloat dev = q_sign > 0 ? abs(expm1(l)) : BigFloat(1.0, p) + exp(l);
    const double frac_s = (s == 1) ? 0.0 : (BigFloat(BigInt(s - 1), 64) / BigFloat(BigInt(s * 2), 64)).to_double();
    out.alpha = dev.to_double() * frac_s;
  }

  // Starting error near 2^-f needs about 16 f bits after four steps.
  const auto f0 = static_cast<mpfr_prec_t>(z0.precision());
  const mpfr_prec_t work = std::min<mpfr_prec_t>(16 * (f0 + 8), 1 << 16) + s_bits + 64 + 16;
  const mpfr_prec_t ref_bits = work + 64;
  const int root_sign = is_odd(s) ? g.sign() : z.sign();
  BigFloat ref = exp(BigFloat::from_scaled(g.scaled(), frac, ref_bits) / BigFloat(s, ref_bits));
  if (root_sign < 0) ref = -ref;
  BigFloat gam = exp(g.logabs_big(std::max(work, g.exact_bits()) + 32));
  if (g.sign() < 0) gam = -gam;
  BigFloat x = exp(z.logabs_big(work + 32));
  if (z.sign() < 0) x = -x;
  x = x.with_precision(work);

  // Errors below the working floor are indistinguishable from zero.
  const double floor = -static_cast<double>(work) + static_cast<double>(s_bits) + 24.0;
  const BigFloat s_big(s, work);
  out.log2_errors.push_back(log2_relative(x.with_precision(ref_bits), ref));
  for (int k = 0; k < kNewtonSteps; ++k) {
    const BigFloat xs = pow(x, s);
    const BigFloat deriv = s_big * xs / x;
    x = x - (xs - gam) / deriv;
    out.log2_errors.push_back(log2_relative(x.with_precision(ref_bits), ref));
  }
  const double e0 = out.log2_errors.front();
  for (int k = 0; k < kNewtonSteps; ++k) {
    const double prev = out.log2_errors[k];
    const double next = out.log2_errors[k + 1];
    if (prev > floor && next > floor)
      out.contraction_ratios.push_back(std::exp2(next - 2.0 * prev));
    // |z_{k+1} - ref| <= 2^-(2^{k+1} - 1) |z_0 - ref|
    const double bound = e0 - (std::exp2(k + 1) - 1.0);
    if (next > bound && next > floor) out.contraction_ok = false;
  }
  return out;
}

}  // namespace detail

/// Extra fraction bits for the coefficients and targets the root is checked
/// against, on top of the root's own precision.
inline constexpr unsigned kReferenceGuardBits = 64;

/// Certifies zeta against F using a known diagonal form and diagonal root.
/// Residuals and Newton runs use coefficients and targets recomputed with
/// more fraction bits than the root carries, so rounding in the solve shows up.
inline RootCertificate certify(const BinomialSystem& f, std::span<const LogSign> zeta, double tol,
                               const DiagonalSystem& diag, std::span<const LogSign> mu,
                               OpCounter* counter = nullptr) {
  RootCertificate cert;
  cert.tolerance = tol;
  unsigned frac = 0;
  for (const auto& z : zeta) frac = std::max(frac, z.precision());
  frac += kReferenceGuardBits;

  const std::vector<LogSign> monomials = apply_exponent(zeta, f.A().entries(), counter);
  for (std::size_t i = 0; i < f.n(); ++i) {
    const LogSign c0 = f.coefficients()[i].c0.to_logsign(frac);
    const LogSign c1 = f.coefficients()[i].c1.to_logsign(frac);
    const LogSign lhs = mul(c1, monomials[i]);
    charge(counter, &OpCounter::logsign_ops, 2);
    charge(counter, &OpCounter::comparisons, 2);
    cert.residuals.push_back(log_distance(lhs, c0));
    cert.sign_ok.push_back(lhs.sign() == -c0.sign());
  }

  // rounding in c~^V grows with the entries of V
  const unsigned target_frac =
      frac + static_cast<unsigned>(bit_length(max_abs_entry(diag.smith.V)) + bit_length(BigInt(diag.n())));
  const std::vector<LogSign> targets = apply_exponent(f.ratios(target_frac), diag.smith.V);
  for (std::size_t i = 0; i < diag.n(); ++i) {
    cert.factors.push_back(detail::check_factor(diag.exponents[i], targets[i], mu[i]));
    if (cert.factors.back().applicable) {
      charge(counter, &OpCounter::newton_iters, kNewtonSteps);
      charge(counter, &OpCounter::comparisons);
    }
  }
  return cert;
}

/// Certifies an arbitrary candidate zeta. The diagonal evidence uses
/// mu = zeta^(U^-1) from a fresh factorization of A.
inline RootCertificate certify(const BinomialSystem& f, std::span<const LogSign> zeta, double tol,
                               OpCounter* counter = nullptr) {
  if (zeta.size() != f.n()) fail(Errc::InvalidInput, "candidate root has wrong length");
  unsigned frac = 0;
  for (const auto& z : zeta) frac = std::max(frac, z.precision());
  const DiagonalSystem diag = diagonalize(f, frac);
  const std::vector<LogSign> mu = apply_exponent(zeta, unimodular_inverse(diag.smith.U));
  return certify(f, zeta, tol, diag, mu, counter);
}

}  // namespace binom
