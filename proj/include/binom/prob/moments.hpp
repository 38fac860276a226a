#pragma once

#include <cmath>
#include <cstdint>

#include "binom/error.hpp"
#include "binom/prob/distributions.hpp"
#include "binom/rng.hpp"

namespace binom::prob {

/// Running mean and variance (Welford); batches merge associatively.
struct MeanAccumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const MeanAccumulator& o) {
    if (o.count == 0) return;
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }

  [[nodiscard]] double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  [[nodiscard]] double std_error() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Samples per independently seeded batch.
inline constexpr std::uint64_t kBatchSize = 1u << 16;

/// Runs `draw(rng)` `samples` times in seeded batches and merges the
/// statistics in batch order.
template <typename Draw>
MeanAccumulator monte_carlo(std::uint64_t samples, std::uint64_t seed, Draw&& draw) {
  MeanAccumulator total;
  for (std::uint64_t b = 0; b * kBatchSize < samples; ++b) {
    Rng rng(derive_seed(seed, 0, b));
    MeanAccumulator part;
    const std::uint64_t end = std::min(samples, (b + 1) * kBatchSize);
    for (std::uint64_t i = b * kBatchSize; i < end; ++i) part.add(draw(rng));
    total.merge(part);
  }
  return total;
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

inline Estimate to_estimate(const MeanAccumulator& acc) {
  return {acc.mean, acc.std_error(), acc.count};
}

/// a = E ln|Z| by quadrature of t rho_Y(t).
inline Quadrature constant_a_quadrature() {
  return integrate_line([](Real t) { return t * density_y(t); });
}

inline double constant_a() { return static_cast<double>(constant_a_quadrature().value); }

/// tau^2 = Var ln|Z| by quadrature.
inline Quadrature variance_tau2_quadrature() {
  const Real a = constant_a_quadrature().value;
  return integrate_line([a](Real t) { return (t - a) * (t - a) * density_y(t); });
}

inline double variance_tau2() { return static_cast<double>(variance_tau2_quadrature().value); }

inline Estimate constant_a_monte_carlo(std::uint64_t samples, std::uint64_t seed) {
  return to_estimate(monte_carlo(samples, seed, [](Rng& r) { return sample_y(r); }));
}

/// Mean of (Y - a)^2 around the quadrature value of a.
inline Estimate variance_tau2_monte_carlo(std::uint64_t samples, std::uint64_t seed) {
  const double a = constant_a();
  const MeanAccumulator sq = monte_carlo(samples, seed, [a](Rng& r) {
    const double w = sample_y(r) - a;
    return w * w;
  });
  return to_estimate(sq);
}

/// Density normalization check: integral of rho_Y.
inline double density_y_mass() {
  return static_cast<double>(integrate_line([](Real t) { return density_y(t); }).value);
}

/// ||W||_p = (E|Y - a|^p)^(1/p) by quadrature.
inline double norm_w(int p, Real rel_tol = 1e-14L) {
  const Real a = constant_a_quadrature().value;
  const Real m =
      integrate_line([a, p](Real t) { return weighted_moment(t - a, p, log_density_y(t)); }, a, rel_tol)
          .value;
  return static_cast<double>(std::pow(m, Real(1) / p));
}

/// ||Theta||_p by quadrature of the exponential density.
inline double norm_theta(int p, Real rel_tol = 1e-14L) {
  const Real m =
      integrate_half_line([p](Real t) { return weighted_moment(t, p, -t); }, 0, rel_tol).value;
  return static_cast<double>(std::pow(m, Real(1) / p));
}

/// ||L||_p by quadrature; equals ||Theta||_p by symmetry.
inline double norm_l(int p) {
  const Real m = integrate_line([p](Real t) { return weighted_moment(t, p, -std::fabs(t) - std::log(Real(2))); }).value;
  return static_cast<double>(std::pow(m, Real(1) / p));
}

/// ||W||_p / ||Theta||_p for even p in [2, 16].
inline double moment_ratio_w(int p, double quad_tol = 1e-12) {
  if (p < 2 || p > 16 || p % 2 != 0) fail(Errc::InvalidInput, "p must be even and in [2, 16]");
  return norm_w(p, quad_tol) / norm_theta(p, quad_tol);
}

}  // namespace binom::prob
