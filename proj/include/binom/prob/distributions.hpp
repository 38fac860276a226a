#pragma once

// Densities and samplers for Z (standard Gaussian), Y = ln|Z|, W = Y - a,
// Theta (rate-1 exponential) and L (symmetric exponential), plus the
// quadrature used to integrate against them.

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "binom/rng.hpp"

namespace binom::prob {

using Real = long double;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

inline Real density_z(Real t) { return std::exp(-t * t / 2) / std::sqrt(2 * kPi); }

/// Density of ln|Z|.
inline Real density_y(Real t) {
  return std::sqrt(2 / kPi) * std::exp(t - std::exp(2 * t) / 2);
}

inline Real density_theta(Real t) { return t < 0 ? 0 : std::exp(-t); }

inline Real log_density_y(Real t) { return std::log(std::sqrt(2 / kPi)) + t - std::exp(2 * t) / 2; }

// |t|^p rho(t) from log rho, so far tails underflow to 0 rather than inf * 0
inline Real weighted_moment(Real t, int p, Real log_density) {
  if (t == 0) return p == 0 ? std::exp(log_density) : 0;
  return std::exp(p * std::log(std::fabs(t)) + log_density);
}

inline Real density_l(Real t) { return std::exp(-std::fabs(t)) / 2; }

/// Result of a numerical integral with its error estimate.
struct Quadrature {
  Real value = 0;
  Real error = 0;
};

/// Double-exponential quadrature over [lo, inf).
inline Quadrature integrate_half_line(const std::function<Real(Real)>& f, Real lo = 0,
                                      Real rel_tol = 1e-14L) {
  boost::math::quadrature::exp_sinh<Real> q;
  Quadrature out;
  out.value = q.integrate([&](Real u) { return f(lo + u); }, Real(0),
                          std::numeric_limits<Real>::infinity(), rel_tol, &out.error);
  return out;
}

/// Integral over the real line, split at `split` into two half lines.
inline Quadrature integrate_line(const std::function<Real(Real)>& f, Real split = 0,
                                 Real rel_tol = 1e-14L) {
  const Quadrature right = integrate_half_line(f, split, rel_tol);
  const Quadrature left = integrate_half_line([&](Real u) { return f(2 * split - u); }, split, rel_tol);
  return {right.value + left.value, right.error + left.error};
}

inline double sample_z(Rng& rng) { return rng.normal(); }

inline double sample_y(Rng& rng) {
  for (;;) {
    const double z = rng.normal();
    if (z != 0.0) return std::log(std::fabs(z));
  }
}

inline double sample_theta(Rng& rng) { return rng.exponential(); }

inline double sample_l(Rng& rng) { return rng.laplace(); }

}  // namespace binom::prob
