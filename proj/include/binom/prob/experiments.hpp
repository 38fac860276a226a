#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "binom/error.hpp"
#include "binom/prob/distributions.hpp"
#include "binom/prob/moments.hpp"
#include "binom/rng.hpp"

namespace binom::prob {

inline constexpr double kE2 = 7.38905609893065022723;  // e^2

struct TailExperimentConfig {
  std::vector<double> weights;
  double d = kE2;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

inline double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double linf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Uniform direction on the unit sphere in dimension n.
inline std::vector<double> random_direction(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (;;) {
    for (double& x : v) x = rng.normal();
    const double norm = l2_norm(v);
    if (norm > 0.0) {
      for (double& x : v) x /= norm;
      return v;
    }
  }
}

/// Wilson score interval for k successes out of n at z standard deviations.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 3.0) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct TailRow {
  double t = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double probability = 0.0;
  Interval ci;
  double bound = 0.0;  // reference curve at t, where one applies
};

namespace detail {

// Empirical P(stat >= t) for each t from one pass over the samples.
template <typename Draw>
std::vector<TailRow> tail_table(const std::vector<double>& grid, std::uint64_t samples,
                                std::uint64_t seed, Draw&& draw) {
  std::vector<std::uint64_t> hits(grid.size(), 0);
  for (std::uint64_t b = 0; b * kBatchSize < samples; ++b) {
    Rng rng(derive_seed(seed, 1, b));
    const std::uint64_t end = std::min(samples, (b + 1) * kBatchSize);
    for (std::uint64_t i = b * kBatchSize; i < end; ++i) {
      const double x = draw(rng);
      for (std::size_t k = 0; k < grid.size(); ++k)
        if (x >= grid[k]) ++hits[k];
    }
  }
  std::vector<TailRow> rows;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    TailRow r;
    r.t = grid[k];
    r.hits = hits[k];
    r.samples = samples;
    r.probability = static_cast<double>(hits[k]) / static_cast<double>(samples);
    r.ci = wilson_interval(hits[k], samples);
    rows.push_back(r);
  }
  return rows;
}

inline void require_zero_sum(const std::vector<double>& a) {
  double sum = 0.0, scale = 0.0;
  for (double x : a) {
    sum += x;
    scale += std::fabs(x);
  }
  if (std::fabs(sum) > 1e-12 * std::max(scale, 1.0))
    fail(Errc::WeightSumNonzero, "weights must sum to zero");
}

inline void require_scale(double d) {
  if (!(d >= kE2 * (1 - 1e-15))) fail(Errc::ScaleTooSmall, "d must be at least e^2");
}

// sum_i a_i Y_i for independent Y_i = ln|Z_i|
inline double weighted_y(Rng& rng, const std::vector<double>& a) {
  double s = 0.0;
  for (double w : a) s += w * sample_y(rng);
  return s;
}

}  // namespace detail

/// P(|<theta, ln|Z|> - a sum(theta)| >= t) for t on the grid.
inline std::vector<TailRow> tail_linear_combination(const TailExperimentConfig& cfg,
                                                    const std::vector<double>& t_grid) {
  if (std::fabs(l2_norm(cfg.weights) - 1.0) > 1e-9) fail(Errc::InvalidInput, "theta must be a unit vector");
  if (cfg.samples < 10000) fail(Errc::InvalidInput, "tail experiments need at least 1e4 samples");
  const double a = constant_a();
  const double shift = a * std::accumulate(cfg.weights.begin(), cfg.weights.end(), 0.0);
  return detail::tail_table(t_grid, cfg.samples, cfg.seed, [&](Rng& rng) {
    return std::fabs(detail::weighted_y(rng, cfg.weights) - shift);
  });
}

/// Fitted envelope C' exp(-C min(t / ||theta||_inf, t^2)).
struct TailFit {
  double c = 0.0;        // decay rate from least squares on ln p
  double c_prime = 0.0;  // smallest prefactor that bounds every row
  std::size_t points = 0;

  [[nodiscard]] double operator()(double t, double theta_inf) const {
    return c_prime * std::exp(-c * std::min(t / theta_inf, t * t));
  }
};

/// Rows with zero hits carry no log-probability and are left out of the fit.
inline TailFit fit_tail_envelope(const std::vector<TailRow>& rows, double theta_inf) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.hits == 0 || r.t <= 0.0) continue;
    x.push_back(std::min(r.t / theta_inf, r.t * r.t));
    y.push_back(std::log(r.probability));
  }
  TailFit fit;
  fit.points = x.size();
  if (x.size() < 2) return fit;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  fit.c = sxx > 0.0 ? -sxy / sxx : 0.0;
  for (const auto& r : rows) {
    if (r.t <= 0.0) continue;
    const double m = std::min(r.t / theta_inf, r.t * r.t);
    fit.c_prime = std::max(fit.c_prime, r.probability * std::exp(fit.c * m));
  }
  return fit;
}

struct LogLogResult {
  double estimate = 0.0;
  double std_error = 0.0;
  Interval ci;  // estimate +- 3 standard errors
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::uint64_t samples = 0;
};

/// E ln ln(d X_a) with X_a = max(V_a, 1/V_a) = exp|W_a|, against
/// [ln ln d, ln ln(d/e) + 2 + ln 2 + ln(1 + tau ||a||)].
inline LogLogResult loglog_expectation(const TailExperimentConfig& cfg) {
  detail::require_zero_sum(cfg.weights);
  detail::require_scale(cfg.d);
  const double log_d = std::log(cfg.d);
  const auto acc = monte_carlo(cfg.samples, cfg.seed, [&](Rng& rng) {
    return std::log(log_d + std::fabs(detail::weighted_y(rng, cfg.weights)));
  });
  const double tau = std::sqrt(variance_tau2());
  LogLogResult r;
  r.estimate = acc.mean;
  r.std_error = acc.std_error();
  r.ci = {r.estimate - 3 * r.std_error, r.estimate + 3 * r.std_error};
  r.lower_bound = std::log(log_d);
  r.upper_bound = std::log(log_d - 1.0) + 2.0 + std::log(2.0) + std::log1p(tau * l2_norm(cfg.weights));
  r.samples = acc.count;
  return r;
}

/// E ln ln(d max(|Z|, 1/|Z|)) against [ln ln d, ln 2 + ln ln(d/e) + sqrt(8/pi)].
inline LogLogResult loglog_single_gaussian(double d, std::uint64_t samples, std::uint64_t seed) {
  detail::require_scale(d);
  const double log_d = std::log(d);
  const auto acc = monte_carlo(samples, seed, [&](Rng& rng) {
    return std::log(log_d + std::fabs(sample_y(rng)));
  });
  LogLogResult r;
  r.estimate = acc.mean;
  r.std_error = acc.std_error();
  r.ci = {r.estimate - 3 * r.std_error, r.estimate + 3 * r.std_error};
  r.lower_bound = std::log(log_d);
  r.upper_bound = std::log(2.0) + std::log(log_d - 1.0) + std::sqrt(8.0 / static_cast<double>(kPi));
  r.samples = acc.count;
  return r;
}

/// Empirical P(|W_a| >= s), s >= gamma = tau ||a||, against exp(-s / (2 gamma)).
inline std::vector<TailRow> logconcave_tail_check(const TailExperimentConfig& cfg,
                                                  const std::vector<double>& s_grid) {
  detail::require_zero_sum(cfg.weights);
  const double gamma = std::sqrt(variance_tau2()) * l2_norm(cfg.weights);
  for (double s : s_grid)
    if (!(s >= gamma * (1 - 1e-12))) fail(Errc::InvalidInput, "the tail bound needs s >= gamma");
  auto rows = detail::tail_table(s_grid, cfg.samples, cfg.seed, [&](Rng& rng) {
    return std::fabs(detail::weighted_y(rng, cfg.weights));
  });
  for (auto& r : rows) r.bound = std::exp(-r.t / (2 * gamma));
  return rows;
}

struct RearrangedNorms {
  double linf_head = 0.0;
  double l2_tail = 0.0;
};

/// Head = the min(p, n) largest |theta_i|, tail = the rest.
inline RearrangedNorms rearranged_norms(const std::vector<double>& theta, int p) {
  if (p < 1) fail(Errc::InvalidInput, "p must be at least 1");
  std::vector<double> mags;
  for (double x : theta) mags.push_back(std::fabs(x));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  RearrangedNorms r;
  const std::size_t head = std::min<std::size_t>(static_cast<std::size_t>(p), mags.size());
  if (head > 0) r.linf_head = mags.front();
  double tail = 0.0;
  for (std::size_t i = head; i < mags.size(); ++i) tail += mags[i] * mags[i];
  r.l2_tail = std::sqrt(tail);
  return r;
}

struct MomentRatioRow {
  int p = 0;
  double norm = 0.0;   // Monte Carlo ||<W, theta>||_p
  double scale = 0.0;  // p ||theta^p||_inf + sqrt(p) ||theta_p||_2
  double ratio = 0.0;
};

/// ||<W, theta>||_p against the two-sided rearrangement scale.
inline std::vector<MomentRatioRow> moment_scale_check(const std::vector<double>& theta,
                                                      const std::vector<int>& ps,
                                                      std::uint64_t samples, std::uint64_t seed) {
  const double a = constant_a();
  std::vector<MomentRatioRow> rows;
  for (int p : ps) {
    const auto acc = monte_carlo(samples, seed, [&](Rng& rng) {
      double s = 0.0;
      for (double w : theta) s += w * (sample_y(rng) - a);
      return std::pow(std::fabs(s), p);
    });
    const auto rn = rearranged_norms(theta, p);
    MomentRatioRow r;
    r.p = p;
    r.norm = std::pow(acc.mean, 1.0 / p);
    r.scale = p * rn.linf_head + std::sqrt(static_cast<double>(p)) * rn.l2_tail;
    r.ratio = r.norm / r.scale;
    rows.push_back(r);
  }
  return rows;
}

/// One CSV line of an experiment report.
struct ExperimentRow {
  std::string experiment;
  std::string params;  // compact JSON
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::optional<double> bound_lo;  // empty when no bound applies
  std::optional<double> bound_hi;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "experiment,param-json,estimate,ci_lo,ci_hi,bound_lo,bound_hi,samples,seed\n";
  os.precision(12);
  auto opt = [&os](const std::optional<double>& v) {
    if (v) os << *v;
  };
  for (const auto& r : rows) {
    os << csv_field(r.experiment) << ',' << csv_field(r.params) << ',' << r.estimate << ',' << r.ci_lo
       << ',' << r.ci_hi << ',';
    opt(r.bound_lo);
    os << ',';
    opt(r.bound_hi);
    os << ',' << r.samples << ',' << r.seed << '\n';
  }
}

}  // namespace binom::prob
