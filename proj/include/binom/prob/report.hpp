#pragma once

// Named experiments for batch runs; each returns CSV-ready rows.

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binom/error.hpp"
#include "binom/prob/experiments.hpp"
#include "binom/prob/moments.hpp"

namespace binom::prob {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"constant-a", "tau2",        "moment-ratio",
                                              "tail",       "loglog",      "loglog-gaussian",
                                              "logconcave", "moment-scale"};
  return names;
}

namespace detail {

inline ExperimentRow make_row(const std::string& name, const nlohmann::json& params, double estimate,
                              Interval ci, std::uint64_t samples, std::uint64_t seed) {
  ExperimentRow r;
  r.experiment = name;
  r.params = params.dump();
  r.estimate = estimate;
  r.ci_lo = ci.lo;
  r.ci_hi = ci.hi;
  r.samples = samples;
  r.seed = seed;
  return r;
}

inline Interval three_se(double v, double se) { return {v - 3 * se, v + 3 * se}; }

inline std::vector<double> default_pair() { return {M_SQRT1_2, -M_SQRT1_2}; }

}  // namespace detail

/// Runs one named experiment. `params` may override samples, seed and the
/// experiment's grid; unknown keys are ignored.
inline std::vector<ExperimentRow> run_experiment(const std::string& name, const nlohmann::json& params,
                                                 std::uint64_t seed) {
  using detail::make_row;
  using detail::three_se;
  using nlohmann::json;
  const auto get = [&](const char* key, auto fallback) { return params.value(key, fallback); };
  std::vector<ExperimentRow> rows;

  if (name == "constant-a" || name == "tau2") {
    const bool is_a = name == "constant-a";
    const Quadrature q = is_a ? constant_a_quadrature() : variance_tau2_quadrature();
    const double v = static_cast<double>(q.value);
    const double err = static_cast<double>(q.error);
    rows.push_back(make_row(name, {{"method", "quadrature"}}, v, {v - err, v + err}, 0, 0));
    const auto samples = get("samples", std::uint64_t{1000000});
    const Estimate mc = is_a ? constant_a_monte_carlo(samples, seed) : variance_tau2_monte_carlo(samples, seed);
    rows.push_back(make_row(name, {{"method", "monte-carlo"}, {"samples", samples}}, mc.value,
                            three_se(mc.value, mc.std_error), mc.samples, seed));
  } else if (name == "moment-ratio") {
    for (int p : get("p", std::vector<int>{2, 4, 6, 8, 10, 12, 14, 16})) {
      const double r = moment_ratio_w(p);
      rows.push_back(make_row(name, {{"p", p}}, r, {r, r}, 0, 0));
    }
  } else if (name == "tail") {
    const auto samples = get("samples", std::uint64_t{100000});
    const auto grid = get("t", std::vector<double>{1, 2, 3, 4, 5});
    for (std::size_t dim : get("dims", std::vector<std::size_t>{1, 4, 16})) {
      const auto theta = random_direction(dim, derive_seed(seed, 2, dim));
      const auto tail = tail_linear_combination({theta, kE2, samples, seed}, grid);
      const double inf = linf_norm(theta);
      const TailFit fit = fit_tail_envelope(tail, inf);
      for (const auto& t : tail) {
        auto row = make_row(name, {{"dim", dim}, {"t", t.t}, {"C", fit.c}, {"C_prime", fit.c_prime}},
                            t.probability, t.ci, t.samples, seed);
        row.bound_hi = fit(t.t, inf);
        rows.push_back(row);
      }
    }
  } else if (name == "loglog" || name == "loglog-gaussian") {
    const auto samples = get("samples", std::uint64_t{100000});
    const auto weights = get("weights", detail::default_pair());
    for (double d : get("d", std::vector<double>{kE2, 100.0, 1e4})) {
      const LogLogResult r = name == "loglog" ? loglog_expectation({weights, d, samples, seed})
                                              : loglog_single_gaussian(d, samples, seed);
      json p = {{"d", d}};
      if (name == "loglog") p["weights"] = weights;
      auto row = make_row(name, p, r.estimate, r.ci, r.samples, seed);
      row.bound_lo = r.lower_bound;
      row.bound_hi = r.upper_bound;
      rows.push_back(row);
    }
  } else if (name == "logconcave") {
    const auto samples = get("samples", std::uint64_t{100000});
    const auto weights = get("weights", detail::default_pair());
    const double gamma = std::sqrt(variance_tau2()) * l2_norm(weights);
    std::vector<double> grid;
    for (double m : get("s_multiples", std::vector<double>{1, 2, 4})) grid.push_back(m * gamma);
    for (const auto& t : logconcave_tail_check({weights, kE2, samples, seed}, grid)) {
      auto row = make_row(name, {{"s", t.t}, {"gamma", gamma}, {"weights", weights}}, t.probability, t.ci,
                          t.samples, seed);
      row.bound_hi = t.bound;
      rows.push_back(row);
    }
  } else if (name == "moment-scale") {
    const auto samples = get("samples", std::uint64_t{200000});
    const auto ps = get("p", std::vector<int>{2, 4, 8, 16});
    for (std::size_t dim : get("dims", std::vector<std::size_t>{1, 4, 16})) {
      const auto theta = random_direction(dim, derive_seed(seed, 2, dim));
      for (const auto& m : moment_scale_check(theta, ps, samples, seed))
        rows.push_back(make_row(name, {{"dim", dim}, {"p", m.p}, {"norm", m.norm}, {"scale", m.scale}},
                                m.ratio, {m.ratio, m.ratio}, samples, seed));
    }
  } else {
    fail(Errc::InvalidInput, "unknown experiment: " + name);
  }
  return rows;
}

}  // namespace binom::prob
