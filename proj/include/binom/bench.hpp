#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "binom/ensemble.hpp"
#include "binom/error.hpp"
#include "binom/op_counter.hpp"
#include "binom/solver.hpp"

namespace binom {

struct CountedSolve {
  SolveResult result;
  OpCounter counter;
};

/// solve() with a fresh counter attached.
inline CountedSolve count_solve(const BinomialSystem& f, const SolveOptions& options = {}) {
  CountedSolve out;
  out.result = solve(f, options, &out.counter);
  return out;
}

struct ScalingRow {
  std::size_t n = 0;
  std::int64_t d = 0;
  std::size_t trials = 0;  // trials that completed
  double mean_arith_ops = 0.0;
  double stddev = 0.0;
  double mean_snf_proxy = 0.0;
  double mean_newton_iters = 0.0;
  double wall_time = 0.0;  // seconds for the whole cell
  std::size_t failed = 0;

  // wall time is the only nondeterministic field
  friend bool operator==(const ScalingRow& a, const ScalingRow& b) {
    return a.n == b.n && a.d == b.d && a.trials == b.trials && a.mean_arith_ops == b.mean_arith_ops &&
           a.stddev == b.stddev && a.mean_snf_proxy == b.mean_snf_proxy &&
           a.mean_newton_iters == b.mean_newton_iters && a.failed == b.failed;
  }
};

/// Least-squares fit of mean ops to c1 n^2 ln(n d) + c2.
struct ScalingFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double r_squared = 0.0;
  std::size_t cells = 0;

  friend bool operator==(const ScalingFit&, const ScalingFit&) = default;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  ScalingFit fit;
  std::uint64_t seed = 0;

  [[nodiscard]] const ScalingRow* cell(std::size_t n, std::int64_t d) const {
    for (const auto& r : rows)
      if (r.n == n && r.d == d) return &r;
    return nullptr;
  }

  friend bool operator==(const ScalingReport&, const ScalingReport&) = default;
};

inline double scaling_feature(std::size_t n, std::int64_t d) {
  const double nn = static_cast<double>(n);
  return nn * nn * std::log(nn * static_cast<double>(d));
}

inline ScalingFit fit_scaling(const std::vector<ScalingRow>& rows) {
  ScalingFit fit;
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.trials == 0) continue;
    x.push_back(scaling_feature(r.n, r.d));
    y.push_back(r.mean_arith_ops);
  }
  fit.cells = x.size();
  if (x.empty()) return fit;
  const double k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  fit.c1 = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.c2 = my - fit.c1 * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.c1 * x[i] + fit.c2);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

struct ScalingConfig {
  std::vector<std::size_t> n_list{2, 4, 8, 16};
  std::vector<std::int64_t> d_list{2, 256, 65536};
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  // per-equation (Var c0, Var c1); empty means unit variances
  std::vector<std::pair<double, double>> variances;
  unsigned threads = 0;  // 0 picks hardware concurrency
};

namespace detail {

struct TrialOutcome {
  bool ok = false;
  OpCounter counter;
};

inline TrialOutcome run_trial(std::size_t n, std::int64_t d, std::uint64_t seed,
                              const std::vector<std::pair<double, double>>& variances) {
  GaussianEnsemble e{n, d, {}, seed};
  e.variances = variances.empty() ? std::vector<std::pair<double, double>>(n, {1.0, 1.0}) : variances;
  TrialOutcome out;
  try {
    const BinomialSystem f = sample_system(e);
    (void)solve(f, {}, &out.counter);
    out.ok = true;
  } catch (const Error&) {
    out.ok = false;
  }
  return out;
}

}  // namespace detail

/// Samples `trials` systems per (n, d) cell, counts the solver's
/// operations and fits the growth model. Trials that raise are excluded
/// and counted in `failed`. Deterministic in the seed.
inline ScalingReport run_scaling(const ScalingConfig& cfg) {
  if (cfg.n_list.empty() || cfg.d_list.empty()) fail(Errc::InvalidInput, "n and d lists must be nonempty");
  if (cfg.trials < 30) fail(Errc::InvalidInput, "at least 30 trials per cell");
  for (std::size_t n : cfg.n_list)
    if (!cfg.variances.empty() && cfg.variances.size() != n)
      fail(Errc::InvalidInput, "variances must have one pair per equation");

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));

  ScalingReport report;
  report.seed = cfg.seed;
  std::uint64_t cell = 0;
  for (std::size_t n : cfg.n_list) {
    for (std::int64_t d : cfg.d_list) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<detail::TrialOutcome> outcomes(cfg.trials);
      auto worker = [&](unsigned w) {
        for (std::size_t t = w; t < cfg.trials; t += workers)
          outcomes[t] = detail::run_trial(n, d, derive_seed(cfg.seed, cell, t), cfg.variances);
      };
      if (workers == 1) {
        worker(0);
      } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, worker, w));
        for (auto& j : jobs) j.get();
      }

      ScalingRow row;
      row.n = n;
      row.d = d;
      double sum = 0.0, sum_sq = 0.0, snf = 0.0, newton = 0.0;
      for (const auto& o : outcomes) {
        if (!o.ok) {
          ++row.failed;
          continue;
        }
        ++row.trials;
        const double ops = static_cast<double>(o.counter.arithmetic_ops());
        sum += ops;
        sum_sq += ops * ops;
        snf += static_cast<double>(o.counter.snf_bitop_proxy);
        newton += static_cast<double>(o.counter.newton_iters);
      }
      if (row.trials > 0) {
        const double k = static_cast<double>(row.trials);
        row.mean_arith_ops = sum / k;
        row.stddev = row.trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / k) / (k - 1))) : 0.0;
        row.mean_snf_proxy = snf / k;
        row.mean_newton_iters = newton / k;
      }
      row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.rows.push_back(row);
      ++cell;
    }
  }
  report.fit = fit_scaling(report.rows);
  return report;
}

inline void write_scaling_csv(std::ostream& os, const ScalingReport& report) {
  os << "n,d,trials,mean_arith_ops,stddev,mean_snf_proxy,mean_newton_iters,wall_time,failed\n";
  os.precision(12);
  for (const auto& r : report.rows)
    os << r.n << ',' << r.d << ',' << r.trials << ',' << r.mean_arith_ops << ',' << r.stddev << ','
       << r.mean_snf_proxy << ',' << r.mean_newton_iters << ',' << r.wall_time << ',' << r.failed << '\n';
}

inline nlohmann::json scaling_fit_json(const ScalingReport& report) {
  return {{"schema_version", 1},
          {"model", "c1*n^2*ln(n*d) + c2"},
          {"c1", report.fit.c1},
          {"c2", report.fit.c2},
          {"r_squared", report.fit.r_squared},
          {"cells", report.fit.cells},
          {"seed", report.seed}};
}

}  // namespace binom
