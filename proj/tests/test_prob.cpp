#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "binom/prob/experiments.hpp"

using namespace binom;
using namespace binom::prob;

namespace {

// Closed forms, evaluated independently of the quadrature:
// E ln|Z| = -(gamma_E + ln 2) / 2 and Var ln|Z| = psi'(1/2) / 4 = pi^2 / 8.
constexpr double kEulerGamma = 0.57721566490153286060651209;
const double kA = -(kEulerGamma + std::log(2.0)) / 2.0;
const double kTau2 = M_PI * M_PI / 8.0;

double factorial(int p) {
  double f = 1.0;
  for (int k = 2; k <= p; ++k) f *= k;
  return f;
}

}  // namespace

TEST_CASE("density normalization", "[prob][quadrature]") {
  CHECK(std::fabs(density_y_mass() - 1.0) < 1e-10);
  CHECK(std::fabs(static_cast<double>(integrate_line([](Real t) { return density_z(t); }).value) - 1.0) < 1e-12);
  CHECK(std::fabs(static_cast<double>(integrate_line([](Real t) { return density_l(t); }).value) - 1.0) < 1e-12);
}

TEST_CASE("constant a", "[prob][quadrature]") {
  CHECK(std::fabs(kA - (-0.6351814227)) < 1e-10);
  const double a = constant_a();
  CHECK(std::fabs(a - kA) < 1e-9);
  CHECK(a < 0.0);
  const auto mc = constant_a_monte_carlo(1000000, 11);
  CHECK(std::fabs(mc.value - a) < 3.0 * mc.std_error);
}

TEST_CASE("variance tau^2", "[prob][quadrature]") {
  const double t2 = variance_tau2();
  CHECK(std::fabs(t2 - kTau2) < 1e-9);
  CHECK(std::fabs(t2 - 1.2337005501) < 1e-9);
  const auto mc = variance_tau2_monte_carlo(1000000, 12);
  CHECK(std::fabs(mc.value - t2) < 3.0 * mc.std_error);
}

TEST_CASE("W is centred", "[prob][montecarlo]") {
  const double a = constant_a();
  const auto acc = monte_carlo(1000000, 13, [a](Rng& r) { return sample_y(r) - a; });
  CHECK(std::fabs(acc.mean) < 3.0 * acc.std_error());
}

TEST_CASE("exponential and Laplace moments", "[prob][quadrature]") {
  for (int p = 1; p <= 16; ++p) {
    CHECK(norm_theta(p) == Catch::Approx(std::pow(factorial(p), 1.0 / p)).epsilon(1e-11));
    CHECK(norm_l(p) == Catch::Approx(norm_theta(p)).epsilon(1e-10));
  }
}

TEST_CASE("moment ratio of W", "[prob][quadrature]") {
  CHECK(norm_w(2) == Catch::Approx(std::sqrt(kTau2)).epsilon(1e-11));
  CHECK(moment_ratio_w(2) == Catch::Approx(M_PI / 4.0).epsilon(1e-10));
  CHECK(std::fabs(moment_ratio_w(2) - 0.7854) < 1e-4);
  double lo = 1e300, hi = 0.0;
  for (int p = 2; p <= 16; p += 2) {
    const double r = moment_ratio_w(p);
    if (p <= 8) {
      CHECK(r >= 0.05);
      CHECK(r <= 20.0);
    }
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 10.0);
  CHECK_THROWS_AS(moment_ratio_w(3), Error);
  CHECK_THROWS_AS(moment_ratio_w(18), Error);
}

TEST_CASE("moment of W by quadrature matches Monte Carlo", "[prob][montecarlo]") {
  const double a = constant_a();
  const auto acc = monte_carlo(1000000, 14, [a](Rng& r) { return std::pow(sample_y(r) - a, 4); });
  CHECK(std::fabs(acc.mean - std::pow(norm_w(4), 4)) < 3.0 * acc.std_error());
}

TEST_CASE("samplers match their densities", "[prob][montecarlo]") {
  const auto theta = monte_carlo(200000, 15, [](Rng& r) { return sample_theta(r); });
  CHECK(std::fabs(theta.mean - 1.0) < 3.0 * theta.std_error());
  const auto lap = monte_carlo(200000, 16, [](Rng& r) {
    const double x = sample_l(r);
    return x * x;
  });
  CHECK(std::fabs(lap.mean - 2.0) < 3.0 * lap.std_error());
}

TEST_CASE("wilson interval", "[prob]") {
  const auto i = wilson_interval(50, 100, 1.96);
  CHECK(i.lo == Catch::Approx(0.4038).margin(1e-3));
  CHECK(i.hi == Catch::Approx(0.5962).margin(1e-3));
  const auto z = wilson_interval(0, 100);
  CHECK(z.lo == 0.0);
  CHECK(z.hi > 0.0);
  CHECK(wilson_interval(100, 100).hi == Catch::Approx(1.0));
}

TEST_CASE("tail of a linear combination", "[prob][montecarlo]") {
  SECTION("t = 0 has probability 1") {
    const auto rows = tail_linear_combination({{1.0}, 0, 10000, 1}, {0.0});
    CHECK(rows[0].probability == 1.0);
  }
  SECTION("theta = (1) decays at least exponentially on [1, 5]") {
    const auto rows = tail_linear_combination({{1.0}, 0, 1000000, 2}, {1, 2, 3, 4, 5});
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].probability < rows[k - 1].probability);
    // log-tail slope below -1 between the ends
    const double slope = (std::log(rows[4].probability) - std::log(rows[0].probability)) / 4.0;
    CHECK(slope <= -1.0);
    const auto fit = fit_tail_envelope(rows, 1.0);
    CHECK(fit.c > 0.0);
    CHECK(fit.c_prime > 0.0);
    for (const auto& r : rows) CHECK(r.probability <= fit(r.t, 1.0) * (1 + 1e-12));
  }
  SECTION("dimension 16 tail is monotone") {
    const auto theta = random_direction(16, 3);
    const auto rows = tail_linear_combination({theta, 0, 100000, 4}, {0.5, 1.0});
    CHECK(rows[1].probability < rows[0].probability);
  }
  SECTION("input checks") {
    CHECK_THROWS_AS(tail_linear_combination({{1.0, 1.0}, 0, 10000, 1}, {1.0}), Error);
    CHECK_THROWS_AS(tail_linear_combination({{1.0}, 0, 100, 1}, {1.0}), Error);
  }
}

TEST_CASE("log-log expectation", "[prob][montecarlo]") {
  const std::vector<double> a{M_SQRT1_2, -M_SQRT1_2};
  SECTION("d = 100 bounds and estimate") {
    const auto r = loglog_expectation({a, 100.0, 100000, 21});
    CHECK(r.lower_bound == Catch::Approx(1.5272).margin(1e-4));
    CHECK(r.upper_bound == Catch::Approx(4.7226).margin(1e-3));
    const double independent_upper =
        std::log(std::log(100.0) - 1.0) + 2.0 + std::log(2.0) + std::log(1.0 + std::sqrt(kTau2));
    CHECK(r.upper_bound == Catch::Approx(independent_upper).epsilon(1e-9));
    CHECK(r.estimate >= r.lower_bound);
    CHECK(r.estimate <= r.upper_bound);
  }
  SECTION("zero weights give ln ln d exactly") {
    const auto r = loglog_expectation({{0.0, 0.0}, 100.0, 10000, 1});
    CHECK(r.estimate == Catch::Approx(std::log(std::log(100.0))).epsilon(1e-15));
    CHECK(r.std_error < 1e-12);
  }
  SECTION("d = e^2") {
    const auto r = loglog_expectation({a, kE2, 100000, 22});
    CHECK(r.lower_bound == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(r.estimate >= std::log(2.0));
  }
  SECTION("errors") {
    try {
      (void)loglog_expectation({{1.0, 1.0}, 100.0, 1000, 1});
      FAIL("expected WeightSumNonzero");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::WeightSumNonzero);
    }
    try {
      (void)loglog_expectation({a, 7.0, 1000, 1});
      FAIL("expected ScaleTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ScaleTooSmall);
    }
  }
}

TEST_CASE("log-log expectation for one Gaussian", "[prob][montecarlo]") {
  const auto e2 = loglog_single_gaussian(kE2, 100000, 31);
  CHECK(e2.lower_bound == Catch::Approx(0.6931).margin(1e-4));
  const auto h = loglog_single_gaussian(100.0, 100000, 32);
  CHECK(h.estimate >= 1.5272);
  CHECK(h.estimate <= 0.6931 + std::log(std::log(100.0 / M_E)) + 1.5958);
  CHECK(h.upper_bound == Catch::Approx(std::log(2.0) + std::log(std::log(100.0) - 1) + std::sqrt(8 / M_PI)));
  const auto big = loglog_single_gaussian(1e4, 100000, 33);
  CHECK(e2.estimate < h.estimate);
  CHECK(h.estimate < big.estimate);
  CHECK_THROWS_AS(loglog_single_gaussian(5.0, 100, 1), Error);
}

TEST_CASE("log-concave tail", "[prob][montecarlo]") {
  const std::vector<double> a{M_SQRT1_2, -M_SQRT1_2};
  const double gamma = std::sqrt(kTau2);
  const auto rows = logconcave_tail_check({a, 0, 100000, 41}, {gamma, 2 * gamma, 4 * gamma});
  CHECK(rows[0].bound == Catch::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(rows[2].bound == Catch::Approx(std::exp(-2.0)).epsilon(1e-9));
  for (const auto& r : rows) CHECK(r.ci.lo <= r.bound);
  CHECK(rows[1].probability < rows[0].probability);
  CHECK(rows[2].probability < rows[1].probability);
  CHECK_THROWS_AS(logconcave_tail_check({a, 0, 1000, 1}, {0.5 * gamma}), Error);
  CHECK_THROWS_AS(logconcave_tail_check({{1.0}, 0, 1000, 1}, {gamma}), Error);
}

TEST_CASE("variance of W_a is tau^2 ||a||^2", "[prob][montecarlo]") {
  const std::vector<double> a{0.5, -0.2, -0.3};
  const auto acc = monte_carlo(400000, 51, [&](Rng& r) { return detail::weighted_y(r, a); });
  const double want = kTau2 * (0.25 + 0.04 + 0.09);
  CHECK(std::fabs(acc.variance() - want) < 0.01);
}

TEST_CASE("rearranged norms", "[prob]") {
  auto r = rearranged_norms({1, 0, 0}, 1);
  CHECK(r.linf_head == 1.0);
  CHECK(r.l2_tail == 0.0);
  r = rearranged_norms({3, 2, 1}, 1);
  CHECK(r.linf_head == 3.0);
  CHECK(r.l2_tail == Catch::Approx(std::sqrt(5.0)));
  r = rearranged_norms({3, 2, 1}, 5);
  CHECK(r.linf_head == 3.0);
  CHECK(r.l2_tail == 0.0);
  r = rearranged_norms({-1, 4, -2}, 2);
  CHECK(r.linf_head == 4.0);
  CHECK(r.l2_tail == 1.0);
  CHECK_THROWS_AS(rearranged_norms({1}, 0), Error);
}

TEST_CASE("moment scale stays in a two-sided bracket", "[prob][montecarlo]") {
  for (std::size_t n : {1u, 4u, 16u}) {
    const auto theta = random_direction(n, 60 + n);
    for (const auto& row : moment_scale_check(theta, {2, 4, 8, 16}, 200000, 61)) {
      CHECK(row.ratio >= 0.02);
      CHECK(row.ratio <= 50.0);
    }
  }
}

TEST_CASE("csv report", "[prob]") {
  std::ostringstream os;
  write_csv(os, {{"constant-a", R"({"samples":10})", -0.5, -0.6, -0.4, std::nullopt, 1.5, 10, 3}});
  CHECK(os.str() ==
        "experiment,param-json,estimate,ci_lo,ci_hi,bound_lo,bound_hi,samples,seed\n"
        "constant-a,\"{\"\"samples\"\":10}\",-0.5,-0.6,-0.4,,1.5,10,3\n");
}
