#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "binom/ensemble.hpp"
#include "binom/solver.hpp"

using namespace binom;

TEST_CASE("sampling is deterministic per seed", "[ensemble]") {
  const auto e = GaussianEnsemble::unit(5, 20, 1234);
  const auto a = sample_system(e);
  const auto b = sample_system(e);
  CHECK(a.A().entries() == b.A().entries());
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.coefficients()[i].c0 == b.coefficients()[i].c0);
    CHECK(a.coefficients()[i].c1 == b.coefficients()[i].c1);
  }
  const auto c = sample_system(GaussianEnsemble::unit(5, 20, 1235));
  CHECK_FALSE(c.A().entries() == a.A().entries());
}

TEST_CASE("n = 1, d = 1 only yields +-1", "[ensemble]") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = sample_system(GaussianEnsemble::unit(1, 1, s));
    const BigInt& v = f.A()(0, 0);
    REQUIRE((v == 1 || v == -1));
  }
}

TEST_CASE("exponent entries stay in [-d, d] and cover both ends", "[ensemble]") {
  bool lo = false, hi = false;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto f = sample_system(GaussianEnsemble::unit(4, 3, s));
    for (const auto& v : f.A().entries().data()) {
      REQUIRE(abs(v) <= 3);
      lo = lo || v == -3;
      hi = hi || v == 3;
    }
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("coefficient variance matches the ensemble", "[ensemble][montecarlo]") {
  // sample variance of N(0, 4) over 1e5 draws has standard error 4 sqrt(2/1e5)
  GaussianEnsemble e{1, 1, {{4.0, 1.0}}, 0};
  const int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < draws; ++t) {
    e.seed = derive_seed(99, 0, static_cast<std::uint64_t>(t));
    const double c = sample_system(e).coefficients()[0].c0.decimal().to_double();
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  CHECK(std::fabs(var - 4.0) < 0.1);
  CHECK(std::fabs(var - 4.0) < 3.0 * 4.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("ensemble validation", "[ensemble]") {
  CHECK_THROWS_AS(sample_system(GaussianEnsemble{2, 1, {{1.0, 1.0}}, 0}), Error);
  CHECK_THROWS_AS(sample_system(GaussianEnsemble{1, 0, {{1.0, 1.0}}, 0}), Error);
  CHECK_THROWS_AS(sample_system(GaussianEnsemble{1, 1, {{0.0, 1.0}}, 0}), Error);
  CHECK_THROWS_AS(sample_system(GaussianEnsemble{1, 1, {{1.0, -2.0}}, 0}), Error);
}

TEST_CASE("rescaling vector examples", "[rescale]") {
  const ExponentMatrix two(IntMatrix{{2}});
  const std::vector<LogSign> four{LogSign::from_real(4.0, 128)};
  const auto r = rescaling_vector(two, four);
  CHECK(std::fabs(r[0].logabs() - std::log(2.0)) < 1e-16);

  const auto f = sample_system(GaussianEnsemble::unit(3, 5, 8));
  const auto rs = rescale_to_unit_variance(f, GaussianEnsemble::unit(3, 5, 8));
  for (const auto& v : rs.r) CHECK(v.scaled() == 0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(log_distance(rs.system.coefficients()[i].c0.to_logsign(64),
                       f.coefficients()[i].c0.to_logsign(64)) == 0.0);
  }
}

TEST_CASE("(rx)^A = r^A x^A", "[rescale][property]") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto f = sample_system(GaussianEnsemble::unit(n, 25, 600 + t));
    std::vector<LogSign> r, x, rx;
    for (std::size_t i = 0; i < n; ++i) {
      r.push_back(LogSign::from_real(std::exp(rng.normal() * 3), 80));
      x.push_back(LogSign::from_real(rng.normal(), 80));
      rx.push_back(mul(r.back(), x.back()));
    }
    const auto lhs = apply_exponent(rx, f.A().entries());
    const auto ra = apply_exponent(r, f.A().entries());
    const auto xa = apply_exponent(x, f.A().entries());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(lhs[i] == mul(ra[i], xa[i]));
  }
}

TEST_CASE("rescaled coefficients have unit variance", "[rescale][montecarlo]") {
  GaussianEnsemble e{2, 4, {{9.0, 0.25}, {0.5, 16.0}}, 0};
  double s2[2][2] = {{0, 0}, {0, 0}};
  const int draws = 4000;
  for (int t = 0; t < draws; ++t) {
    e.seed = derive_seed(3, 1, static_cast<std::uint64_t>(t));
    const auto rs = rescale_to_unit_variance(sample_system(e), e);
    for (int i = 0; i < 2; ++i) {
      s2[i][0] += std::pow(std::exp(rs.system.coefficients()[i].c0.log_abs_approx()), 2);
      s2[i][1] += std::pow(std::exp(rs.system.coefficients()[i].c1.log_abs_approx()), 2);
    }
  }
  for (auto& row : s2)
    for (double v : row) CHECK(std::fabs(v / draws - 1.0) < 0.12);  // 5 standard errors
}

TEST_CASE("solving the rescaled system and mapping back matches a direct solve", "[rescale][property]") {
  Rng rng(77);
  int compared = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 5;
    GaussianEnsemble e{n, 12, {}, 4000 + t};
    for (std::size_t i = 0; i < n; ++i)
      e.variances.push_back({std::exp(rng.normal()), std::exp(rng.normal())});
    const auto f = sample_system(e);
    const auto direct = solve(f);
    const auto rs = rescale_to_unit_variance(f, e);
    SolveOptions opt;
    opt.fraction_bits = direct.budget.fraction_bits;
    const auto scaled = solve(rs.system, opt);
    REQUIRE(direct.status == scaled.status);
    if (direct.status != SolveStatus::RootFound) continue;
    ++compared;
    for (std::size_t j = 0; j < n; ++j) {
      const LogSign mapped = mul(rs.r[j], scaled.root[j]);
      REQUIRE(mapped.sign() == direct.root[j].sign());
      REQUIRE(log_distance(mapped, direct.root[j]) <= 1e-9);
    }
  }
  CHECK(compared >= 30);
}
