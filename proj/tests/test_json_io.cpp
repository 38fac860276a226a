#include <catch2/catch_amalgamated.hpp>

#include "binom/json_io.hpp"

using namespace binom;
using Json = nlohmann::json;
namespace jio = binom::json;

TEST_CASE("LogSign JSON round trip", "[json]") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const LogSign v = LogSign::from_real(rng.normal() * std::exp(rng.normal() * 20), 64 + t % 100);
    const Json j = jio::from_logsign(v);
    CHECK(j["sign"] == v.sign());
    CHECK(j["log_abs"].is_string());
    const LogSign back = jio::to_logsign(j);
    REQUIRE(back.sign() == v.sign());
    REQUIRE(back.at_precision(v.precision()) == v);
  }
}

TEST_CASE("LogSign JSON errors", "[json]") {
  CHECK_THROWS_AS(jio::to_logsign(Json{{"sign", 0}, {"log_abs", "1.0"}}), Error);
  CHECK_THROWS_AS(jio::to_logsign(Json{{"log_abs", "1.0"}}), Error);
  CHECK_THROWS_AS(jio::to_logsign(Json{{"sign", 1}, {"log_abs", "abc"}}), Error);
}

TEST_CASE("system parsing", "[json]") {
  const auto f = jio::parse_with(
      R"({"equations": [{"c0": "-3", "c1": 1.5, "exponents": [1, 1]},
                        {"c0": {"sign": 1, "log_abs": "0.6931471805599453"}, "c1": "-0.5", "exponents": [1, -1]}]})",
      jio::to_system);
  REQUIRE(f.n() == 2);
  CHECK(f.A()(0, 1) == 1);
  CHECK(f.A()(1, 1) == -1);
  CHECK(f.coefficients()[0].c0.decimal().str() == "-3");
  CHECK_FALSE(f.coefficients()[1].c0.is_decimal());
  CHECK(std::fabs(f.coefficients()[1].c0.log_abs_approx() - std::log(2.0)) < 1e-15);

  const auto again = jio::to_system(jio::from_system(f));
  CHECK(again.A().entries() == f.A().entries());
}

TEST_CASE("big exponents are written as strings", "[json]") {
  const BigInt big("123456789012345678901234567890");
  CHECK(jio::from_bigint(big) == "123456789012345678901234567890");
  CHECK(jio::to_bigint(jio::from_bigint(big)) == big);
  CHECK(jio::from_bigint(BigInt(-5)) == -5);
}

TEST_CASE("malformed systems", "[json]") {
  auto bad = [](const char* text) {
    try {
      (void)jio::parse_with(text, jio::to_system);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::NoRealRoot;
  };
  CHECK(bad(R"({"equations": [)") == Errc::InvalidInput);
  CHECK(bad(R"({"equations": []})") == Errc::InvalidInput);
  CHECK(bad(R"({"equations": [{"c0": "1", "c1": "1", "exponents": [1, 2]}]})") == Errc::InvalidInput);
  CHECK(bad(R"({"equations": [{"c0": "0", "c1": "1", "exponents": [1]}]})") == Errc::ZeroValue);
  CHECK(bad(R"({"equations": [{"c0": "1", "c1": "1", "exponents": [0]}]})") == Errc::SingularMatrix);
  CHECK(bad(R"({"equations": [{"c0": "1", "c1": "1", "exponents": ["x"]}]})") == Errc::InvalidInput);
  CHECK(bad(R"([1, 2])") == Errc::InvalidInput);
}

TEST_CASE("solve output", "[json]") {
  const auto f = BinomialSystem::from_columns({{2}}, {{-2.0, 1.0}});
  const Json out = jio::from_solve(solve(f));
  CHECK(out["schema_version"] == 1);
  CHECK(out["status"] == "root_found");
  CHECK(out["smith"]["S"] == Json::array({2}));
  CHECK(out["root"][0]["sign"] == 1);
  CHECK(out["root"][0]["log_abs"].get<std::string>().rfind("0.3465735902", 0) == 0);
  CHECK(out["certificate"]["passes"] == true);

  const Json none = jio::from_solve(solve(BinomialSystem::from_columns({{2}}, {{1.0, 1.0}})));
  CHECK(none["status"] == "no_real_root");
  CHECK_FALSE(none.contains("root"));
}

TEST_CASE("ensemble description", "[json]") {
  const auto e = jio::to_ensemble(Json::parse(R"({"n": 2, "d": 8, "variances": [[4, 0.25], [1, 9]], "seed": 11})"));
  CHECK(e.n == 2);
  CHECK(e.variances[1].second == 9.0);
  CHECK(e.seed == 11);
  const auto u = jio::to_ensemble(Json::parse(R"({"n": 3, "d": 2, "variances": "unit"})"));
  CHECK(u.variances.size() == 3);
  CHECK_THROWS_AS(jio::to_ensemble(Json::parse(R"({"n": 2, "d": 8, "variances": [[1, 1]]})")), Error);
  CHECK_THROWS_AS(jio::to_ensemble(Json::parse(R"({"n": 2, "d": 8, "variances": "big"})")), Error);
  CHECK_THROWS_AS(jio::to_ensemble(Json::parse(R"({"d": 8})")), Error);
}
