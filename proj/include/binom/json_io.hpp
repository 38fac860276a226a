#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binom/ensemble.hpp"
#include "binom/error.hpp"
#include "binom/logsign.hpp"
#include "binom/oracle.hpp"
#include "binom/solver.hpp"
#include "binom/system.hpp"

namespace binom::json {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Integers that fit in 64 bits are written as numbers, larger ones as strings.
inline json from_bigint(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str(10);
}

inline BigInt to_bigint(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail(Errc::InvalidInput, "bad integer string");
    return v;
  }
  fail(Errc::InvalidInput, "expected an integer");
}

inline json from_logsign(const LogSign& v) {
  return {{"sign", v.sign()}, {"log_abs", v.logabs_decimal()}};
}

inline LogSign to_logsign(const json& j) {
  if (!j.is_object() || !j.contains("sign") || !j.contains("log_abs"))
    fail(Errc::InvalidInput, "LogSign needs sign and log_abs");
  const int sign = j.at("sign").get<int>();
  if (sign != 1 && sign != -1) fail(Errc::InvalidInput, "LogSign sign must be +1 or -1");
  const json& l = j.at("log_abs");
  const std::string text = l.is_string() ? l.get<std::string>() : l.dump();
  const auto point = text.find('.');
  const std::size_t places = point == std::string::npos ? 0 : text.size() - point - 1;
  const unsigned bits = std::max(64u, LogSign::bits_for_decimal_places(places));
  return LogSign::from_log_decimal(sign, text, bits);
}

/// Root coordinate: LogSign plus a plain "value" when it fits a double.
inline json from_root_coordinate(const LogSign& v) {
  json j = from_logsign(v);
  if (v.fits_native()) j["value"] = v.to_real();
  return j;
}

inline json from_coefficient(const Coefficient& c) {
  if (c.is_decimal()) return c.decimal().str();
  return from_logsign(c.logsign());
}

inline Coefficient to_coefficient(const json& j) {
  if (j.is_object()) return Coefficient(to_logsign(j));
  if (j.is_string()) return Coefficient(Decimal::parse(j.get<std::string>()));
  if (j.is_number()) return Coefficient(j.get<double>());
  fail(Errc::InvalidInput, "coefficient must be a decimal string, number, or LogSign object");
}

/// {"equations": [{"c0", "c1", "exponents"}, ...]}; exponents of equation i
/// form column i of A.
inline BinomialSystem to_system(const json& j) {
  if (!j.is_object() || !j.contains("equations") || !j.at("equations").is_array())
    fail(Errc::InvalidInput, "system needs an equations array");
  const json& eqs = j.at("equations");
  const std::size_t n = eqs.size();
  if (n == 0) fail(Errc::InvalidInput, "system has no equations");
  IntMatrix a(n, n);
  std::vector<CoefficientPair> coeffs;
  for (std::size_t i = 0; i < n; ++i) {
    const json& e = eqs[i];
    if (!e.is_object() || !e.contains("c0") || !e.contains("c1") || !e.contains("exponents"))
      fail(Errc::InvalidInput, "equation needs c0, c1 and exponents");
    const json& ex = e.at("exponents");
    if (!ex.is_array() || ex.size() != n)
      fail(Errc::InvalidInput, "exponent vector length must equal the number of equations");
    for (std::size_t k = 0; k < n; ++k) a(k, i) = to_bigint(ex[k]);
    coeffs.push_back({to_coefficient(e.at("c0")), to_coefficient(e.at("c1"))});
  }
  return {ExponentMatrix(std::move(a)), std::move(coeffs)};
}

inline json from_system(const BinomialSystem& f) {
  json eqs = json::array();
  for (std::size_t i = 0; i < f.n(); ++i) {
    json ex = json::array();
    for (std::size_t k = 0; k < f.n(); ++k) ex.push_back(from_bigint(f.A()(k, i)));
    eqs.push_back({{"c0", from_coefficient(f.coefficients()[i].c0)},
                   {"c1", from_coefficient(f.coefficients()[i].c1)},
                   {"exponents", ex}});
  }
  return {{"schema_version", kSchemaVersion}, {"equations", eqs}};
}

// JSON has no infinities; exact Newton steps give log2 error -inf
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json from_certificate(const RootCertificate& c) {
  json factors = json::array();
  for (const auto& f : c.factors) {
    json errs = json::array(), ratios = json::array();
    for (double e : f.log2_errors) errs.push_back(finite_or_null(e));
    for (double r : f.contraction_ratios) ratios.push_back(finite_or_null(r));
    factors.push_back({{"exponent", from_bigint(f.exponent)},
                       {"applicable", f.applicable},
                       {"alpha", f.alpha ? json(*f.alpha) : json(nullptr)},
                       {"log2_errors", errs},
                       {"contraction_ratios", ratios},
                       {"contraction_ok", f.contraction_ok}});
  }
  json sign_ok = json::array();
  for (bool b : c.sign_ok) sign_ok.push_back(b);
  return {{"tolerance", c.tolerance},       {"max_residual", c.max_residual()},
          {"residuals", c.residuals},       {"sign_ok", sign_ok},
          {"passes", c.passes()},           {"contraction_ok", c.contraction_ok()},
          {"alpha_threshold", kAlphaThreshold}, {"factors", factors}};
}

inline json from_solve(const SolveResult& r) {
  json s = json::array();
  for (const auto& v : r.smith.S) s.push_back(from_bigint(v));
  json out = {{"schema_version", kSchemaVersion},
              {"status", r.status == SolveStatus::RootFound ? "root_found" : "no_real_root"},
              {"smith", {{"S", s}}},
              {"budget", {{"integer_bits", r.budget.integer_bits}, {"fraction_bits", r.budget.fraction_bits}}},
              {"escalations", r.escalations}};
  if (r.status == SolveStatus::RootFound) {
    json root = json::array();
    for (const auto& v : r.root) root.push_back(from_root_coordinate(v));
    out["root"] = root;
    if (r.certificate) out["certificate"] = from_certificate(*r.certificate);
  }
  return out;
}

inline json from_oracle(const OracleResult& o) {
  return {{"schema_version", kSchemaVersion},
          {"exists", o.exists},
          {"count", o.count},
          {"sign_patterns", o.sign_patterns},
          {"log_magnitudes", o.log_magnitudes}};
}

/// {"n", "d", "variances": [[v0, v1], ...] | "unit", "seed"}.
inline GaussianEnsemble to_ensemble(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d"))
    fail(Errc::InvalidInput, "ensemble needs n and d");
  const auto n = j.at("n").get<std::int64_t>();
  const auto d = j.at("d").get<std::int64_t>();
  if (n < 1) fail(Errc::InvalidInput, "ensemble n must be positive");
  GaussianEnsemble e{static_cast<std::size_t>(n), d, {}, j.value("seed", std::uint64_t{0})};
  const json v = j.value("variances", json("unit"));
  if (v.is_string()) {
    if (v.get<std::string>() != "unit") fail(Errc::InvalidInput, "variances must be \"unit\" or a list");
    e.variances.assign(e.n, {1.0, 1.0});
  } else if (v.is_array()) {
    for (const auto& p : v) {
      if (!p.is_array() || p.size() != 2) fail(Errc::InvalidInput, "variance entries are [v0, v1] pairs");
      e.variances.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  } else {
    fail(Errc::InvalidInput, "variances must be \"unit\" or a list");
  }
  e.validate();
  return e;
}

inline json from_ensemble(const GaussianEnsemble& e) {
  json v = json::array();
  for (const auto& [a, b] : e.variances) v.push_back({a, b});
  return {{"n", e.n}, {"d", e.d}, {"variances", v}, {"seed", e.seed}};
}

/// Parses text, mapping JSON syntax and type errors to InvalidInput.
template <typename F>
auto parse_with(const std::string& text, F&& convert) {
  try {
    return convert(json::parse(text));
  } catch (const json::exception& e) {
    fail(Errc::InvalidInput, std::string("bad JSON: ") + e.what());
  }
}

}  // namespace binom::json
