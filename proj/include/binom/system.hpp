#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "binom/decimal.hpp"
#include "binom/error.hpp"
#include "binom/exponent_matrix.hpp"
#include "binom/logsign.hpp"

namespace binom {

/// Equation coefficient: an exact decimal as read from input, or a value
/// already in log-sign form (e.g. after rescaling).
class Coefficient {
 public:
  Coefficient(Decimal d) : value_(std::move(d)) {  // NOLINT(implicit)
    if (std::get<Decimal>(value_).is_zero()) fail(Errc::ZeroValue, "coefficient is zero");
  }
  Coefficient(LogSign l) : value_(std::move(l)) {}  // NOLINT(implicit)
  Coefficient(double v) : Coefficient(checked(v)) {}  // NOLINT(implicit)

  [[nodiscard]] int sign() const {
    return std::visit([](const auto& v) { return v.sign(); }, value_);
  }

  [[nodiscard]] double log_abs_approx() const {
    if (const auto* d = std::get_if<Decimal>(&value_)) return d->log_abs_approx();
    return std::get<LogSign>(value_).logabs();
  }

  [[nodiscard]] LogSign to_logsign(unsigned frac_bits) const {
    if (const auto* d = std::get_if<Decimal>(&value_)) return LogSign::from_decimal(*d, frac_bits);
    return std::get<LogSign>(value_).at_precision(frac_bits);
  }

  [[nodiscard]] bool is_decimal() const { return std::holds_alternative<Decimal>(value_); }
  [[nodiscard]] const Decimal& decimal() const { return std::get<Decimal>(value_); }
  [[nodiscard]] const LogSign& logsign() const { return std::get<LogSign>(value_); }

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.value_ == b.value_; }

 private:
  static Decimal checked(double v) {
    if (v == 0.0) fail(Errc::ZeroValue, "coefficient is zero");
    if (!std::isfinite(v)) fail(Errc::NonFinite, "coefficient is not finite");
    return Decimal::from_double(v);
  }

  std::variant<Decimal, LogSign> value_;
};

struct CoefficientPair {
  Coefficient c0;
  Coefficient c1;
};

/// f_i(x) = c_{i,0} + c_{i,1} x^{a_i}, where a_i is column i of A.
class BinomialSystem {
 public:
  BinomialSystem(ExponentMatrix a, std::vector<CoefficientPair> coefficients)
      : a_(std::move(a)), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != a_.n())
      fail(Errc::InvalidInput, "need one coefficient pair per column of A");
  }

  /// Convenience for tests and samples: columns given as exponent vectors.
  static BinomialSystem from_columns(const std::vector<std::vector<long>>& exponents,
                                     const std::vector<std::pair<double, double>>& coeffs) {
    const std::size_t n = exponents.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (exponents[i].size() != n) fail(Errc::InvalidInput, "exponent vector has wrong length");
      for (std::size_t j = 0; j < n; ++j) m(j, i) = exponents[i][j];
    }
    std::vector<CoefficientPair> c;
    for (const auto& [c0, c1] : coeffs) c.push_back({Coefficient(c0), Coefficient(c1)});
    return {ExponentMatrix(std::move(m)), std::move(c)};
  }

  [[nodiscard]] std::size_t n() const noexcept { return a_.n(); }
  [[nodiscard]] const ExponentMatrix& A() const noexcept { return a_; }
  [[nodiscard]] const std::vector<CoefficientPair>& coefficients() const noexcept {
    return coefficients_;
  }

  /// max_i |ln|c_{i,0}/c_{i,1}||, the sigma of the precision budget.
  [[nodiscard]] double sigma() const {
    double s = 0.0;
    for (const auto& c : coefficients_)
      s = std::max(s, std::fabs(c.c0.log_abs_approx() - c.c1.log_abs_approx()));
    return s;
  }

  /// c~_i = -c_{i,0}/c_{i,1} with `frac_bits` fraction bits.
  [[nodiscard]] std::vector<LogSign> ratios(unsigned frac_bits) const {
    std::vector<LogSign> out;
    out.reserve(coefficients_.size());
    for (const auto& c : coefficients_)
      out.push_back(-div(c.c0.to_logsign(frac_bits), c.c1.to_logsign(frac_bits)));
    return out;
  }

 private:
  ExponentMatrix a_;
  std::vector<CoefficientPair> coefficients_;
};

}  // namespace binom
