#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "binom/bigfloat.hpp"
#include "binom/bigint.hpp"
#include "binom/error.hpp"

namespace binom {

/// Exact decimal number: sign * digits * 10^exponent.
class Decimal {
 public:
  Decimal() = default;

  /// Parses [+-]digits[.digits][(e|E)[+-]digits].
  static Decimal parse(std::string_view text) {
    Decimal d;
    std::size_t i = 0;
    auto bad = [&]() { fail(Errc::InvalidInput, "malformed decimal '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    if (text[i] == '+' || text[i] == '-') {
      d.negative_ = text[i] == '-';
      ++i;
    }
    std::string digits;
    std::int64_t exponent = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c >= '0' && c <= '9') {
        digits.push_back(c);
        seen_digit = true;
        if (seen_point) --exponent;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
    }
    if (!seen_digit) bad();
    if (i < text.size()) {
      if (text[i] != 'e' && text[i] != 'E') bad();
      ++i;
      std::int64_t e = 0;
      const char* first = text.data() + i;
      const char* last = text.data() + text.size();
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, e);
      if (ec != std::errc() || ptr != last) bad();
      exponent += e;
    }
    d.digits_ = BigInt(digits.empty() ? std::string("0") : digits, 10);
    d.exponent_ = exponent;
    d.normalize();
    return d;
  }

  /// Shortest decimal that round-trips to `x`.
  static Decimal from_double(double x) {
    if (!std::isfinite(x)) fail(Errc::NonFinite, "coefficient is not finite");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
  }

  [[nodiscard]] bool is_zero() const { return sgn(digits_) == 0; }
  [[nodiscard]] int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }
  [[nodiscard]] const BigInt& digits() const noexcept { return digits_; }
  [[nodiscard]] std::int64_t exponent() const noexcept { return exponent_; }

  [[nodiscard]] Decimal negated() const {
    Decimal d = *this;
    if (!d.is_zero()) d.negative_ = !d.negative_;
    return d;
  }

  /// ln|x| as a double; meaningful even when |x| overflows a double.
  [[nodiscard]] double log_abs_approx() const {
    long e2 = 0;
    const double m = mpz_get_d_2exp(&e2, digits_.get_mpz_t());
    return std::log(m) + static_cast<double>(e2) * std::log(2.0) +
           static_cast<double>(exponent_) * std::log(10.0);
  }

  /// ln|x| evaluated with `bits` of working precision.
  [[nodiscard]] BigFloat log_abs(mpfr_prec_t bits) const {
    if (is_zero()) fail(Errc::ZeroValue, "logarithm of zero");
    BigFloat digits(digits_, bits + static_cast<mpfr_prec_t>(bit_length(digits_)));
    BigFloat out = log(digits);
    if (exponent_ != 0) {
      BigFloat e(BigInt(std::to_string(exponent_), 10), bits);
      out = out + e * BigFloat::log_of_ten(bits);
    }
    return out;
  }

  [[nodiscard]] double to_double() const {
    return std::strtod(str().c_str(), nullptr);
  }

  /// Canonical text; `parse(str())` reproduces the value exactly.
  [[nodiscard]] std::string str() const {
    std::string s = digits_.get_str(10);
    std::string out = negative_ && !is_zero() ? "-" : "";
    if (is_zero()) return "0";
    if (exponent_ >= 0 && exponent_ <= 20) {
      out += s;
      out.append(static_cast<std::size_t>(exponent_), '0');
      return out;
    }
    const auto len = static_cast<std::int64_t>(s.size());
    if (exponent_ < 0 && -exponent_ < len + 20) {
      const std::int64_t point = len + exponent_;
      if (point > 0) {
        out += s.substr(0, static_cast<std::size_t>(point));
        out += '.';
        out += s.substr(static_cast<std::size_t>(point));
      } else {
        out += "0.";
        out.append(static_cast<std::size_t>(-point), '0');
        out += s;
      }
      return out;
    }
    out += s;
    out += 'e';
    out += std::to_string(exponent_);
    return out;
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.negative_ == b.negative_ && a.digits_ == b.digits_ && a.exponent_ == b.exponent_;
  }

 private:
  void normalize() {
    if (is_zero()) {
      negative_ = false;
      exponent_ = 0;
      return;
    }
    while (mpz_divisible_ui_p(digits_.get_mpz_t(), 10)) {
      digits_ /= 10;
      ++exponent_;
    }
  }

  bool negative_ = false;
  BigInt digits_{0};
  std::int64_t exponent_ = 0;
};

}  // namespace binom
