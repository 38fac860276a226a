#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "binom/bigfloat.hpp"
#include "binom/bigint.hpp"
#include "binom/decimal.hpp"
#include "binom/error.hpp"

namespace binom {

/// Nonzero real stored as a sign and ln|value|.
///
/// ln|value| is held in fixed point: an integer `scaled` with
/// ln|value| = scaled / 2^frac_bits. Products, quotients and integer powers
/// are therefore exact; only roots and conversions round (to nearest).
/// Binary operations promote to the larger precision of their operands.
class LogSign {
 public:
  /// Largest |ln x| for which x is a finite normal double.
  static constexpr double kNativeLogLimit = 708.0;

  LogSign() = default;
  LogSign(int sign, BigInt scaled, unsigned frac_bits)
      : sign_(sign < 0 ? -1 : 1), scaled_(std::move(scaled)), frac_bits_(frac_bits) {}

  static LogSign one(unsigned frac_bits) { return {1, BigInt(0), frac_bits}; }

  static LogSign from_real(double v, unsigned frac_bits) {
    if (v == 0.0) fail(Errc::ZeroValue, "zero has no log-sign form");
    if (!std::isfinite(v)) fail(Errc::NonFinite, "value is not finite");
    BigFloat l = log(BigFloat(std::fabs(v), working_bits(frac_bits, 11)));
    return {v < 0 ? -1 : 1, l.scaled_round(static_cast<long>(frac_bits)), frac_bits};
  }

  static LogSign from_decimal(const Decimal& d, unsigned frac_bits) {
    if (d.is_zero()) fail(Errc::ZeroValue, "zero has no log-sign form");
    const double approx = std::fabs(d.log_abs_approx()) + 2.0;
    const auto int_bits = static_cast<unsigned>(std::ceil(std::log2(approx))) + 1;
    BigFloat l = d.log_abs(working_bits(frac_bits, int_bits));
    return {d.sign(), l.scaled_round(static_cast<long>(frac_bits)), frac_bits};
  }

  /// Rounds an arbitrary-precision logarithm onto the fixed-point grid.
  static LogSign from_log(int sign, const BigFloat& logabs, unsigned frac_bits) {
    return {sign, logabs.scaled_round(static_cast<long>(frac_bits)), frac_bits};
  }

  /// Parses the decimal `log_abs` text used in JSON output.
  static LogSign from_log_decimal(int sign, std::string_view text, unsigned frac_bits) {
    const Decimal d = Decimal::parse(text);
    // round(digits * 10^e * 2^f) in exact integer arithmetic
    BigInt num = d.digits();
    BigInt den(1);
    BigInt ten(10);
    BigInt pow10;
    mpz_pow_ui(pow10.get_mpz_t(), ten.get_mpz_t(),
               static_cast<unsigned long>(d.exponent() < 0 ? -d.exponent() : d.exponent()));
    if (d.exponent() >= 0) num *= pow10; else den = pow10;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), frac_bits);
    BigInt q = nearest_quotient(num, den);
    if (d.sign() < 0) q = -q;
    return {sign, std::move(q), frac_bits};
  }

  /// Fraction bits implied by a decimal string with `digits` places.
  static unsigned bits_for_decimal_places(std::size_t digits) {
    return static_cast<unsigned>(std::ceil(static_cast<double>(digits) * 3.321928094887362));
  }

  [[nodiscard]] int sign() const noexcept { return sign_; }
  [[nodiscard]] const BigInt& scaled() const noexcept { return scaled_; }
  [[nodiscard]] unsigned precision() const noexcept { return frac_bits_; }

  [[nodiscard]] double logabs() const {
    long e2 = 0;
    const double m = mpz_get_d_2exp(&e2, scaled_.get_mpz_t());
    return std::ldexp(m, static_cast<int>(e2 - static_cast<long>(frac_bits_)));
  }

  /// ln|value| as a BigFloat; exact when `bits` covers the fixed-point word.
  [[nodiscard]] BigFloat logabs_big(mpfr_prec_t bits) const {
    return BigFloat::from_scaled(scaled_, static_cast<long>(frac_bits_), bits);
  }

  [[nodiscard]] mpfr_prec_t exact_bits() const {
    return static_cast<mpfr_prec_t>(std::max<std::size_t>(bit_length(scaled_), 2));
  }

  [[nodiscard]] bool fits_native() const { return std::fabs(logabs()) <= kNativeLogLimit; }

  /// Value as a double (overflows to +-inf or underflows to 0 out of range).
  [[nodiscard]] double to_real() const {
    // beyond this every double conversion saturates; inside it MPFR rounds
    // into the subnormal range or to infinity itself
    if (std::fabs(logabs()) > 760.0) {
      return sgn(scaled_) > 0 ? sign_ * std::numeric_limits<double>::infinity() : sign_ * 0.0;
    }
    return sign_ * exp(logabs_big(exact_bits() + 64)).to_double();
  }

  /// Decimal text for ln|value| that parses back to the same fixed-point word.
  [[nodiscard]] std::string logabs_decimal() const {
    const std::size_t places =
        static_cast<std::size_t>(std::ceil(static_cast<double>(frac_bits_) * 0.30102999566398120)) + 1;
    BigInt pow10;
    BigInt ten(10);
    mpz_pow_ui(pow10.get_mpz_t(), ten.get_mpz_t(), places);
    BigInt num = scaled_ * pow10;
    BigInt den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), frac_bits_);
    BigInt q = nearest_quotient(num, den);
    const bool neg = sgn(q) < 0;
    std::string digits = BigInt(abs(q)).get_str(10);
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    return neg ? "-" + digits : digits;
  }

  /// Same value re-expressed with `frac_bits` fraction bits.
  [[nodiscard]] LogSign at_precision(unsigned frac_bits) const {
    if (frac_bits == frac_bits_) return *this;
    BigInt s = scaled_;
    if (frac_bits > frac_bits_) {
      mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), frac_bits - frac_bits_);
    } else {
      BigInt den(1);
      mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), frac_bits_ - frac_bits);
      s = nearest_quotient(s, den);
    }
    return {sign_, std::move(s), frac_bits};
  }

  [[nodiscard]] LogSign operator-() const { return {-sign_, scaled_, frac_bits_}; }

  friend bool operator==(const LogSign& a, const LogSign& b) {
    const unsigned f = std::max(a.frac_bits_, b.frac_bits_);
    return a.sign_ == b.sign_ && a.at_precision(f).scaled_ == b.at_precision(f).scaled_;
  }

  /// |ln|a| - ln|b|| in natural-log units.
  friend double log_distance(const LogSign& a, const LogSign& b) {
    const unsigned f = std::max(a.frac_bits_, b.frac_bits_);
    LogSign d(1, a.at_precision(f).scaled_ - b.at_precision(f).scaled_, f);
    return std::fabs(d.logabs());
  }

 private:
  static mpfr_prec_t working_bits(unsigned frac_bits, unsigned int_bits) {
    return static_cast<mpfr_prec_t>(frac_bits + int_bits + 32);
  }

  int sign_ = 1;
  BigInt scaled_{0};
  unsigned frac_bits_ = 0;
};

inline LogSign mul(const LogSign& a, const LogSign& b) {
  const unsigned f = std::max(a.precision(), b.precision());
  return {a.sign() * b.sign(), a.at_precision(f).scaled() + b.at_precision(f).scaled(), f};
}

inline LogSign div(const LogSign& a, const LogSign& b) {
  const unsigned f = std::max(a.precision(), b.precision());
  return {a.sign() * b.sign(), a.at_precision(f).scaled() - b.at_precision(f).scaled(), f};
}

inline LogSign pow_int(const LogSign& a, const BigInt& k) {
  const int sign = (a.sign() < 0 && is_odd(k)) ? -1 : 1;
  return {sign, a.scaled() * k, a.precision()};
}

/// Real s-th root: the positive root for even s, the unique real root for odd s.
inline LogSign root_positive(const LogSign& a, const BigInt& s) {
  if (s < 1) fail(Errc::InvalidInput, "root index must be positive");
  const bool odd = is_odd(s);
  if (!odd && a.sign() < 0) fail(Errc::NegativeEvenRoot, "even root of a negative value");
  return {odd ? a.sign() : 1, nearest_quotient(a.scaled(), s), a.precision()};
}

}  // namespace binom
