#pragma once

#include <mpfr.h>

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "binom/bigint.hpp"

namespace binom {

/// Owning handle to an mpfr_t with an explicit precision in bits.
/// Results take the precision of the left operand; rounding is to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, clamp(bits)); }
  BigFloat(double x, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const BigInt& x, mpfr_prec_t bits) : BigFloat(bits) {
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  /// Copy rounded (or padded) to `bits`.
  [[nodiscard]] BigFloat with_precision(mpfr_prec_t bits) const {
    BigFloat r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  [[nodiscard]] mpfr_ptr raw() { return v_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }

  /// Nearest integer to this value times 2^shift.
  [[nodiscard]] BigInt scaled_round(long shift) const {
    BigFloat t(*this);
    mpfr_mul_2si(t.v_, t.v_, shift, MPFR_RNDN);
    mpfr_rint(t.v_, t.v_, MPFR_RNDN);
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), t.v_, MPFR_RNDN);
    return out;
  }

  static BigFloat from_scaled(const BigInt& mantissa, long shift_down, mpfr_prec_t bits) {
    BigFloat out(mantissa, bits);
    mpfr_div_2si(out.v_, out.v_, shift_down, MPFR_RNDN);
    return out;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.precision());
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.precision());
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.precision());
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.precision());
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat exp(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat expm1(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_expm1(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow(const BigFloat& a, const BigInt& k) {
    BigFloat r(a.precision());
    mpfr_pow_z(r.v_, a.v_, k.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  /// log2 |a| as a double; -inf for zero.
  [[nodiscard]] double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double m = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(exp2);
  }

  static BigFloat log_of_ten(mpfr_prec_t bits) {
    BigFloat ten(10.0, bits);
    return log(ten);
  }

 private:
  static mpfr_prec_t clamp(mpfr_prec_t bits) { return bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits; }
  mpfr_t v_;
};

}  // namespace binom
