#pragma once

#include <cstddef>
#include <utility>

#include "binom/bigint.hpp"
#include "binom/error.hpp"
#include "binom/matrix.hpp"

namespace binom {

/// Square integer matrix whose column i is the exponent vector of equation i.
/// Construction rejects singular input.
class ExponentMatrix {
 public:
  explicit ExponentMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    if (!entries_.square() || entries_.rows() == 0)
      fail(Errc::InvalidInput, "exponent matrix must be square and nonempty");
    determinant_ = determinant(entries_);
    if (sgn(determinant_) == 0) fail(Errc::SingularMatrix, "exponent matrix has zero determinant");
    max_abs_entry_ = binom::max_abs_entry(entries_);
  }

  [[nodiscard]] std::size_t n() const noexcept { return entries_.rows(); }
  [[nodiscard]] const IntMatrix& entries() const noexcept { return entries_; }
  [[nodiscard]] const BigInt& operator()(std::size_t i, std::size_t j) const {
    return entries_(i, j);
  }
  [[nodiscard]] const BigInt& det() const noexcept { return determinant_; }
  [[nodiscard]] const BigInt& max_abs_entry() const noexcept { return max_abs_entry_; }

 private:
  IntMatrix entries_;
  BigInt determinant_;
  BigInt max_abs_entry_;
};

}  // namespace binom
