#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "binom/bigint.hpp"
#include "binom/error.hpp"

namespace binom {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<long>> init)
      : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(Errc::InvalidInput, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  [[nodiscard]] std::span<T> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  [[nodiscard]] std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(Errc::InvalidInput, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

template <typename T>
T max_abs_entry(const Matrix<T>& m) {
  T best(0);
  for (const T& v : m.data()) {
    T a = v < 0 ? T(-v) : v;
    if (a > best) best = a;
  }
  return best;
}

/// Exact determinant by Bareiss fraction-free elimination.
template <typename T>
T determinant(const Matrix<T>& input) {
  if (!input.square()) fail(Errc::InvalidInput, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return T(1);
  Matrix<T> m = input;
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return T(0);
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = v / prev;  // exact by Sylvester's identity
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? T(-det) : det;
}

/// Inverse of a unimodular integer matrix via extended-gcd row reduction.
/// Throws InvalidInput if the matrix is not unimodular.
inline IntMatrix unimodular_inverse(const IntMatrix& input) {
  if (!input.square()) fail(Errc::InvalidInput, "inverse of a non-square matrix");
  const std::size_t n = input.rows();
  IntMatrix m = input;
  IntMatrix inv = IntMatrix::identity(n);
  auto combine = [&](IntMatrix& x, std::size_t r1, std::size_t r2, const BigInt& a,
                     const BigInt& b, const BigInt& c, const BigInt& d) {
    // (r1, r2) <- (a*r1 + b*r2, c*r1 + d*r2)
    for (std::size_t j = 0; j < n; ++j) {
      BigInt u = a * x(r1, j) + b * x(r2, j);
      BigInt v = c * x(r1, j) + d * x(r2, j);
      x(r1, j) = std::move(u);
      x(r2, j) = std::move(v);
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m(k, k).get_mpz_t(),
                 m(i, k).get_mpz_t());
      BigInt p = m(k, k) / g, q = m(i, k) / g;
      // [[s, t], [-q, p]] has determinant s*p + t*q = 1
      BigInt nq = -q;
      combine(m, k, i, s, t, nq, p);
      combine(inv, k, i, s, t, nq, p);
    }
    if (m(k, k) != 1 && m(k, k) != -1) fail(Errc::InvalidInput, "matrix is not unimodular");
    if (m(k, k) == -1) {
      for (std::size_t j = 0; j < n; ++j) {
        m(k, j) = -m(k, j);
        inv(k, j) = -inv(k, j);
      }
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t i = 0; i < k; ++i) {
      if (m(i, k) == 0) continue;
      BigInt f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace binom
