#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "binom/bigint.hpp"
#include "binom/error.hpp"
#include "binom/matrix.hpp"
#include "binom/op_counter.hpp"

namespace binom {

/// U*A*V = diag(S) with U, V unimodular and S a divisibility chain.
struct SmithFactorization {
  IntMatrix U;
  IntMatrix V;
  std::vector<BigInt> S;

  [[nodiscard]] std::size_t size() const noexcept { return S.size(); }

  [[nodiscard]] BigInt max_invariant() const {
    BigInt best(0);
    for (const auto& s : S)
      if (s > best) best = s;
    return best;
  }

  friend bool operator==(const SmithFactorization&, const SmithFactorization&) = default;
};

namespace detail {

// Working state of the elimination. Row ops hit (work, U); column ops hit
// (work, V). The tally feeds OpCounter::snf_bitop_proxy.
class SmithEliminator {
 public:
  SmithEliminator(const IntMatrix& a, OpCounter* counter)
      : n_(a.rows()), work_(a), u_(IntMatrix::identity(n_)),
        v_(IntMatrix::identity(n_)), counter_(counter) {}

  SmithFactorization run() {
    for (std::size_t k = 0; k < n_; ++k) reduce_block(k);
    flush();
    SmithFactorization f{std::move(u_), std::move(v_), {}};
    f.S.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) f.S.push_back(work_(i, i));
    return f;
  }

 private:
  // Brings the trailing block k.. into the form diag(s, *) with s dividing
  // every remaining entry.
  void reduce_block(std::size_t k) {
    for (;;) {
      auto pivot = smallest_nonzero(k);
      if (!pivot) fail(Errc::SingularMatrix, "exponent matrix has zero determinant");
      row_swap(k, pivot->first);
      col_swap(k, pivot->second);

      bool clean = true;
      for (std::size_t i = k + 1; i < n_; ++i) {
        if (sgn(work_(i, k)) == 0) continue;
        BigInt q = nearest_quotient(work_(i, k), work_(k, k));
        row_axpy(i, k, q);
        if (sgn(work_(i, k)) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n_; ++j) {
        if (sgn(work_(k, j)) == 0) continue;
        BigInt q = nearest_quotient(work_(k, j), work_(k, k));
        col_axpy(j, k, q);
        if (sgn(work_(k, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column k are clear; enforce divisibility of the block.
      if (auto bad = non_multiple(k)) {
        row_add(k, *bad);
        continue;
      }
      if (sgn(work_(k, k)) < 0) row_negate(k);
      return;
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> smallest_nonzero(std::size_t k) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t i = k; i < n_; ++i)
      for (std::size_t j = k; j < n_; ++j) {
        const BigInt& v = work_(i, j);
        if (sgn(v) == 0) continue;
        if (!best || mpz_cmpabs(v.get_mpz_t(), best_abs.get_mpz_t()) < 0) {
          best = {i, j};
          best_abs = abs(v);
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  std::optional<std::size_t> non_multiple(std::size_t k) const {
    const BigInt& pivot = work_(k, k);
    if (pivot == 1 || pivot == -1) return std::nullopt;
    for (std::size_t i = k + 1; i < n_; ++i)
      for (std::size_t j = k + 1; j < n_; ++j)
        if (!mpz_divisible_p(work_(i, j).get_mpz_t(), pivot.get_mpz_t())) return i;
    return std::nullopt;
  }

  void row_swap(std::size_t a, std::size_t b) {
    work_.swap_rows(a, b);
    u_.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    work_.swap_cols(a, b);
    v_.swap_cols(a, b);
  }

  // row_i -= q * row_k
  void row_axpy(std::size_t i, std::size_t k, const BigInt& q) {
    for (std::size_t j = k; j < n_; ++j) submul(work_(i, j), q, work_(k, j));
    for (std::size_t j = 0; j < n_; ++j) submul(u_(i, j), q, u_(k, j));
  }
  // col_j -= q * col_k
  void col_axpy(std::size_t j, std::size_t k, const BigInt& q) {
    for (std::size_t i = k; i < n_; ++i) submul(work_(i, j), q, work_(i, k));
    for (std::size_t i = 0; i < n_; ++i) submul(v_(i, j), q, v_(i, k));
  }
  // row_k += row_i
  void row_add(std::size_t k, std::size_t i) {
    for (std::size_t j = k; j < n_; ++j) work_(k, j) += work_(i, j);
    for (std::size_t j = 0; j < n_; ++j) u_(k, j) += u_(i, j);
    tally_ += 2 * n_;
  }
  void row_negate(std::size_t k) {
    for (std::size_t j = 0; j < n_; ++j) {
      work_(k, j) = -work_(k, j);
      u_(k, j) = -u_(k, j);
    }
  }

  void submul(BigInt& target, const BigInt& q, const BigInt& x) {
    if (sgn(x) == 0) return;
    tally_ += limbs(q) * limbs(x) + limbs(target);
    mpz_submul(target.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
  }

  void flush() {
    if (counter_ != nullptr) counter_->snf_bitop_proxy += tally_;
    tally_ = 0;
  }

  std::size_t n_;
  IntMatrix work_;
  IntMatrix u_;
  IntMatrix v_;
  OpCounter* counter_;
  std::uint64_t tally_ = 0;
};

}  // namespace detail

/// Smith normal form of a nonsingular square matrix with unimodular
/// multipliers. Pivots on the smallest nonzero entry of the trailing block and
/// reduces with nearest-integer quotients.
inline SmithFactorization smith_normal_form(const IntMatrix& a, OpCounter* counter = nullptr) {
  if (!a.square() || a.rows() == 0) fail(Errc::InvalidInput, "SNF needs a nonempty square matrix");
  return detail::SmithEliminator(a, counter).run();
}

/// Exact check of every SmithFactorization invariant against `a`.
inline bool verify_factorization(const IntMatrix& a, const SmithFactorization& f) {
  const std::size_t n = a.rows();
  if (!a.square() || f.U.rows() != n || f.U.cols() != n || f.V.rows() != n ||
      f.V.cols() != n || f.S.size() != n)
    return false;
  const BigInt du = determinant(f.U), dv = determinant(f.V);
  if (abs(du) != 1 || abs(dv) != 1) return false;
  const IntMatrix prod = f.U * a * f.V;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (prod(i, j) != (i == j ? f.S[i] : BigInt(0))) return false;
  BigInt product(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.S[i] < 1) return false;
    if (i + 1 < n && !mpz_divisible_p(f.S[i + 1].get_mpz_t(), f.S[i].get_mpz_t())) return false;
    product *= f.S[i];
  }
  return product == abs(determinant(a));
}

}  // namespace binom
