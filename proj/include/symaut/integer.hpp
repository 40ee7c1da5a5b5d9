#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace symaut {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
std::string to_decimal(const Integer& value);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// Fraction-free Gaussian elimination; every intermediate division is exact.
Integer determinant(const IntMatrix& m);

/// Characteristic polynomial det(xI - m), constant term first, monic.
/// Faddeev-LeVerrier: the divisions by k are exact over the integers.
std::vector<Integer> characteristic_polynomial(const IntMatrix& m);

/// Solves x * m = target for a row vector x over the rationals.
/// Returns false when m is singular or the system has no solution.
bool solve_left_rational(const IntMatrix& m, const std::vector<Integer>& target,
                         std::vector<Rational>& solution);

}  // namespace symaut
