#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symaut/numfield.hpp"

namespace symaut {

/// Permutation of {0..n-1} stored as its one-line image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);
  static Permutation from_one_based(const std::vector<long>& images);
  /// All permutations of n points in lexicographic order, identity first.
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  std::vector<long> one_based() const;

  int sign() const;
  bool is_identity() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// n x n matrix over a shared order, models an endomorphism of X^n.
class OrderMatrix {
 public:
  OrderMatrix(OrderDescriptor order, std::size_t n);
  OrderMatrix(OrderDescriptor order, std::vector<std::vector<OrderElement>> rows);

  static OrderMatrix identity(const OrderDescriptor& order, std::size_t n);
  static OrderMatrix diagonal(const OrderDescriptor& order, const std::vector<OrderElement>& entries);
  /// P with P(sigma(i), i) = 1, so (P * M) moves row i of M to row sigma(i).
  static OrderMatrix permutation(const OrderDescriptor& order, const Permutation& sigma);

  const OrderDescriptor& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return n_; }

  OrderElement& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const OrderElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  OrderMatrix minor(std::size_t skip_row, std::size_t skip_col) const;

  friend bool operator==(const OrderMatrix&, const OrderMatrix&) = default;

 private:
  OrderDescriptor order_;
  std::size_t n_;
  std::vector<OrderElement> entries_;
};

struct SymmetricForm {
  Permutation sigma;
  OrderElement f;
  OrderElement g;

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;
};

OrderMatrix circulant(const OrderDescriptor& order, const OrderElement& f, const OrderElement& g, std::size_t n);
OrderMatrix apply_perm(const Permutation& sigma, const OrderMatrix& m);
OrderMatrix mat_mul(const OrderMatrix& a, const OrderMatrix& b);

/// Cofactor expansion up to kCofactorLimit, fraction-free elimination above.
OrderElement det(const OrderMatrix& m);
OrderElement det_cofactor(const OrderMatrix& m);
OrderElement det_bareiss(const OrderMatrix& m);
inline constexpr std::size_t kCofactorLimit = 6;

/// (f - g)^(n-1) * (f + (n-1) g)
OrderElement det_closed_form(const OrderDescriptor& order, const OrderElement& f, const OrderElement& g,
                             std::size_t n);

/// Adjugate times det^-1 when det is a unit; checked on both sides.
std::optional<OrderMatrix> invert(const OrderMatrix& m);

/// Decomposes m = P_sigma * circulant(f, g, n) with f != g. For n == 2 the
/// decomposition is not unique; the returned form always has sigma = identity
/// and f = m(0, 0).
std::optional<SymmetricForm> recognize_symmetric_form(const OrderMatrix& m);

struct NaturalForm {
  Permutation sigma;
  OrderElement h;
};

/// m = P_sigma * diag(h, ..., h) for some sigma and a single h.
std::optional<NaturalForm> natural_decomposition(const OrderMatrix& m);
bool is_natural_form(const OrderMatrix& m);

}  // namespace symaut
