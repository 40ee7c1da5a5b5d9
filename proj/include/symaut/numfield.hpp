#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symaut/integer.hpp"
#include "symaut/polynomial.hpp"

namespace symaut {

/// Element of Z[theta] in the power basis 1, theta, ..., theta^(d-1).
struct OrderElement {
  std::vector<Integer> coeffs;

  bool is_zero() const;
  friend bool operator==(const OrderElement&, const OrderElement&) = default;
};

/// The order Z[theta] cut out by a monic, totally real, irreducible minimal
/// polynomial. Immutable once constructed through make().
class OrderDescriptor {
 public:
  /// Validates monicity, degree >= 2, total reality (Sturm), and irreducibility
  /// (Kronecker, degree <= 6 only; larger degrees are accepted with
  /// irreducibility_verified() == false).
  static OrderDescriptor make(std::vector<Integer> minpoly);

  /// Z[sqrt(D)] for squarefree D >= 2.
  static OrderDescriptor quadratic(const Integer& D);

  static constexpr int kMaxVerifiedIrreducibleDegree = 6;

  std::size_t degree() const noexcept { return minpoly_.size() - 1; }
  const std::vector<Integer>& minpoly() const noexcept { return minpoly_; }
  bool irreducibility_verified() const noexcept { return irreducibility_verified_; }

  /// D when the minimal polynomial is x^2 - D.
  std::optional<Integer> quadratic_radicand() const;

  OrderElement zero() const;
  OrderElement one() const;
  OrderElement theta() const;
  OrderElement constant(const Integer& c) const;
  /// Length-checked construction.
  OrderElement element(std::vector<Integer> coeffs) const;
  void check(const OrderElement& a) const;

  friend bool operator==(const OrderDescriptor& l, const OrderDescriptor& r) { return l.minpoly_ == r.minpoly_; }

 private:
  OrderDescriptor(std::vector<Integer> minpoly, bool verified)
      : minpoly_(std::move(minpoly)), irreducibility_verified_(verified) {}

  std::vector<Integer> minpoly_;
  bool irreducibility_verified_ = false;
};

OrderElement add(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b);
OrderElement sub(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b);
OrderElement neg(const OrderDescriptor& order, const OrderElement& a);
OrderElement scale(const OrderDescriptor& order, const OrderElement& a, const Integer& k);
OrderElement mul(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b);

/// Matrix of x -> a*x; column k holds the coordinates of a*theta^k.
IntMatrix regular_representation(const OrderDescriptor& order, const OrderElement& a);
Integer norm(const OrderDescriptor& order, const OrderElement& a);
std::vector<Integer> charpoly(const OrderDescriptor& order, const OrderElement& a);

/// Exact quotient a / b in the order, when it exists.
std::optional<OrderElement> divide_exact(const OrderDescriptor& order, const OrderElement& a,
                                         const OrderElement& b);

struct UnitCertificate {
  OrderElement element;
  OrderElement inverse;
  Integer charpoly_constant;

  friend bool operator==(const UnitCertificate&, const UnitCertificate&) = default;
};

std::optional<UnitCertificate> is_unit(const OrderDescriptor& order, const OrderElement& a);

/// Checks element * inverse == 1 and the stored charpoly constant.
bool certificate_holds(const OrderDescriptor& order, const UnitCertificate& cert);

OrderElement power(const OrderDescriptor& order, const OrderElement& a, std::int64_t k);
OrderElement power(const OrderDescriptor& order, const UnitCertificate& u, std::int64_t k);
UnitCertificate power_certificate(const OrderDescriptor& order, const UnitCertificate& u, std::int64_t k);

bool is_squarefree(const Integer& value);

/// Smallest-y solution of x^2 - D y^2 = +-1 from the continued fraction of
/// sqrt(D); the unit x + y sqrt(D) of Z[sqrt(D)].
UnitCertificate fundamental_unit_quadratic(const Integer& D);

/// First unit other than +-1 among coefficient vectors with max |c| <= bound,
/// scanned in unit_scan_order.
std::optional<UnitCertificate> search_unit(const OrderDescriptor& order, std::uint32_t height_bound);

/// Scan order used by search_unit: ascending L1 norm, then position of the
/// highest nonzero coordinate, then magnitudes compared from the top
/// coordinate down, then signs from the top down with + before -.
bool unit_scan_less(const std::vector<Integer>& a, const std::vector<Integer>& b);

/// Finite-index subring of Z[theta], rows of the basis are power-basis coordinates.
class Suborder {
 public:
  static Suborder make(const OrderDescriptor& order, IntMatrix basis);
  static Suborder full(const OrderDescriptor& order);

  const IntMatrix& basis() const noexcept { return basis_; }
  const Integer& index() const noexcept { return index_; }

  /// Integer coordinates of a against the basis rows, if a lies in the span.
  std::optional<std::vector<Integer>> coordinates(const OrderElement& a) const;

 private:
  Suborder(IntMatrix basis, Integer index) : basis_(std::move(basis)), index_(std::move(index)) {}

  IntMatrix basis_;
  Integer index_;
};

bool suborder_contains(const Suborder& s, const OrderElement& a);

std::optional<std::pair<std::int64_t, OrderElement>> power_into_suborder(const OrderDescriptor& order,
                                                                         const UnitCertificate& u,
                                                                         const Suborder& s,
                                                                         std::int64_t max_exp);

}  // namespace symaut
