#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symaut/matforms.hpp"
#include "symaut/numfield.hpp"

namespace symaut {

/// A nonnatural automorphism F = P_sigma * circulant(f, g, n) of X^n together
/// with everything needed to re-check it.
struct AutomorphismCertificate {
  OrderDescriptor order;
  std::size_t n;
  UnitCertificate alpha;
  std::int64_t i;
  std::int64_t j;
  OrderElement f;
  OrderElement g;
  Permutation sigma;
  OrderMatrix matrix;
  OrderElement det_value;
  OrderElement det_inverse;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> unverified_assumptions;
  std::optional<Suborder> suborder;
};

/// Least (i, j), 1 <= j < i, with alpha^i and alpha^j congruent mod n
/// coordinatewise. Coordinates are taken in the suborder basis when one is given.
std::pair<std::int64_t, std::int64_t> pigeonhole_exponents(const OrderDescriptor& order,
                                                           const UnitCertificate& alpha, std::size_t n,
                                                           const Suborder* suborder = nullptr);

/// f = (alpha^i + (n-1) alpha^j) / n and g = (alpha^i - alpha^j) / n, exact.
std::pair<OrderElement, OrderElement> build_fg(const OrderDescriptor& order, const UnitCertificate& alpha,
                                               std::int64_t i, std::int64_t j, std::size_t n);

struct ForgeOptions {
  std::optional<OrderElement> unit;
  std::uint32_t height_bound = 4;
  std::optional<Permutation> sigma;
  std::optional<Suborder> suborder;
  std::int64_t max_exp = 10000;
};

AutomorphismCertificate forge(const OrderDescriptor& order, std::size_t n, const ForgeOptions& options = {});

/// f = (u^i + ubar^i) / 2, g = (u^i - ubar^i) / 2 in Z[sqrt(D)], u the
/// fundamental unit and ubar its conjugate.
std::pair<OrderElement, OrderElement> quad_conjugate_construction(const Integer& D, std::int64_t i);

struct VerificationReport {
  std::vector<std::pair<std::string, bool>> items;

  bool passed() const;
  std::optional<std::string> first_failure() const;
  bool value(const std::string& name) const;
};

/// Recomputes every claim of the certificate from its (order, n, alpha, i, j,
/// f, g, sigma) fields and compares against the stored matrix and determinant.
VerificationReport verify_certificate(const AutomorphismCertificate& cert);

}  // namespace symaut
