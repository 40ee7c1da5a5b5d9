#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symaut/integer.hpp"

namespace symaut {

/// Integer polynomial, constant coefficient first. Trailing zeros are trimmed
/// by every routine that returns one.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

int degree(const IntPoly& p);
void trim(IntPoly& p);
Integer evaluate(const IntPoly& p, const Integer& x);

/// Number of distinct real roots, from the Sturm sequence evaluated at -inf and +inf.
std::size_t count_distinct_real_roots(const IntPoly& p);

/// Quotient of p by a monic divisor when the division is exact over Z.
std::optional<IntPoly> divide_exact_by_monic(const IntPoly& p, const IntPoly& divisor);

/// Kronecker's method: returns a monic factor of degree 1..deg(p)/2 of the monic
/// polynomial p, or nothing when p is irreducible over Q.
std::optional<IntPoly> find_monic_factor(const IntPoly& p);

}  // namespace symaut
