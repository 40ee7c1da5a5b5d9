#include "symaut/numfield.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "symaut/error.hpp"

namespace symaut {

bool OrderElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return sgn(c) == 0; });
}

OrderDescriptor OrderDescriptor::make(std::vector<Integer> minpoly) {
  if (minpoly.empty() || minpoly.back() != 1)
    throw Error(ErrorCode::NotMonic, "minimal polynomial must have leading coefficient 1");
  const std::size_t d = minpoly.size() - 1;
  if (d < 2) throw Error(ErrorCode::DegreeTooSmall, "order degree must be at least 2");
  const std::size_t real_roots = count_distinct_real_roots(minpoly);
  if (real_roots < d)
    throw Error(ErrorCode::NotTotallyReal,
                "only " + std::to_string(real_roots) + " of " + std::to_string(d) + " roots are real and distinct");
  bool verified = false;
  if (d <= kMaxVerifiedIrreducibleDegree) {
    if (auto factor = find_monic_factor(minpoly)) {
      std::string text;
      for (const auto& c : *factor) text += (text.empty() ? "" : ",") + to_decimal(c);
      throw Error(ErrorCode::Reducible, "minimal polynomial has the factor [" + text + "]");
    }
    verified = true;
  }
  return OrderDescriptor(std::move(minpoly), verified);
}

bool is_squarefree(const Integer& value) {
  Integer v = abs(value);
  if (v == 0) return false;
  for (Integer p = 2; p * p <= v; ++p) {
    const Integer sq = p * p;
    if (mpz_divisible_p(v.get_mpz_t(), sq.get_mpz_t()) != 0) return false;
  }
  return true;
}

OrderDescriptor OrderDescriptor::quadratic(const Integer& D) {
  if (D < 2) throw Error(ErrorCode::InvalidArgument, "radicand must be at least 2");
  if (!is_squarefree(D)) throw Error(ErrorCode::NotSquarefree, to_decimal(D) + " is not squarefree");
  return make({Integer(-D), Integer(0), Integer(1)});
}

std::optional<Integer> OrderDescriptor::quadratic_radicand() const {
  if (degree() == 2 && sgn(minpoly_[1]) == 0) return Integer(-minpoly_[0]);
  return std::nullopt;
}

OrderElement OrderDescriptor::zero() const { return OrderElement{std::vector<Integer>(degree(), Integer(0))}; }

OrderElement OrderDescriptor::one() const { return constant(1); }

OrderElement OrderDescriptor::theta() const {
  OrderElement e = zero();
  e.coeffs[1] = 1;
  return e;
}

OrderElement OrderDescriptor::constant(const Integer& c) const {
  OrderElement e = zero();
  e.coeffs[0] = c;
  return e;
}

OrderElement OrderDescriptor::element(std::vector<Integer> coeffs) const {
  OrderElement e{std::move(coeffs)};
  check(e);
  return e;
}

void OrderDescriptor::check(const OrderElement& a) const {
  if (a.coeffs.size() != degree())
    throw Error(ErrorCode::DegreeMismatch, "element has " + std::to_string(a.coeffs.size()) +
                                               " coordinates, order has degree " + std::to_string(degree()));
}

OrderElement add(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b) {
  order.check(a);
  order.check(b);
  OrderElement out = a;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
  return out;
}

OrderElement sub(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b) {
  order.check(a);
  order.check(b);
  OrderElement out = a;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] -= b.coeffs[k];
  return out;
}

OrderElement neg(const OrderDescriptor& order, const OrderElement& a) {
  order.check(a);
  OrderElement out = a;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

OrderElement scale(const OrderDescriptor& order, const OrderElement& a, const Integer& k) {
  order.check(a);
  OrderElement out = a;
  for (auto& c : out.coeffs) c *= k;
  return out;
}

OrderElement mul(const OrderDescriptor& order, const OrderElement& a, const OrderElement& b) {
  order.check(a);
  order.check(b);
  const std::size_t d = order.degree();
  const auto& minpoly = order.minpoly();
  std::vector<Integer> prod(2 * d - 1, Integer(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  // theta^d = -(c_0 + c_1 theta + ... + c_{d-1} theta^{d-1})
  for (std::size_t k = 2 * d - 2; k >= d; --k) {
    if (sgn(prod[k]) != 0) {
      for (std::size_t t = 0; t < d; ++t) prod[k - d + t] -= prod[k] * minpoly[t];
    }
    prod.pop_back();
  }
  return OrderElement{std::move(prod)};
}

IntMatrix regular_representation(const OrderDescriptor& order, const OrderElement& a) {
  order.check(a);
  const std::size_t d = order.degree();
  IntMatrix r(d, d);
  OrderElement column = a;
  const OrderElement theta = order.theta();
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) r(i, k) = column.coeffs[i];
    if (k + 1 < d) column = mul(order, column, theta);
  }
  return r;
}

Integer norm(const OrderDescriptor& order, const OrderElement& a) {
  return determinant(regular_representation(order, a));
}

std::vector<Integer> charpoly(const OrderDescriptor& order, const OrderElement& a) {
  return characteristic_polynomial(regular_representation(order, a));
}

std::optional<OrderElement> divide_exact(const OrderDescriptor& order, const OrderElement& a,
                                         const OrderElement& b) {
  order.check(a);
  if (b.is_zero()) return std::nullopt;
  const IntMatrix r = regular_representation(order, b);
  const std::size_t d = order.degree();
  // r * x = a  <=>  x^T * r^T = a^T
  IntMatrix rt(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rt(i, j) = r(j, i);
  std::vector<Rational> x;
  if (!solve_left_rational(rt, a.coeffs, x)) return std::nullopt;
  OrderElement q = order.zero();
  for (std::size_t k = 0; k < d; ++k) {
    if (x[k].get_den() != 1) return std::nullopt;
    q.coeffs[k] = x[k].get_num();
  }
  return q;
}

std::optional<UnitCertificate> is_unit(const OrderDescriptor& order, const OrderElement& a) {
  const std::vector<Integer> p = charpoly(order, a);
  const Integer& c0 = p[0];
  if (abs(c0) != 1) return std::nullopt;
  const std::size_t d = order.degree();
  // a * (a^{d-1} + c_{d-1} a^{d-2} + ... + c_1) = -c_0
  OrderElement h = order.one();
  for (std::size_t k = d - 1; k >= 1; --k) h = add(order, mul(order, h, a), order.constant(p[k]));
  UnitCertificate cert{a, scale(order, h, Integer(-c0)), c0};
  if (!certificate_holds(order, cert)) return std::nullopt;
  return cert;
}

bool certificate_holds(const OrderDescriptor& order, const UnitCertificate& cert) {
  if (cert.element.coeffs.size() != order.degree() || cert.inverse.coeffs.size() != order.degree()) return false;
  if (abs(cert.charpoly_constant) != 1) return false;
  if (mul(order, cert.element, cert.inverse) != order.one()) return false;
  return charpoly(order, cert.element)[0] == cert.charpoly_constant;
}

OrderElement power(const OrderDescriptor& order, const OrderElement& a, std::int64_t k) {
  order.check(a);
  if (k < 0) throw Error(ErrorCode::NegativePowerOfNonUnit, "negative exponent needs a unit certificate");
  OrderElement result = order.one();
  OrderElement base = a;
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if ((e & 1U) != 0) result = mul(order, result, base);
    e >>= 1U;
    if (e != 0) base = mul(order, base, base);
  }
  return result;
}

OrderElement power(const OrderDescriptor& order, const UnitCertificate& u, std::int64_t k) {
  if (k >= 0) return power(order, u.element, k);
  return power(order, u.inverse, -k);
}

UnitCertificate power_certificate(const OrderDescriptor& order, const UnitCertificate& u, std::int64_t k) {
  UnitCertificate out;
  out.element = power(order, u, k);
  out.inverse = power(order, u, -k);
  out.charpoly_constant = charpoly(order, out.element)[0];
  return out;
}

UnitCertificate fundamental_unit_quadratic(const Integer& D) {
  const OrderDescriptor order = OrderDescriptor::quadratic(D);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), D.get_mpz_t());
  // Continued fraction of sqrt(D): a_{k+1} = floor((root + m) / q).
  Integer m = 0, q = 1, a = root;
  Integer p_prev = 1, p = a;
  Integer y_prev = 0, y = 1;
  while (true) {
    const Integer value = p * p - D * y * y;
    if (value == 1 || value == -1) break;
    m = q * a - m;
    q = (D - m * m) / q;
    a = (root + m) / q;
    Integer p_next = a * p + p_prev;
    Integer y_next = a * y + y_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    y_prev = std::move(y);
    y = std::move(y_next);
  }
  auto cert = is_unit(order, order.element({p, y}));
  if (!cert) throw Error(ErrorCode::CheckFailed, "continued fraction produced a non-unit");
  return *cert;
}

bool unit_scan_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  auto l1 = [](const std::vector<Integer>& v) {
    Integer s = 0;
    for (const auto& c : v) s += abs(c);
    return s;
  };
  auto top = [](const std::vector<Integer>& v) {
    int t = static_cast<int>(v.size()) - 1;
    while (t >= 0 && sgn(v[t]) == 0) --t;
    return t;
  };
  if (const int c = cmp(l1(a), l1(b)); c != 0) return c < 0;
  if (const int ta = top(a), tb = top(b); ta != tb) return ta < tb;
  for (std::size_t k = a.size(); k-- > 0;)
    if (const int c = cmp(abs(a[k]), abs(b[k])); c != 0) return c < 0;
  for (std::size_t k = a.size(); k-- > 0;)
    if (sgn(a[k]) != sgn(b[k])) return sgn(a[k]) > sgn(b[k]);
  return false;
}

std::optional<UnitCertificate> search_unit(const OrderDescriptor& order, std::uint32_t height_bound) {
  const std::size_t d = order.degree();
  const long bound = static_cast<long>(height_bound);
  std::vector<long> current(d, 0);
  for (long total = 1; total <= bound * static_cast<long>(d); ++total) {
    std::vector<std::vector<Integer>> shell;
    std::function<void(std::size_t, long)> fill = [&](std::size_t pos, long remaining) {
      if (pos == d) {
        if (remaining != 0) return;
        std::vector<Integer> v;
        for (long c : current) v.emplace_back(c);
        shell.push_back(std::move(v));
        return;
      }
      for (long mag = 0; mag <= std::min(bound, remaining); ++mag) {
        for (long sign : {1L, -1L}) {
          if (mag == 0 && sign < 0) continue;
          current[pos] = sign * mag;
          fill(pos + 1, remaining - mag);
        }
      }
      current[pos] = 0;
    };
    fill(0, total);
    std::sort(shell.begin(), shell.end(), unit_scan_less);
    for (auto& v : shell) {
      OrderElement e{std::move(v)};
      if (e == order.one() || e == order.constant(-1)) continue;
      if (auto cert = is_unit(order, e)) return cert;
    }
  }
  return std::nullopt;
}

Suborder Suborder::make(const OrderDescriptor& order, IntMatrix basis) {
  const std::size_t d = order.degree();
  if (basis.rows() != d || basis.cols() != d)
    throw Error(ErrorCode::InvalidSuborder, "basis must be " + std::to_string(d) + "x" + std::to_string(d));
  Integer det = determinant(basis);
  if (sgn(det) == 0) throw Error(ErrorCode::InvalidSuborder, "basis is singular");
  Suborder s(std::move(basis), abs(det));
  if (!s.coordinates(order.one())) throw Error(ErrorCode::InvalidSuborder, "1 is not in the span of the basis");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      OrderElement a = order.zero(), b = order.zero();
      for (std::size_t k = 0; k < d; ++k) {
        a.coeffs[k] = s.basis_(i, k);
        b.coeffs[k] = s.basis_(j, k);
      }
      if (!s.coordinates(mul(order, a, b)))
        throw Error(ErrorCode::InvalidSuborder, "span is not closed under multiplication");
    }
  }
  return s;
}

Suborder Suborder::full(const OrderDescriptor& order) { return make(order, IntMatrix::identity(order.degree())); }

std::optional<std::vector<Integer>> Suborder::coordinates(const OrderElement& a) const {
  if (a.coeffs.size() != basis_.rows()) throw Error(ErrorCode::DegreeMismatch, "element/suborder degree mismatch");
  std::vector<Rational> x;
  if (!solve_left_rational(basis_, a.coeffs, x)) return std::nullopt;
  std::vector<Integer> out;
  out.reserve(x.size());
  for (const auto& v : x) {
    if (v.get_den() != 1) return std::nullopt;
    out.push_back(v.get_num());
  }
  return out;
}

bool suborder_contains(const Suborder& s, const OrderElement& a) { return s.coordinates(a).has_value(); }

std::optional<std::pair<std::int64_t, OrderElement>> power_into_suborder(const OrderDescriptor& order,
                                                                         const UnitCertificate& u,
                                                                         const Suborder& s,
                                                                         std::int64_t max_exp) {
  OrderElement current = u.element;
  for (std::int64_t k = 1; k <= max_exp; ++k) {
    if (suborder_contains(s, current)) return std::make_pair(k, current);
    current = mul(order, current, u.element);
  }
  return std::nullopt;
}

}  // namespace symaut
