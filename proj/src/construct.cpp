#include "symaut/construct.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "symaut/error.hpp"

namespace symaut {

namespace {

std::vector<Integer> coordinates_or_throw(const OrderElement& a, const Suborder* suborder) {
  if (suborder == nullptr) return a.coeffs;
  auto coords = suborder->coordinates(a);
  if (!coords) throw Error(ErrorCode::InvalidArgument, "power of alpha left the suborder");
  return *coords;
}

std::string residue_key(const std::vector<Integer>& coords, const Integer& modulus) {
  std::string key;
  Integer r;
  for (const auto& c : coords) {
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    key += r.get_str(10);
    key += ',';
  }
  return key;
}

bool congruent(const std::vector<Integer>& a, const std::vector<Integer>& b, const Integer& modulus) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Integer diff = a[k] - b[k];
    if (mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) == 0) return false;
  }
  return true;
}

Integer pigeonhole_cap(std::size_t n, std::size_t d) {
  Integer cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), n, d);
  return cap + 1;
}

bool is_plus_minus_one(const OrderDescriptor& order, const OrderElement& a) {
  return a == order.one() || a == order.constant(-1);
}

}  // namespace

std::pair<std::int64_t, std::int64_t> pigeonhole_exponents(const OrderDescriptor& order,
                                                           const UnitCertificate& alpha, std::size_t n,
                                                           const Suborder* suborder) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  if (!certificate_holds(order, alpha) || is_plus_minus_one(order, alpha.element))
    throw Error(ErrorCode::InvalidArgument, "alpha must be a certified unit other than +-1");
  const Integer modulus(static_cast<unsigned long>(n));
  const Integer cap = pigeonhole_cap(n, order.degree());
  std::unordered_map<std::string, std::int64_t> first_seen;
  OrderElement current = alpha.element;
  for (std::int64_t i = 1;; ++i) {
    if (Integer(static_cast<long>(i)) > cap)
      throw Error(ErrorCode::CheckFailed, "pigeonhole search exceeded n^d + 1 powers");
    auto [it, inserted] = first_seen.emplace(residue_key(coordinates_or_throw(current, suborder), modulus), i);
    if (!inserted) return {i, it->second};
    current = mul(order, current, alpha.element);
  }
}

std::pair<OrderElement, OrderElement> build_fg(const OrderDescriptor& order, const UnitCertificate& alpha,
                                               std::int64_t i, std::int64_t j, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  if (!(i > j && j >= 1)) throw Error(ErrorCode::InvalidArgument, "exponents must satisfy i > j >= 1");
  const OrderElement ai = power(order, alpha, i);
  const OrderElement aj = power(order, alpha, j);
  const Integer nn(static_cast<unsigned long>(n));
  const OrderElement f_num = add(order, ai, scale(order, aj, nn - 1));
  const OrderElement g_num = sub(order, ai, aj);
  OrderElement f = order.zero(), g = order.zero();
  for (std::size_t k = 0; k < order.degree(); ++k) {
    if (mpz_divisible_p(f_num.coeffs[k].get_mpz_t(), nn.get_mpz_t()) == 0 ||
        mpz_divisible_p(g_num.coeffs[k].get_mpz_t(), nn.get_mpz_t()) == 0)
      throw Error(ErrorCode::InexactDivision, "alpha^i and alpha^j are not congruent mod n at coordinate " +
                                                  std::to_string(k));
    mpz_divexact(f.coeffs[k].get_mpz_t(), f_num.coeffs[k].get_mpz_t(), nn.get_mpz_t());
    mpz_divexact(g.coeffs[k].get_mpz_t(), g_num.coeffs[k].get_mpz_t(), nn.get_mpz_t());
  }
  if (g.is_zero()) throw Error(ErrorCode::ZeroG, "alpha^i == alpha^j, alpha has finite order");
  if (sub(order, f, g) != aj || add(order, f, scale(order, g, nn - 1)) != ai)
    throw Error(ErrorCode::CheckFailed, "f, g do not reproduce alpha^j and alpha^i");
  return {f, g};
}

AutomorphismCertificate forge(const OrderDescriptor& order, std::size_t n, const ForgeOptions& options) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");

  UnitCertificate alpha;
  if (options.unit) {
    auto cert = is_unit(order, order.element(options.unit->coeffs));
    if (!cert) throw Error(ErrorCode::InvalidArgument, "supplied unit has norm other than +-1");
    alpha = *cert;
  } else if (auto D = order.quadratic_radicand(); D && is_squarefree(*D)) {
    alpha = fundamental_unit_quadratic(*D);
  } else {
    auto cert = search_unit(order, options.height_bound);
    if (!cert)
      throw Error(ErrorCode::UnitNotFound,
                  "no unit other than +-1 with height <= " + std::to_string(options.height_bound));
    alpha = *cert;
  }
  if (is_plus_minus_one(order, alpha.element))
    throw Error(ErrorCode::InvalidArgument, "alpha must not be +-1");

  const Suborder* suborder = options.suborder ? &*options.suborder : nullptr;
  if (suborder != nullptr) {
    auto hit = power_into_suborder(order, alpha, *suborder, options.max_exp);
    if (!hit)
      throw Error(ErrorCode::SuborderPowerNotFound,
                  "no power alpha^k with k <= " + std::to_string(options.max_exp) + " lies in the suborder");
    alpha = power_certificate(order, alpha, hit->first);
  }

  const auto [i, j] = pigeonhole_exponents(order, alpha, n, suborder);
  auto [f, g] = build_fg(order, alpha, i, j, n);

  Permutation sigma = options.sigma.value_or(Permutation::identity(n));
  if (sigma.size() != n) throw Error(ErrorCode::InvalidArgument, "sigma must permute n points");
  OrderMatrix matrix = apply_perm(sigma, circulant(order, f, g, n));
  OrderElement det_value = det(matrix);
  auto det_unit = is_unit(order, det_value);
  if (!det_unit) throw Error(ErrorCode::CheckFailed, "determinant is not a unit");

  AutomorphismCertificate cert{order,
                               n,
                               alpha,
                               i,
                               j,
                               std::move(f),
                               std::move(g),
                               std::move(sigma),
                               std::move(matrix),
                               std::move(det_value),
                               det_unit->inverse,
                               {},
                               {},
                               options.suborder};
  if (!order.irreducibility_verified())
    cert.unverified_assumptions.push_back("unverified-irreducibility: minimal polynomial of degree " +
                                          std::to_string(order.degree()) + " assumed irreducible");
  const VerificationReport report = verify_certificate(cert);
  cert.checks = report.items;
  if (auto failed = report.first_failure()) throw Error(ErrorCode::CheckFailed, *failed);
  return cert;
}

std::pair<OrderElement, OrderElement> quad_conjugate_construction(const Integer& D, std::int64_t i) {
  if (i < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  const OrderDescriptor order = OrderDescriptor::quadratic(D);
  const UnitCertificate u = fundamental_unit_quadratic(D);
  const OrderElement conj = order.element({u.element.coeffs[0], Integer(-u.element.coeffs[1])});
  const OrderElement ui = power(order, u.element, i);
  const OrderElement ci = power(order, conj, i);
  const OrderElement sum = add(order, ui, ci);
  const OrderElement diff = sub(order, ui, ci);
  OrderElement f = order.zero(), g = order.zero();
  for (std::size_t k = 0; k < 2; ++k) {
    if (!mpz_even_p(sum.coeffs[k].get_mpz_t()) || !mpz_even_p(diff.coeffs[k].get_mpz_t()))
      throw Error(ErrorCode::ParityFailure, "u^i +- ubar^i has an odd coordinate");
    mpz_divexact_ui(f.coeffs[k].get_mpz_t(), sum.coeffs[k].get_mpz_t(), 2);
    mpz_divexact_ui(g.coeffs[k].get_mpz_t(), diff.coeffs[k].get_mpz_t(), 2);
  }
  if (g.is_zero()) throw Error(ErrorCode::ZeroG, "conjugate powers coincide");
  return {f, g};
}

bool VerificationReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const auto& item) { return item.second; });
}

std::optional<std::string> VerificationReport::first_failure() const {
  for (const auto& [name, ok] : items)
    if (!ok) return name;
  return std::nullopt;
}

bool VerificationReport::value(const std::string& name) const {
  for (const auto& [item, ok] : items)
    if (item == name) return ok;
  throw Error(ErrorCode::InvalidArgument, "no verification item named " + name);
}

VerificationReport verify_certificate(const AutomorphismCertificate& cert) {
  VerificationReport report;
  auto record = [&](const std::string& name, bool ok) { report.items.emplace_back(name, ok); };

  const std::size_t d = cert.order.minpoly().size() - 1;
  const std::size_t n = cert.n;
  auto sized = [&](const OrderElement& e) { return e.coeffs.size() == d; };
  if (n < 2 || cert.sigma.size() != n || cert.matrix.size() != n || !sized(cert.f) || !sized(cert.g) ||
      !sized(cert.alpha.element) || !sized(cert.alpha.inverse) || !sized(cert.det_value) ||
      !sized(cert.det_inverse) || !(cert.matrix.order() == cert.order))
    throw Error(ErrorCode::InvalidCertificate, "certificate fields have inconsistent sizes");

  bool order_ok = true;
  std::optional<OrderDescriptor> rebuilt;
  try {
    rebuilt = OrderDescriptor::make(cert.order.minpoly());
  } catch (const Error&) {
    order_ok = false;
  }
  record("order_valid", order_ok);
  if (!order_ok) return report;
  const OrderDescriptor& order = *rebuilt;
  const bool assumption_declared = std::any_of(
      cert.unverified_assumptions.begin(), cert.unverified_assumptions.end(),
      [](const std::string& s) { return s.rfind("unverified-irreducibility", 0) == 0; });
  record("irreducibility_accounted", order.irreducibility_verified() || assumption_declared);

  const bool alpha_ok = certificate_holds(order, cert.alpha);
  record("alpha_unit_certificate", alpha_ok);
  record("alpha_not_plus_minus_one", !is_plus_minus_one(order, cert.alpha.element));

  const bool exponents_ok = cert.i > cert.j && cert.j >= 1;
  record("exponents_ordered", exponents_ok);
  const Integer nn(static_cast<unsigned long>(n));
  OrderElement ai = order.zero(), aj = order.zero();
  if (exponents_ok) {
    ai = power(order, cert.alpha.element, cert.i);
    aj = power(order, cert.alpha.element, cert.j);
    record("pigeonhole_bound", Integer(static_cast<long>(cert.i)) <= pigeonhole_cap(n, d));
    bool congruent_ok = congruent(ai.coeffs, aj.coeffs, nn);
    if (cert.suborder) {
      auto ci = cert.suborder->coordinates(ai);
      auto cj = cert.suborder->coordinates(aj);
      congruent_ok = congruent_ok && ci && cj && congruent(*ci, *cj, nn);
    }
    record("exponents_congruent_mod_n", congruent_ok);
  } else {
    record("pigeonhole_bound", false);
    record("exponents_congruent_mod_n", false);
  }

  const OrderElement f_minus_g = sub(order, cert.f, cert.g);
  const OrderElement f_plus = add(order, cert.f, scale(order, cert.g, nn - 1));
  record("f_minus_g_equals_alpha_j", exponents_ok && f_minus_g == aj);
  record("f_plus_n_minus_1_g_equals_alpha_i", exponents_ok && f_plus == ai);
  record("g_nonzero", !cert.g.is_zero());
  record("f_minus_g_unit", is_unit(order, f_minus_g).has_value());
  record("f_plus_n_minus_1_g_unit", is_unit(order, f_plus).has_value());
  if (cert.suborder)
    record("f_g_in_suborder", suborder_contains(*cert.suborder, cert.f) && suborder_contains(*cert.suborder, cert.g) &&
                                  suborder_contains(*cert.suborder, cert.alpha.element));

  const OrderMatrix rebuilt_matrix = apply_perm(cert.sigma, circulant(order, cert.f, cert.g, n));
  record("matrix_form", rebuilt_matrix == cert.matrix);
  record("det_recomputed", det_bareiss(cert.matrix) == cert.det_value);
  OrderElement closed = det_closed_form(order, cert.f, cert.g, n);
  if (cert.sigma.sign() < 0) closed = neg(order, closed);
  record("det_closed_form", closed == cert.det_value);
  record("det_inverse", mul(order, cert.det_value, cert.det_inverse) == order.one());
  record("nonnatural", !is_natural_form(rebuilt_matrix));
  return report;
}

}  // namespace symaut
