#include "symaut/render.hpp"

#include <sstream>

namespace symaut {

namespace {

std::string basis_name(const OrderDescriptor& order, std::size_t k) {
  if (k == 0) return "";
  if (auto D = order.quadratic_radicand()) return "√" + to_decimal(*D);
  return k == 1 ? "θ" : "θ^" + std::to_string(k);
}

}  // namespace

std::string render(const OrderDescriptor& order, const OrderElement& e) {
  std::string out;
  for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
    const Integer& c = e.coeffs[k];
    if (sgn(c) == 0) continue;
    const Integer mag = abs(c);
    std::string term = (k == 0 || mag != 1) ? to_decimal(mag) : "";
    term += basis_name(order, k);
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string render_order(const OrderDescriptor& order) {
  if (auto D = order.quadratic_radicand()) return "Z[√" + to_decimal(*D) + "]";
  std::string poly;
  const auto& p = order.minpoly();
  for (std::size_t k = p.size(); k-- > 0;) {
    const Integer& c = p[k];
    if (sgn(c) == 0) continue;
    const Integer mag = abs(c);
    std::string term = (k == 0 || mag != 1) ? to_decimal(mag) : "";
    if (k >= 1) term += k == 1 ? "θ" : "θ^" + std::to_string(k);
    if (poly.empty())
      poly = (sgn(c) < 0 ? "-" : "") + term;
    else
      poly += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return "Z[θ], " + poly + " = 0";
}

std::string render_permutation(const Permutation& p) {
  std::string s = "[";
  for (long v : p.one_based()) s += (s.size() > 1 ? ", " : "") + std::to_string(v);
  return s + "]";
}

std::string render_matrix(const OrderMatrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.size(); ++r) {
    s += "  [";
    for (std::size_t c = 0; c < m.size(); ++c) s += (c ? ", " : "") + render(m.order(), m(r, c));
    s += "]\n";
  }
  return s;
}

std::string certificate_summary(const AutomorphismCertificate& cert) {
  const auto& order = cert.order;
  std::ostringstream os;
  os << "order: " << render_order(order) << " (d = " << order.degree() << ")\n";
  os << "n: " << cert.n << "\n";
  os << "alpha: " << render(order, cert.alpha.element) << " (inverse " << render(order, cert.alpha.inverse)
     << ", norm " << to_decimal(norm(order, cert.alpha.element)) << ")\n";
  os << "exponents: i = " << cert.i << ", j = " << cert.j << "\n";
  os << "f = " << render(order, cert.f) << "\n";
  os << "g = " << render(order, cert.g) << "\n";
  os << "sigma = " << render_permutation(cert.sigma) << "\n";
  os << "F =\n" << render_matrix(cert.matrix);
  os << "det = " << render(order, cert.det_value) << " (norm " << to_decimal(norm(order, cert.det_value))
     << "), det^-1 = " << render(order, cert.det_inverse) << "\n";
  os << "nonnatural: " << (is_natural_form(cert.matrix) ? "no" : "yes") << "\n";
  for (const auto& a : cert.unverified_assumptions) os << "assumption: " << a << "\n";
  std::size_t passed = 0;
  for (const auto& [name, ok] : cert.checks) passed += ok ? 1 : 0;
  os << "checks: " << passed << "/" << cert.checks.size() << " passed\n";
  return os.str();
}

}  // namespace symaut
