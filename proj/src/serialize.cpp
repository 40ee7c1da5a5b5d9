#include "symaut/serialize.hpp"

#include <string>

#include "symaut/error.hpp"

namespace symaut {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::InvalidCertificate, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Integer integer_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const Error& e) {
      malformed(e.what());
    }
  }
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  malformed("expected an integer (decimal string)");
}

long small_from_json(const json& j) {
  const Integer v = integer_from_json(j);
  if (!v.fits_slong_p()) malformed("integer field out of range");
  return v.get_si();
}

std::vector<Integer> integers_from_json(const json& j) {
  if (!j.is_array()) malformed("expected an array of integers");
  std::vector<Integer> out;
  for (const auto& v : j) out.push_back(integer_from_json(v));
  return out;
}

json integers_to_json(const std::vector<Integer>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_decimal(v));
  return out;
}

void check_version(const json& j) {
  const json& v = field(j, "format_version");
  if (small_from_json(v) != kFormatVersion) malformed("unsupported format_version");
}

}  // namespace

json element_to_json(const OrderElement& e) { return integers_to_json(e.coeffs); }

OrderElement element_from_json(const OrderDescriptor& order, const json& j) {
  OrderElement e{integers_from_json(j)};
  if (e.coeffs.size() != order.degree()) malformed("element length does not match the order degree");
  return e;
}

json order_to_json(const OrderDescriptor& order) { return json{{"minpoly", integers_to_json(order.minpoly())}}; }

OrderDescriptor order_from_json(const json& j) {
  try {
    return OrderDescriptor::make(integers_from_json(field(j, "minpoly")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidCertificate) throw;
    malformed(std::string("invalid order: ") + e.what());
  }
}

json permutation_to_json(const Permutation& p) {
  json out = json::array();
  for (long v : p.one_based()) out.push_back(std::to_string(v));
  return out;
}

Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) malformed("permutation must be an array");
  std::vector<long> images;
  for (const auto& v : j) images.push_back(small_from_json(v));
  try {
    return Permutation::from_one_based(images);
  } catch (const Error& e) {
    malformed(e.what());
  }
}

json matrix_rows_to_json(const OrderMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(element_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

OrderMatrix matrix_rows_from_json(const OrderDescriptor& order, const json& rows) {
  if (!rows.is_array() || rows.empty()) malformed("matrix must be a non-empty array of rows");
  std::vector<std::vector<OrderElement>> parsed;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows.size()) malformed("matrix must be square");
    std::vector<OrderElement> elements;
    for (const auto& e : row) elements.push_back(element_from_json(order, e));
    parsed.push_back(std::move(elements));
  }
  return OrderMatrix(order, std::move(parsed));
}

json matrix_file_to_json(const OrderMatrix& m) {
  return json{{"format_version", kFormatVersion}, {"order", order_to_json(m.order())}, {"matrix", matrix_rows_to_json(m)}};
}

OrderMatrix matrix_file_from_json(const json& j) {
  check_version(j);
  const OrderDescriptor order = order_from_json(field(j, "order"));
  return matrix_rows_from_json(order, field(j, "matrix"));
}

json certificate_to_json(const AutomorphismCertificate& cert) {
  json checks = json::object();
  for (const auto& [name, ok] : cert.checks) checks[name] = ok;
  json out{
      {"format_version", kFormatVersion},
      {"order", order_to_json(cert.order)},
      {"n", std::to_string(cert.n)},
      {"alpha",
       {{"coeffs", element_to_json(cert.alpha.element)},
        {"inverse", element_to_json(cert.alpha.inverse)},
        {"charpoly_constant", to_decimal(cert.alpha.charpoly_constant)}}},
      {"exponents", {{"i", std::to_string(cert.i)}, {"j", std::to_string(cert.j)}}},
      {"f", element_to_json(cert.f)},
      {"g", element_to_json(cert.g)},
      {"sigma", permutation_to_json(cert.sigma)},
      {"matrix", matrix_rows_to_json(cert.matrix)},
      {"det", {{"value", element_to_json(cert.det_value)}, {"inverse", element_to_json(cert.det_inverse)}}},
      {"checks", checks},
      {"unverified_assumptions", cert.unverified_assumptions},
  };
  if (cert.suborder) {
    json basis = json::array();
    const IntMatrix& b = cert.suborder->basis();
    for (std::size_t r = 0; r < b.rows(); ++r) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(b(r, c));
      basis.push_back(integers_to_json(row));
    }
    out["suborder"] = json{{"basis", basis}};
  }
  return out;
}

AutomorphismCertificate certificate_from_json(const json& j) {
  check_version(j);
  const OrderDescriptor order = order_from_json(field(j, "order"));
  const long n = small_from_json(field(j, "n"));
  if (n < 2) malformed("n must be at least 2");

  const json& alpha_j = field(j, "alpha");
  UnitCertificate alpha{element_from_json(order, field(alpha_j, "coeffs")),
                        element_from_json(order, field(alpha_j, "inverse")),
                        integer_from_json(field(alpha_j, "charpoly_constant"))};
  const json& exps = field(j, "exponents");
  const json& det_j = field(j, "det");

  Permutation sigma = permutation_from_json(field(j, "sigma"));
  OrderMatrix matrix = matrix_rows_from_json(order, field(j, "matrix"));
  if (sigma.size() != static_cast<std::size_t>(n) || matrix.size() != static_cast<std::size_t>(n))
    malformed("sigma and matrix must have size n");

  std::vector<std::pair<std::string, bool>> checks;
  const json& checks_j = field(j, "checks");
  if (!checks_j.is_object()) malformed("checks must be an object");
  for (const auto& [name, ok] : checks_j.items()) {
    if (!ok.is_boolean()) malformed("check values must be booleans");
    checks.emplace_back(name, ok.get<bool>());
  }
  std::vector<std::string> assumptions;
  const json& assumptions_j = field(j, "unverified_assumptions");
  if (!assumptions_j.is_array()) malformed("unverified_assumptions must be an array");
  for (const auto& s : assumptions_j) {
    if (!s.is_string()) malformed("unverified_assumptions entries must be strings");
    assumptions.push_back(s.get<std::string>());
  }

  std::optional<Suborder> suborder;
  if (j.contains("suborder")) {
    const json& rows = field(j.at("suborder"), "basis");
    if (!rows.is_array() || rows.size() != order.degree()) malformed("suborder basis must have d rows");
    IntMatrix basis(order.degree(), order.degree());
    for (std::size_t r = 0; r < order.degree(); ++r) {
      const auto row = integers_from_json(rows[r]);
      if (row.size() != order.degree()) malformed("suborder basis must be d x d");
      for (std::size_t c = 0; c < row.size(); ++c) basis(r, c) = row[c];
    }
    try {
      suborder = Suborder::make(order, std::move(basis));
    } catch (const Error& e) {
      malformed(e.what());
    }
  }

  return AutomorphismCertificate{order,
                                 static_cast<std::size_t>(n),
                                 std::move(alpha),
                                 small_from_json(field(exps, "i")),
                                 small_from_json(field(exps, "j")),
                                 element_from_json(order, field(j, "f")),
                                 element_from_json(order, field(j, "g")),
                                 std::move(sigma),
                                 std::move(matrix),
                                 element_from_json(order, field(det_j, "value")),
                                 element_from_json(order, field(det_j, "inverse")),
                                 std::move(checks),
                                 std::move(assumptions),
                                 std::move(suborder)};
}

}  // namespace symaut
