#pragma once

#include <json.hpp>

#include "symaut/construct.hpp"
#include "symaut/matforms.hpp"
#include "symaut/numfield.hpp"

namespace symaut {

inline constexpr int kFormatVersion = 1;

// Integers are written as decimal strings; readers also accept JSON numbers
// for the small fields (n, exponents, permutation images).
nlohmann::json element_to_json(const OrderElement& e);
OrderElement element_from_json(const OrderDescriptor& order, const nlohmann::json& j);

nlohmann::json order_to_json(const OrderDescriptor& order);
OrderDescriptor order_from_json(const nlohmann::json& j);

nlohmann::json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const nlohmann::json& j);

nlohmann::json matrix_rows_to_json(const OrderMatrix& m);
OrderMatrix matrix_rows_from_json(const OrderDescriptor& order, const nlohmann::json& rows);

/// {"format_version": 1, "order": {"minpoly": [...]}, "matrix": [[...], ...]}
nlohmann::json matrix_file_to_json(const OrderMatrix& m);
/// Accepts a matrix file or a certificate file (both carry order + matrix).
OrderMatrix matrix_file_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const AutomorphismCertificate& cert);
AutomorphismCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace symaut
