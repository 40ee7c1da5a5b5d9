#pragma once

#include <string>

#include "symaut/construct.hpp"
#include "symaut/matforms.hpp"
#include "symaut/numfield.hpp"

namespace symaut {

/// "4 + 3√2" in Z[√D], "1 - θ + 2θ^2" otherwise.
std::string render(const OrderDescriptor& order, const OrderElement& e);
std::string render_order(const OrderDescriptor& order);
std::string render_permutation(const Permutation& p);
std::string render_matrix(const OrderMatrix& m);
std::string certificate_summary(const AutomorphismCertificate& cert);

}  // namespace symaut
