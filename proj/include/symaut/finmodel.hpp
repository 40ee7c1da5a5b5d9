#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symaut/kernels.hpp"
#include "symaut/matforms.hpp"
#include "symaut/numfield.hpp"

namespace symaut {

// Finite proxy for the torsion of X: the module (Z/m)^d with theta acting by
// the companion matrix of the minimal polynomial. This is the regular module
// of the order reduced mod m, rank d rather than the rank 2d of the true X[m];
// every check below is a statement about the matrix acting on a faithful
// module, and the reports claim nothing beyond the model.

struct ModelPoint {
  std::vector<std::uint32_t> coords;
  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

using ModelTuple = std::vector<ModelPoint>;

class FiniteModel {
 public:
  static constexpr std::uint32_t kMaxModulus = 65535;

  FiniteModel(OrderDescriptor order, std::uint32_t modulus);

  const OrderDescriptor& order() const noexcept { return order_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::size_t degree() const noexcept { return order_.degree(); }
  /// d x d row-major companion matrix mod m.
  const std::vector<std::uint32_t>& theta_action() const noexcept { return theta_action_; }

  /// regular_representation(e) reduced mod m, row-major.
  std::vector<std::uint32_t> action_matrix(const OrderElement& e) const;
  /// (dn) x (dn) matrix with block (r, c) = action_matrix(M(r, c)).
  std::vector<std::uint32_t> block_action_matrix(const OrderMatrix& m) const;

  ModelPoint point(std::vector<std::uint32_t> coords) const;

 private:
  OrderDescriptor order_;
  std::uint32_t modulus_;
  std::vector<std::uint32_t> theta_action_;
};

ModelPoint act(const FiniteModel& model, const OrderElement& e, const ModelPoint& p);
ModelTuple act_tuple(const FiniteModel& model, const OrderMatrix& m, const ModelTuple& x);

/// Moves coordinate i of x to position tau(i), matching OrderMatrix::permutation.
ModelTuple permute_tuple(const Permutation& tau, const ModelTuple& x);

struct CheckMode {
  enum class Kind { Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CheckMode exhaustive() { return {}; }
  static CheckMode sample(std::uint64_t count, std::uint64_t seed) { return {Kind::Sample, count, seed}; }
};

struct CheckOptions {
  CheckMode mode;
  /// Exhaustive runs refuse work beyond this many tuple (or tuple-permutation) evaluations.
  std::uint64_t budget = 10'000'000;
  kernels::Isa isa = kernels::active_isa();
};

struct Counterexample {
  ModelTuple tuple;
  std::optional<Permutation> tau;
  ModelTuple image;
  ModelTuple permuted_image;  // F(tau x), descent only
};

struct ModelReport {
  std::string check;
  std::uint32_t modulus = 0;
  std::size_t degree = 0;
  std::size_t n = 0;
  std::vector<Integer> minpoly;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::uint64_t examined = 0;
  bool passed = false;
  std::optional<Counterexample> counterexample;
  std::optional<NaturalForm> witness;  // naturality probe only
  std::string note;
};

/// Invertibility mod m of the integer (dn) x (dn) block regular representation.
bool check_bijective(const FiniteModel& model, const OrderMatrix& m);
ModelReport bijectivity_report(const FiniteModel& model, const OrderMatrix& m);

/// For all x and tau: the coordinate multiset of F(tau x) equals that of F(x).
/// The reported counterexample is the first in enumeration order (tuples by
/// little-endian index, permutations lexicographically).
ModelReport check_descent(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options = {});
/// F(Delta) in Delta, Delta the tuples with two equal coordinates.
ModelReport check_big_diagonal(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options = {});
/// F(Delta') in Delta', Delta' the tuples whose coordinates agree outside one slot; n >= 3.
ModelReport check_delta_prime(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options = {});
/// Searches (tau, h) with M = P_tau diag(h, ..., h) as maps on the model;
/// passed == true means no such pair exists (nonnatural on the model).
ModelReport naturality_probe(const FiniteModel& model, const OrderMatrix& m, std::uint64_t budget = 10'000'000);

bool in_big_diagonal(const ModelTuple& x);
bool in_delta_prime(const ModelTuple& x);

nlohmann::json report_to_json(const ModelReport& report);
std::string report_to_text(const ModelReport& report);

}  // namespace symaut
