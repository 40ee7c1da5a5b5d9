#include <doctest.h>

#include <random>

#include "support/test_support.hpp"
#include "symaut/construct.hpp"
#include "symaut/finmodel.hpp"
#include "symaut/kernels.hpp"

using namespace symaut;
using symaut::testing::cubic_order;
using symaut::testing::sqrt2_order;

namespace {

std::vector<std::uint32_t> run(const std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols,
                               const std::vector<std::uint32_t>& x, std::size_t count, std::uint32_t m,
                               kernels::Isa isa) {
  std::vector<std::uint32_t> y(rows * count, 0xdeadbeef);
  kernels::mod_matvec(kernels::ModMatVecJob{a, rows, cols, x, y, count, m}, isa);
  return y;
}

}  // namespace

TEST_CASE("scalar kernel against a direct product") {
  const std::vector<std::uint32_t> a{1, 2, 3, 4};
  // Two vectors (1, 1) and (2, 3) in SoA layout.
  const std::vector<std::uint32_t> x{1, 2, 1, 3};
  const auto y = run(a, 2, 2, x, 2, 5, kernels::Isa::Scalar);
  CHECK(y == std::vector<std::uint32_t>{3, 3, 2, 3});
}

TEST_CASE("AVX2 kernel matches scalar") {
  if (kernels::detect_isa() != kernels::Isa::Avx2) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  CHECK(kernels::avx2_eligible(8, 65535) == false);
  CHECK(kernels::avx2_eligible(8, 101));
  std::mt19937_64 rng(83);
  for (std::uint32_t m : {2u, 3u, 4u, 5u, 7u, 101u, 4093u, 65521u}) {
    for (std::size_t dim : {1u, 2u, 4u, 6u, 9u}) {
      for (std::size_t count : {1u, 7u, 8u, 9u, 64u, 1001u}) {
        std::uniform_int_distribution<std::uint32_t> dist(0, m - 1);
        std::vector<std::uint32_t> a(dim * dim), x(dim * count);
        for (auto& v : a) v = dist(rng);
        for (auto& v : x) v = dist(rng);
        // Extremes exercise the reduction fixup.
        if (count > 2) {
          for (std::size_t c = 0; c < dim; ++c) x[c * count] = m - 1;
          for (auto& v : a) v = (v % 3 == 0) ? m - 1 : v;
        }
        CAPTURE(m);
        CAPTURE(dim);
        CAPTURE(count);
        CHECK(run(a, dim, dim, x, count, m, kernels::Isa::Scalar) ==
              run(a, dim, dim, x, count, m, kernels::Isa::Avx2));
      }
    }
  }
}

TEST_CASE("finite-model verdicts do not depend on the kernel") {
  const auto q = sqrt2_order();
  const auto cert = forge(cubic_order(), 2);
  const OrderMatrix diag = OrderMatrix::diagonal(q, {q.one(), OrderElement{{Integer(1), Integer(1)}}});
  for (auto isa : {kernels::Isa::Scalar, kernels::Isa::Avx2}) {
    CheckOptions opts{CheckMode::exhaustive()};
    opts.isa = isa;
    const auto pass = check_descent(FiniteModel(cubic_order(), 3), cert.matrix, opts);
    CHECK(pass.passed);
    const auto fail = check_descent(FiniteModel(q, 5), diag, opts);
    CHECK(report_to_json(fail) == report_to_json(check_descent(FiniteModel(q, 5), diag,
                                                               CheckOptions{CheckMode::exhaustive(), 10'000'000,
                                                                            kernels::Isa::Scalar})));
    CheckOptions sampled{CheckMode::sample(20000, 5)};
    sampled.isa = isa;
    CHECK(report_to_json(check_big_diagonal(FiniteModel(cubic_order(), 1009), cert.matrix, sampled)).dump() ==
          report_to_json(check_big_diagonal(FiniteModel(cubic_order(), 1009), cert.matrix,
                                            CheckOptions{CheckMode::sample(20000, 5), 10'000'000,
                                                         kernels::Isa::Scalar}))
              .dump());
  }
}
