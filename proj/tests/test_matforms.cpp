#include <doctest.h>

#include <random>

#include "support/test_support.hpp"
#include "symaut/error.hpp"
#include "symaut/matforms.hpp"

using namespace symaut;
using symaut::testing::cubic_order;
using symaut::testing::elem;
using symaut::testing::random_element;
using symaut::testing::sqrt2_order;

namespace {

Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = k;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

}  // namespace

TEST_CASE("permutations") {
  CHECK(Permutation::all(3).size() == 6);
  CHECK(Permutation::all(3).front().is_identity());
  CHECK(Permutation::transposition(4, 1, 2).sign() == -1);
  CHECK(Permutation::from_one_based({2, 3, 1}).sign() == 1);
  CHECK(Permutation::from_one_based({2, 3, 1}).one_based() == std::vector<long>{2, 3, 1});
  const Permutation p = Permutation::from_one_based({3, 1, 4, 2});
  CHECK(p.inverse()(p(2)) == 2);
  CHECK_THROWS_AS(Permutation::from_one_based({1, 1}), Error);
  CHECK_THROWS_AS(Permutation::from_one_based({0, 1}), Error);
}

TEST_CASE("circulant construction") {
  const auto q = sqrt2_order();
  const auto f = elem({4, 3}), g = elem({3, 2});
  const OrderMatrix c = circulant(q, f, g, 2);
  CHECK(c(0, 0) == f);
  CHECK(c(0, 1) == g);
  CHECK(c(1, 0) == g);
  CHECK(c(1, 1) == f);
  CHECK(circulant(q, q.one(), q.zero(), 4) == OrderMatrix::identity(q, 4));
  CHECK(det(circulant(q, q.one(), q.theta(), 2)) == q.constant(-1));
  CHECK_THROWS_AS(circulant(q, f, g, 1), Error);
}

TEST_CASE("apply_perm and mat_mul") {
  const auto q = sqrt2_order();
  const auto f = elem({4, 3}), g = elem({3, 2});
  const OrderMatrix c = circulant(q, f, g, 2);
  CHECK(apply_perm(Permutation::identity(2), c) == c);
  const OrderMatrix swapped = apply_perm(Permutation::transposition(2, 0, 1), c);
  CHECK(swapped(0, 0) == g);
  CHECK(swapped(0, 1) == f);

  std::mt19937_64 rng(29);
  for (std::size_t n = 2; n <= 5; ++n) {
    const OrderMatrix m = [&] {
      OrderMatrix out(q, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) out(r, k) = random_element(rng, 2, -5, 5);
      return out;
    }();
    const Permutation s = random_permutation(rng, n);
    CHECK(apply_perm(s, m) == mat_mul(OrderMatrix::permutation(q, s), m));
  }
}

TEST_CASE("circulant commutes with permutation matrices") {
  std::mt19937_64 rng(31);
  for (const OrderDescriptor& order : {sqrt2_order(), cubic_order()}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto f = random_element(rng, order.degree(), -9, 9);
      const auto g = random_element(rng, order.degree(), -9, 9);
      const OrderMatrix c = circulant(order, f, g, n);
      for (const Permutation& tau : Permutation::all(n)) {
        const OrderMatrix p = OrderMatrix::permutation(order, tau);
        CHECK(mat_mul(c, p) == mat_mul(p, c));
      }
    }
    for (std::size_t n = 5; n <= 6; ++n) {
      const auto f = random_element(rng, order.degree(), -9, 9);
      const auto g = random_element(rng, order.degree(), -9, 9);
      const OrderMatrix c = circulant(order, f, g, n);
      for (std::size_t a = 0; a + 1 < n; ++a) {
        const OrderMatrix p = OrderMatrix::permutation(order, Permutation::transposition(n, a, a + 1));
        CHECK(mat_mul(c, p) == mat_mul(p, c));
      }
    }
  }
}

TEST_CASE("determinants") {
  const auto q = sqrt2_order();
  CHECK(det(OrderMatrix::identity(q, 3)) == q.one());
  CHECK(det_closed_form(q, q.one(), q.theta(), 2) == q.constant(-1));
  CHECK(det_closed_form(q, elem({4, 3}), elem({3, 2}), 2) == elem({17, 12}));
  const auto h = elem({2, -1});
  CHECK(det_closed_form(q, h, q.zero(), 3) == power(q, h, 3));

  SUBCASE("cofactor, elimination and closed form agree on circulants") {
    std::mt19937_64 rng(37);
    for (const OrderDescriptor& order : {sqrt2_order(), cubic_order()}) {
      for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        const auto f = random_element(rng, order.degree(), -9, 9);
        const auto g = random_element(rng, order.degree(), -9, 9);
        const OrderMatrix c = circulant(order, f, g, n);
        const auto closed = det_closed_form(order, f, g, n);
        CHECK(det_cofactor(c) == closed);
        CHECK(det_bareiss(c) == closed);
      }
    }
  }

  SUBCASE("elimination path above the cofactor limit") {
    std::mt19937_64 rng(41);
    const auto f = random_element(rng, 2, -3, 3);
    const auto g = random_element(rng, 2, -3, 3);
    const OrderMatrix c = circulant(q, f, g, 7);
    CHECK(det(c) == det_closed_form(q, f, g, 7));
  }

  SUBCASE("general matrices: cofactor equals elimination") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
      OrderMatrix m(cubic_order(), n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = random_element(rng, 3, -4, 4);
      if (trial % 3 == 0) m(0, 0) = cubic_order().zero();
      CHECK(det_cofactor(m) == det_bareiss(m));
    }
  }

  SUBCASE("row permutation multiplies the determinant by the sign") {
    std::mt19937_64 rng(47);
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto f = random_element(rng, 2, -9, 9);
      const auto g = random_element(rng, 2, -9, 9);
      const Permutation s = random_permutation(rng, n);
      OrderElement expected = det_closed_form(q, f, g, n);
      if (s.sign() < 0) expected = neg(q, expected);
      CHECK(det(apply_perm(s, circulant(q, f, g, n))) == expected);
    }
  }
}

TEST_CASE("invert") {
  const auto q = sqrt2_order();
  const OrderMatrix id = OrderMatrix::identity(q, 3);
  auto inv_id = invert(id);
  REQUIRE(inv_id);
  CHECK(*inv_id == id);

  auto inv = invert(circulant(q, q.one(), q.theta(), 2));
  REQUIRE(inv);
  CHECK((*inv)(0, 0) == q.constant(-1));
  CHECK((*inv)(0, 1) == q.theta());
  CHECK((*inv)(1, 0) == q.theta());
  CHECK((*inv)(1, 1) == q.constant(-1));

  CHECK_FALSE(invert(circulant(q, q.constant(2), q.zero(), 2)));

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    OrderMatrix m(q, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(r, c) = random_element(rng, 2, -3, 3);
    const bool unit_det = abs(norm(q, det(m))) == 1;
    auto mi = invert(m);
    CHECK(mi.has_value() == unit_det);
    if (mi) {
      CHECK(mat_mul(m, *mi) == OrderMatrix::identity(q, 2));
      CHECK(mat_mul(*mi, m) == OrderMatrix::identity(q, 2));
    }
  }
}

TEST_CASE("recognize_symmetric_form") {
  const auto q = sqrt2_order();
  const auto f = elem({4, 3}), g = elem({3, 2});

  auto form = recognize_symmetric_form(circulant(q, f, g, 3));
  REQUIRE(form);
  CHECK(form->sigma.is_identity());
  CHECK(form->f == f);
  CHECK(form->g == g);

  SUBCASE("n = 2 convention") {
    auto plain = recognize_symmetric_form(circulant(q, f, g, 2));
    REQUIRE(plain);
    CHECK(*plain == SymmetricForm{Permutation::identity(2), f, g});
    auto swapped = recognize_symmetric_form(apply_perm(Permutation::transposition(2, 0, 1), circulant(q, f, g, 2)));
    REQUIRE(swapped);
    CHECK(*swapped == SymmetricForm{Permutation::identity(2), g, f});
  }

  SUBCASE("round trip over random sigma, n = 4") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_element(rng, 2, -9, 9);
      auto b = random_element(rng, 2, -9, 9);
      if (a == b) b.coeffs[0] += 1;
      const Permutation s = random_permutation(rng, 4);
      auto got = recognize_symmetric_form(apply_perm(s, circulant(q, a, b, 4)));
      REQUIRE(got);
      CHECK(*got == SymmetricForm{s, a, b});
    }
  }

  SUBCASE("rejections") {
    OrderMatrix broken = circulant(q, f, g, 2);
    broken(1, 1) = elem({4, 4});
    CHECK_FALSE(recognize_symmetric_form(broken));
    CHECK_FALSE(recognize_symmetric_form(OrderMatrix(q, 3)));
    CHECK_FALSE(recognize_symmetric_form(circulant(q, f, f, 3)));
    OrderMatrix two_f = circulant(q, f, g, 3);
    two_f(1, 0) = f;  // column 0 now has two f entries
    CHECK_FALSE(recognize_symmetric_form(two_f));
    OrderMatrix mixed = circulant(q, f, g, 3);
    mixed(0, 2) = elem({9, 9});
    CHECK_FALSE(recognize_symmetric_form(mixed));
  }
}

TEST_CASE("is_natural_form") {
  const auto q = sqrt2_order();
  const auto h = elem({1, 1});
  const OrderMatrix diag = OrderMatrix::diagonal(q, {h, h});
  CHECK(is_natural_form(diag));
  CHECK(is_natural_form(apply_perm(Permutation::transposition(2, 0, 1), diag)));
  CHECK_FALSE(is_natural_form(circulant(q, elem({4, 3}), elem({3, 2}), 2)));
  CHECK_FALSE(is_natural_form(OrderMatrix::diagonal(q, {q.one(), h})));

  auto nat = natural_decomposition(apply_perm(Permutation::from_one_based({2, 3, 1}), circulant(q, h, q.zero(), 3)));
  REQUIRE(nat);
  CHECK(nat->sigma == Permutation::from_one_based({2, 3, 1}));
  CHECK(nat->h == h);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    auto f = random_element(rng, 2, -4, 4);
    if (f.is_zero()) f = q.one();
    const auto g = (trial % 2 == 0) ? q.zero() : random_element(rng, 2, -4, 4);
    const Permutation s = random_permutation(rng, n);
    CHECK(is_natural_form(apply_perm(s, circulant(q, f, g, n))) == g.is_zero());
  }
}
