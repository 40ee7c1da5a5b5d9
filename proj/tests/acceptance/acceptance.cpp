// Acceptance suite: one pass/fail line per criterion, exit status 1 if any fails.
// Expected values come from the small oracles below, which share no code with
// the library beyond the Integer type.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "symaut/construct.hpp"
#include "symaut/finmodel.hpp"
#include "symaut/serialize.hpp"

using namespace symaut;

namespace {

// Runtime limits in seconds, per criterion.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 1.0;
constexpr double kLimit3 = 10.0;
constexpr double kLimit4 = 30.0;
constexpr double kLimit5 = 60.0;
constexpr double kLimit6 = 60.0;  // exact verdicts; limit only guards against hangs
constexpr double kLimit7 = 10.0;
constexpr double kLimit8 = 10.0;

using Coeffs = std::vector<Integer>;

// ---- oracle arithmetic on coefficient vectors modulo a monic polynomial

Coeffs o_mul(const Coeffs& a, const Coeffs& b, const Coeffs& minpoly) {
  const std::size_t d = minpoly.size() - 1;
  Coeffs prod(2 * d - 1, Integer(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t top = prod.size(); top-- > d;) {
    const Integer lead = prod[top];
    for (std::size_t t = 0; t < d; ++t) prod[top - d + t] -= lead * minpoly[t];
    prod[top] = 0;
  }
  prod.resize(d);
  return prod;
}

Coeffs o_one(std::size_t d) {
  Coeffs c(d, Integer(0));
  c[0] = 1;
  return c;
}

Coeffs o_pow(const Coeffs& a, long k, const Coeffs& minpoly) {
  Coeffs acc = o_one(a.size());
  for (long t = 0; t < k; ++t) acc = o_mul(acc, a, minpoly);
  return acc;
}

Coeffs o_add(Coeffs a, const Coeffs& b, long scale = 1) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += scale * b[k];
  return a;
}

// Leibniz expansion over the ring.
Coeffs o_det(const std::vector<std::vector<Coeffs>>& m, const Coeffs& minpoly) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  Coeffs total(minpoly.size() - 1, Integer(0));
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    Coeffs term = o_one(minpoly.size() - 1);
    for (std::size_t r = 0; r < n; ++r) term = o_mul(term, m[r][perm[r]], minpoly);
    total = o_add(total, term, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Norm in Z[sqrt D]: a^2 - D b^2.
Integer o_quad_norm(const Coeffs& a, long D) { return a[0] * a[0] - D * a[1] * a[1]; }

Integer mod_floor(const Integer& v, long n) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// Least (i, j), j < i, with alpha^i = alpha^j coordinatewise mod n, scanning i upward.
std::pair<long, long> o_pigeonhole(const Coeffs& alpha, long n, const Coeffs& minpoly, long cap) {
  std::vector<Coeffs> residues;
  for (long i = 1; i <= cap; ++i) {
    Coeffs r = o_pow(alpha, i, minpoly);
    for (auto& c : r) c = mod_floor(c, n);
    for (long j = 1; j < i; ++j)
      if (residues[static_cast<std::size_t>(j - 1)] == r) return {i, j};
    residues.push_back(r);
  }
  return {0, 0};
}

Coeffs ints(std::initializer_list<long> cs) {
  Coeffs out;
  for (long c : cs) out.emplace_back(c);
  return out;
}

std::string show(const Coeffs& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + c[k].get_str();
  return s + ")";
}

// ---- harness

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int k, const char* title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs >= limit) {
    out.ok = false;
    out.detail = "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit) + " s";
  }
  if (!out.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s, limit %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL", k, title, secs, limit,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
}

const Coeffs kSqrt2 = ints({-2, 0, 1});
const Coeffs kCubic = ints({-1, -2, 1, 1});

OrderMatrix random_perturbation(const OrderMatrix& m, std::mt19937_64& rng) {
  const OrderDescriptor& order = m.order();
  std::uniform_int_distribution<std::size_t> slot(0, m.size() - 1);
  std::uniform_int_distribution<long> coeff(-9, 9);
  OrderMatrix out = m;
  const std::size_t r = slot(rng), c = slot(rng);
  // The new entry differs from every entry of m, so no column keeps the f/g pattern.
  for (;;) {
    OrderElement v = order.zero();
    for (auto& x : v.coeffs) x = coeff(rng);
    bool fresh = true;
    for (std::size_t a = 0; a < m.size() && fresh; ++a)
      for (std::size_t b = 0; b < m.size() && fresh; ++b) fresh = !(m(a, b) == v);
    if (fresh) {
      out(r, c) = v;
      return out;
    }
  }
}

}  // namespace

int main() {
  const OrderDescriptor sqrt2 = OrderDescriptor::make(kSqrt2);
  const OrderDescriptor cubic = OrderDescriptor::make(kCubic);

  criterion(1, "conjugate-pair construction in Z[sqrt2], i = 1..6", kLimit1, [&] {
    Outcome out;
    for (long i = 1; i <= 6; ++i) {
      const auto [f, g] = quad_conjugate_construction(2, i);
      const Coeffs minus = o_pow(ints({1, -1}), i, kSqrt2);
      const Coeffs plus = o_pow(ints({1, 1}), i, kSqrt2);
      const Coeffs fmg = o_add(f.coeffs, g.coeffs, -1);
      const Coeffs fpg = o_add(f.coeffs, g.coeffs, 1);
      out.require(fmg == minus, "f - g != (1 - sqrt2)^" + std::to_string(i));
      out.require(fpg == plus, "f + g != (1 + sqrt2)^" + std::to_string(i));
      out.require(abs(o_quad_norm(fmg, 2)) == 1, "norm(f - g) != +-1 at i = " + std::to_string(i));
      out.require(abs(o_quad_norm(fpg, 2)) == 1, "norm(f + g) != +-1 at i = " + std::to_string(i));
    }
    return out;
  });

  criterion(2, "forge --disc 2 --n 2 pipeline", kLimit2, [&] {
    Outcome out;
    const OrderDescriptor order = OrderDescriptor::quadratic(2);
    const auto cert = forge(order, 2);
    const auto again = forge(order, 2);
    out.require(certificate_to_json(cert) == certificate_to_json(again), "forge is not deterministic");

    // Oracle: the fundamental unit is the least y >= 1 with 2y^2 +- 1 a square.
    Coeffs alpha;
    for (long y = 1; alpha.empty(); ++y)
      for (long s : {1L, -1L}) {
        const long x2 = 2 * y * y + s;
        long x = 0;
        while (x * x < x2) ++x;
        if (x * x == x2 && alpha.empty()) alpha = ints({x, y});
      }
    const auto [i, j] = o_pigeonhole(alpha, 2, kSqrt2, 5);
    const Coeffs ai = o_pow(alpha, i, kSqrt2), aj = o_pow(alpha, j, kSqrt2);
    Coeffs f(2), g(2);
    for (std::size_t k = 0; k < 2; ++k) {
      f[k] = (ai[k] + aj[k]) / 2;
      g[k] = (ai[k] - aj[k]) / 2;
    }
    const Coeffs det = o_add(o_mul(f, f, kSqrt2), o_mul(g, g, kSqrt2), -1);

    out.require(alpha == ints({1, 1}) && cert.alpha.element.coeffs == alpha,
                "alpha = " + show(cert.alpha.element.coeffs) + ", oracle " + show(alpha));
    out.require(cert.i == i && cert.j == j && i == 3 && j == 1,
                "(i, j) = (" + std::to_string(cert.i) + ", " + std::to_string(cert.j) + ")");
    out.require(cert.f.coeffs == f && f == ints({4, 3}), "f = " + show(cert.f.coeffs));
    out.require(cert.g.coeffs == g && g == ints({3, 2}), "g = " + show(cert.g.coeffs));
    out.require(cert.det_value.coeffs == det && det == ints({17, 12}), "det = " + show(cert.det_value.coeffs));
    out.require(o_quad_norm(det, 2) == 1, "norm(det) != 1");
    out.require(verify_certificate(cert).passed(), "verify_certificate rejects the certificate");
    return out;
  });

  criterion(3, "pipeline over x^3 + x^2 - 2x - 1, n = 2, 3", kLimit3, [&] {
    Outcome out;
    for (long n : {2L, 3L}) {
      const std::string tag = "n = " + std::to_string(n) + ": ";
      const auto cert = forge(cubic, static_cast<std::size_t>(n));
      const Coeffs& alpha = cert.alpha.element.coeffs;
      out.require(o_mul(alpha, cert.alpha.inverse.coeffs, kCubic) == o_one(3), tag + "alpha is not a unit");
      out.require(alpha != o_one(3) && alpha != ints({-1, 0, 0}), tag + "alpha = +-1");
      const long cap = n * n * n + 1;
      const auto [i, j] = o_pigeonhole(alpha, n, kCubic, cap);
      out.require(i != 0, tag + "oracle pigeonhole exceeded n^3 + 1");
      out.require(cert.i == i && cert.j == j, tag + "exponents differ from the oracle");
      out.require(cert.i <= cap, tag + "i exceeds n^3 + 1");
      const Coeffs ai = o_pow(alpha, cert.i, kCubic), aj = o_pow(alpha, cert.j, kCubic);
      for (std::size_t k = 0; k < 3; ++k) {
        out.require(mod_floor(ai[k] - aj[k], n) == 0, tag + "alpha^i - alpha^j not divisible by n");
        out.require(n * cert.g.coeffs[k] == ai[k] - aj[k], tag + "n g != alpha^i - alpha^j");
        out.require(n * cert.f.coeffs[k] == ai[k] + (n - 1) * aj[k], tag + "n f != alpha^i + (n-1) alpha^j");
      }
      out.require(cert.g.coeffs != Coeffs(3, Integer(0)), tag + "g = 0");
      std::vector<std::vector<Coeffs>> rows(static_cast<std::size_t>(n));
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows.size(); ++c) rows[r].push_back(cert.matrix(r, c).coeffs);
      const Coeffs det = o_det(rows, kCubic);
      out.require(det == cert.det_value.coeffs, tag + "det differs from the Leibniz oracle");
      out.require(o_mul(det, cert.det_inverse.coeffs, kCubic) == o_one(3), tag + "det is not a unit");
      out.require(verify_certificate(cert).passed(), tag + "verify_certificate rejects the certificate");
    }
    return out;
  });

  criterion(4, "det(circulant) = (f-g)^(n-1) (f+(n-1)g), 1000 pairs per order and n", kLimit4, [&] {
    Outcome out;
    std::mt19937_64 rng(20261017);
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (const auto* mp : {&kSqrt2, &kCubic}) {
      const OrderDescriptor order = OrderDescriptor::make(*mp);
      const std::size_t d = order.degree();
      for (long n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 1000; ++trial) {
          OrderElement f = order.zero(), g = order.zero();
          for (auto& c : f.coeffs) c = coeff(rng);
          for (auto& c : g.coeffs) c = coeff(rng);
          const Coeffs closed = o_mul(o_pow(o_add(f.coeffs, g.coeffs, -1), n - 1, *mp),
                                      o_add(f.coeffs, g.coeffs, n - 1), *mp);
          const OrderElement elim = det_bareiss(circulant(order, f, g, static_cast<std::size_t>(n)));
          out.require(elim.coeffs == closed, "d = " + std::to_string(d) + ", n = " + std::to_string(n) + ", f = " +
                                                 show(f.coeffs) + ", g = " + show(g.coeffs));
          out.require(det_closed_form(order, f, g, static_cast<std::size_t>(n)).coeffs == closed,
                      "library closed form disagrees with the oracle");
        }
    }
    return out;
  });

  criterion(5, "descent, big diagonal, bijectivity and Delta' on forged F, exhaustive", kLimit5, [&] {
    Outcome out;
    const CheckOptions exhaustive{CheckMode::exhaustive()};
    const auto cert = forge(sqrt2, 2);
    for (std::uint32_t m : {2u, 3u, 5u}) {
      const std::string tag = "m = " + std::to_string(m) + ": ";
      const FiniteModel model(sqrt2, m);
      const auto descent = check_descent(model, cert.matrix, exhaustive);
      out.require(descent.passed, tag + "descent fails");
      out.require(descent.examined == std::uint64_t(m) * m * m * m, tag + "descent did not visit every tuple");
      out.require(check_big_diagonal(model, cert.matrix, exhaustive).passed, tag + "big diagonal not preserved");
      out.require(check_bijective(model, cert.matrix), tag + "not bijective");
    }
    const auto cert3 = forge(sqrt2, 3);
    const auto dp = check_delta_prime(FiniteModel(sqrt2, 2), cert3.matrix, exhaustive);
    out.require(dp.passed, "n = 3, m = 2: Delta' not preserved");
    out.require(dp.mode == "exhaustive", "Delta' check was not exhaustive");
    return out;
  });

  criterion(6, "negative controls and naturality probe", kLimit6, [&] {
    Outcome out;
    const CheckOptions exhaustive{CheckMode::exhaustive()};
    const FiniteModel m5(sqrt2, 5);
    const auto pt = [](std::uint32_t a, std::uint32_t b) { return ModelPoint{{a, b}}; };

    const OrderMatrix diag = OrderMatrix::diagonal(sqrt2, {sqrt2.one(), OrderElement{ints({1, 1})}});
    const auto descent = check_descent(m5, diag, exhaustive);
    out.require(!descent.passed, "diag(1, 1 + sqrt2) passes descent");
    if (descent.counterexample) {
      const auto& cx = *descent.counterexample;
      out.require(cx.tuple == ModelTuple{pt(1, 0), pt(0, 0)}, "descent counterexample x differs");
      out.require(cx.tau && *cx.tau == Permutation::transposition(2, 0, 1), "descent counterexample tau differs");
      auto ms = [](ModelTuple t) {
        std::vector<std::vector<std::uint32_t>> v;
        for (auto& p : t) v.push_back(p.coords);
        std::sort(v.begin(), v.end());
        return v;
      };
      out.require(ms(cx.permuted_image) == ms({pt(0, 0), pt(1, 1)}), "F(tau x) multiset differs");
      out.require(ms(cx.image) == ms({pt(1, 0), pt(0, 0)}), "F(x) multiset differs");
    } else {
      out.require(false, "no descent counterexample reported");
    }

    OrderMatrix upper = OrderMatrix::identity(sqrt2, 2);
    upper(0, 1) = sqrt2.theta();
    const auto diag_report = check_big_diagonal(m5, upper, exhaustive);
    out.require(!diag_report.passed, "[[1, sqrt2], [0, 1]] preserves the big diagonal");
    out.require(diag_report.counterexample && diag_report.counterexample->tuple == ModelTuple{pt(1, 0), pt(1, 0)} &&
                    diag_report.counterexample->image == ModelTuple{pt(1, 1), pt(1, 0)},
                "big diagonal counterexample differs");

    // Every forged F whose g is nonzero mod m must look nonnatural; where g
    // vanishes mod m the reduction is natural and the probe must say so.
    std::size_t negatives = 0, vanishing = 0;
    for (const OrderDescriptor* order : {&sqrt2, &cubic})
      for (std::size_t n : {2u, 3u}) {
        const auto cert = forge(*order, n);
        for (std::uint32_t m : {2u, 5u}) {
          bool g_zero = true;
          for (const auto& c : cert.g.coeffs) g_zero = g_zero && mod_floor(c, m) == 0;
          const auto probe = naturality_probe(FiniteModel(*order, m), cert.matrix);
          const std::string tag = "d = " + std::to_string(order->degree()) + ", n = " + std::to_string(n) +
                                  ", m = " + std::to_string(m);
          if (g_zero) {
            ++vanishing;
            out.require(!probe.passed, tag + ": g = 0 mod m but probe found no natural form");
          } else {
            ++negatives;
            out.require(probe.passed, tag + ": probe found a natural form");
          }
        }
      }
    out.require(negatives >= 7, "too few probe cases");
    if (out.ok)
      out.detail = std::to_string(negatives) + " probes negative, " + std::to_string(vanishing) +
                   " with g = 0 mod m positive as expected";
    return out;
  });

  criterion(7, "recognizer round trip (500) and perturbation rejection (500)", kLimit7, [&] {
    Outcome out;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    int recovered = 0, rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const OrderDescriptor& order = (trial % 2 == 0) ? sqrt2 : cubic;
      const std::size_t n = size(rng);
      OrderElement f = order.zero(), g = order.zero();
      do {
        for (auto& c : f.coeffs) c = coeff(rng);
        for (auto& c : g.coeffs) c = coeff(rng);
      } while (f == g);
      std::vector<std::size_t> images(n);
      for (std::size_t k = 0; k < n; ++k) images[k] = k;
      std::shuffle(images.begin(), images.end(), rng);
      const Permutation sigma(images);
      const OrderMatrix m = apply_perm(sigma, circulant(order, f, g, n));

      SymmetricForm expected{sigma, f, g};
      if (n == 2) expected = sigma.is_identity() ? SymmetricForm{sigma, f, g} : SymmetricForm{Permutation::identity(2), g, f};
      const auto got = recognize_symmetric_form(m);
      if (got && *got == expected) ++recovered;
      if (!recognize_symmetric_form(random_perturbation(m, rng))) ++rejected;
    }
    out.require(recovered == 500, std::to_string(recovered) + "/500 recovered");
    out.require(rejected == 500, std::to_string(rejected) + "/500 perturbations rejected");
    return out;
  });

  criterion(8, "fundamental units of Z[sqrt D] for squarefree 2 <= D <= 50", kLimit8, [&] {
    Outcome out;
    int checked = 0;
    for (long D = 2; D <= 50; ++D) {
      bool squarefree = true;
      for (long p = 2; p * p <= D; ++p) squarefree = squarefree && D % (p * p) != 0;
      if (!squarefree) continue;
      // Oracle: least y >= 1 with D y^2 +- 1 a perfect square.
      Integer x, y;
      for (Integer t = 1; y == 0; ++t)
        for (int s : {1, -1}) {
          const Integer x2 = D * t * t + s;
          Integer r;
          mpz_sqrt(r.get_mpz_t(), x2.get_mpz_t());
          if (r * r == x2 && y == 0) {
            x = r;
            y = t;
          }
        }
      const UnitCertificate u = fundamental_unit_quadratic(D);
      const Coeffs minpoly{Integer(-D), Integer(0), Integer(1)};
      out.require(u.element.coeffs == Coeffs{x, y}, "D = " + std::to_string(D) + ": got " + show(u.element.coeffs) +
                                                        ", oracle (" + x.get_str() + "," + y.get_str() + ")");
      out.require(o_mul(u.element.coeffs, u.inverse.coeffs, minpoly) == o_one(2),
                  "D = " + std::to_string(D) + ": element * inverse != 1");
      ++checked;
    }
    out.require(checked == 30, "expected 30 squarefree D, saw " + std::to_string(checked));
    return out;
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
