#include "symaut/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace symaut {

namespace {

void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

RatPoly remainder(RatPoly a, const RatPoly& b) {
  trim(a);
  const int db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const int shift = degree(a) - db;
    for (int k = 0; k <= db; ++k) a[k + shift] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<Integer> divisors_with_sign(const Integer& value) {
  Integer v = abs(value);
  std::vector<Integer> positive;
  for (Integer d = 1; d * d <= v; ++d) {
    if (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0) {
      positive.push_back(d);
      Integer other = v / d;
      if (other != d) positive.push_back(other);
    }
  }
  std::vector<Integer> out;
  out.reserve(positive.size() * 2);
  for (const auto& d : positive) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

// Coefficients of the interpolating polynomial through (xs[t], ys[t]).
RatPoly interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t t = n - 1; t >= level; --t) {
      dd[t] = (dd[t] - dd[t - 1]) / Rational(xs[t] - xs[t - level]);
      if (t == level) break;
    }
  // Horner expansion of the Newton form.
  RatPoly poly{dd[n - 1]};
  for (std::size_t t = n - 1; t-- > 0;) {
    RatPoly next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * Rational(xs[t]);
    }
    next[0] += dd[t];
    poly = std::move(next);
  }
  trim(poly);
  return poly;
}

}  // namespace

void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const IntPoly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && sgn(p[d]) == 0) --d;
  return d;
}

Integer evaluate(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::size_t count_distinct_real_roots(const IntPoly& input) {
  RatPoly p(input.begin(), input.end());
  trim(p);
  if (degree(p) < 1) return 0;
  RatPoly dp(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) dp[k - 1] = p[k] * Rational(static_cast<long>(k));

  std::vector<RatPoly> chain{p, dp};
  while (true) {
    RatPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  std::vector<int> at_plus, at_minus;
  for (const auto& q : chain) {
    const int lead = sgn(q.back());
    at_plus.push_back(lead);
    at_minus.push_back(degree(q) % 2 == 0 ? lead : -lead);
  }
  return static_cast<std::size_t>(sign_changes(at_minus) - sign_changes(at_plus));
}

std::optional<IntPoly> divide_exact_by_monic(const IntPoly& input, const IntPoly& divisor) {
  IntPoly a = input;
  trim(a);
  const int db = degree(divisor);
  if (db < 0 || divisor[db] != 1) return std::nullopt;
  if (degree(a) < db) {
    if (a.empty()) return IntPoly{};
    return std::nullopt;
  }
  IntPoly quotient(a.size() - db, Integer(0));
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Integer factor = a[degree(a)];
    quotient[shift] = factor;
    for (int k = 0; k <= db; ++k) a[k + shift] -= factor * divisor[k];
    trim(a);
  }
  if (!a.empty()) return std::nullopt;
  trim(quotient);
  return quotient;
}

std::optional<IntPoly> find_monic_factor(const IntPoly& input) {
  IntPoly p = input;
  trim(p);
  const int d = degree(p);
  if (d < 2) return std::nullopt;

  // Integer sample points, smallest |p(a)| first to keep the divisor sets small.
  std::vector<std::pair<Integer, Integer>> samples;
  for (long k = 0; static_cast<int>(samples.size()) < d + 6; ++k) {
    for (long a : {k, -k}) {
      if (k == 0 && a != 0) continue;
      Integer value = evaluate(p, Integer(a));
      if (sgn(value) == 0) return IntPoly{Integer(-a), Integer(1)};
      samples.emplace_back(Integer(a), value);
      if (k == 0) break;
    }
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& l, const auto& r) { return abs(l.second) < abs(r.second); });

  for (int k = 1; k <= d / 2; ++k) {
    std::vector<Integer> xs;
    std::vector<std::vector<Integer>> choices;
    for (int t = 0; t <= k; ++t) {
      xs.push_back(samples[t].first);
      choices.push_back(divisors_with_sign(samples[t].second));
    }
    std::vector<std::size_t> idx(k + 1, 0);
    while (true) {
      std::vector<Integer> ys;
      for (int t = 0; t <= k; ++t) ys.push_back(choices[t][idx[t]]);
      RatPoly cand = interpolate(xs, ys);
      if (degree(cand) == k && abs(cand.back()) == 1 &&
          std::all_of(cand.begin(), cand.end(), [](const Rational& c) { return c.get_den() == 1; })) {
        IntPoly factor;
        const int lead = sgn(cand.back());
        for (const auto& c : cand) factor.push_back(lead > 0 ? c.get_num() : Integer(-c.get_num()));
        if (divide_exact_by_monic(p, factor)) return factor;
      }
      std::size_t t = 0;
      while (t <= static_cast<std::size_t>(k) && ++idx[t] == choices[t].size()) idx[t++] = 0;
      if (t > static_cast<std::size_t>(k)) break;
    }
  }
  return std::nullopt;
}

}  // namespace symaut
