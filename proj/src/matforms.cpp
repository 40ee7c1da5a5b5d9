#include "symaut/matforms.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "symaut/error.hpp"

namespace symaut {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v >= images_.size() || seen[v]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
  Permutation p = identity(n);
  if (a >= n || b >= n) throw Error(ErrorCode::InvalidArgument, "transposition index out of range");
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Permutation Permutation::from_one_based(const std::vector<long>& images) {
  std::vector<std::size_t> zero_based;
  for (long v : images) {
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "permutation images are 1-indexed");
    zero_based.push_back(static_cast<std::size_t>(v - 1));
  }
  return Permutation(std::move(zero_based));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.images_.begin(), p.images_.end()));
  return out;
}

std::vector<long> Permutation::one_based() const {
  std::vector<long> out;
  for (std::size_t v : images_) out.push_back(static_cast<long>(v) + 1);
  return out;
}

int Permutation::sign() const {
  std::vector<bool> visited(images_.size(), false);
  int s = 1;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (visited[start]) continue;
    std::size_t length = 0;
    for (std::size_t i = start; !visited[i]; i = images_[i]) {
      visited[i] = true;
      ++length;
    }
    if (length % 2 == 0) s = -s;
  }
  return s;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

OrderMatrix::OrderMatrix(OrderDescriptor order, std::size_t n)
    : order_(std::move(order)), n_(n), entries_(n * n, order_.zero()) {}

OrderMatrix::OrderMatrix(OrderDescriptor order, std::vector<std::vector<OrderElement>> rows)
    : order_(std::move(order)), n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
    for (auto& e : row) {
      order_.check(e);
      entries_.push_back(std::move(e));
    }
  }
}

OrderMatrix OrderMatrix::identity(const OrderDescriptor& order, std::size_t n) {
  return diagonal(order, std::vector<OrderElement>(n, order.one()));
}

OrderMatrix OrderMatrix::diagonal(const OrderDescriptor& order, const std::vector<OrderElement>& entries) {
  OrderMatrix m(order, entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    order.check(entries[k]);
    m(k, k) = entries[k];
  }
  return m;
}

OrderMatrix OrderMatrix::permutation(const OrderDescriptor& order, const Permutation& sigma) {
  OrderMatrix m(order, sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) m(sigma(i), i) = order.one();
  return m;
}

OrderMatrix OrderMatrix::minor(std::size_t skip_row, std::size_t skip_col) const {
  OrderMatrix out(order_, n_ - 1);
  for (std::size_t r = 0, rr = 0; r < n_; ++r) {
    if (r == skip_row) continue;
    for (std::size_t c = 0, cc = 0; c < n_; ++c) {
      if (c == skip_col) continue;
      out(rr, cc++) = (*this)(r, c);
    }
    ++rr;
  }
  return out;
}

OrderMatrix circulant(const OrderDescriptor& order, const OrderElement& f, const OrderElement& g, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "circulant size must be at least 2");
  order.check(f);
  order.check(g);
  OrderMatrix m(order, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = (r == c) ? f : g;
  return m;
}

OrderMatrix apply_perm(const Permutation& sigma, const OrderMatrix& m) {
  if (sigma.size() != m.size()) throw Error(ErrorCode::InvalidArgument, "permutation/matrix size mismatch");
  OrderMatrix out(m.order(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out(sigma(r), c) = m(r, c);
  return out;
}

OrderMatrix mat_mul(const OrderMatrix& a, const OrderMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "matrix size mismatch");
  if (!(a.order() == b.order())) throw Error(ErrorCode::InvalidArgument, "matrices over different orders");
  const auto& order = a.order();
  const std::size_t n = a.size();
  OrderMatrix out(order, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) = add(order, out(r, c), mul(order, a(r, k), b(k, c)));
    }
  return out;
}

OrderElement det_cofactor(const OrderMatrix& m) {
  const auto& order = m.order();
  const std::size_t n = m.size();
  if (n == 0) return order.one();
  if (n == 1) return m(0, 0);
  if (n == 2) return sub(order, mul(order, m(0, 0), m(1, 1)), mul(order, m(0, 1), m(1, 0)));
  OrderElement acc = order.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    OrderElement term = mul(order, m(0, c), det_cofactor(m.minor(0, c)));
    acc = (c % 2 == 0) ? add(order, acc, term) : sub(order, acc, term);
  }
  return acc;
}

OrderElement det_bareiss(const OrderMatrix& input) {
  const auto& order = input.order();
  const std::size_t n = input.size();
  if (n == 0) return order.one();
  OrderMatrix m = input;
  OrderElement previous = order.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return order.zero();
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      negate = !negate;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        OrderElement t = sub(order, mul(order, m(r, c), m(k, k)), mul(order, m(r, k), m(k, c)));
        auto q = divide_exact(order, t, previous);
        // Sylvester's identity makes every quotient a minor of the input.
        if (!q) throw Error(ErrorCode::InexactDivision, "fraction-free elimination step is not exact");
        m(r, c) = std::move(*q);
      }
      m(r, k) = order.zero();
    }
    previous = m(k, k);
  }
  OrderElement result = m(n - 1, n - 1);
  return negate ? neg(order, result) : result;
}

OrderElement det(const OrderMatrix& m) { return m.size() <= kCofactorLimit ? det_cofactor(m) : det_bareiss(m); }

OrderElement det_closed_form(const OrderDescriptor& order, const OrderElement& f, const OrderElement& g,
                             std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "closed form needs n >= 2");
  const OrderElement diff = sub(order, f, g);
  const OrderElement tail = add(order, f, scale(order, g, Integer(static_cast<unsigned long>(n - 1))));
  return mul(order, power(order, diff, static_cast<std::int64_t>(n - 1)), tail);
}

std::optional<OrderMatrix> invert(const OrderMatrix& m) {
  const auto& order = m.order();
  const std::size_t n = m.size();
  auto unit = is_unit(order, det(m));
  if (!unit) return std::nullopt;
  OrderMatrix inv(order, n);
  if (n == 1) {
    inv(0, 0) = unit->inverse;
  } else {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        OrderElement cof = det(m.minor(c, r));
        if ((r + c) % 2 == 1) cof = neg(order, cof);
        inv(r, c) = mul(order, cof, unit->inverse);
      }
  }
  const OrderMatrix id = OrderMatrix::identity(order, n);
  if (mat_mul(m, inv) != id || mat_mul(inv, m) != id)
    throw Error(ErrorCode::CheckFailed, "adjugate inverse does not multiply to the identity");
  return inv;
}

std::optional<SymmetricForm> recognize_symmetric_form(const OrderMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) return std::nullopt;
  const auto& order = m.order();
  if (n == 2) {
    if (m(0, 0) != m(1, 1) || m(0, 1) != m(1, 0) || m(0, 0) == m(0, 1)) return std::nullopt;
    return SymmetricForm{Permutation::identity(2), m(0, 0), m(0, 1)};
  }
  std::optional<OrderElement> f, g;
  std::vector<std::size_t> f_rows(n);
  for (std::size_t c = 0; c < n; ++c) {
    // With n >= 3 the common entry of the column is whichever value appears twice among the first three.
    const OrderElement& common = (m(0, c) == m(1, c) || m(0, c) == m(2, c)) ? m(0, c) : m(1, c);
    std::size_t odd_count = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (m(r, c) == common) continue;
      ++odd_count;
      f_rows[c] = r;
    }
    if (odd_count != 1) return std::nullopt;
    if (!g) {
      g = common;
      f = m(f_rows[c], c);
    } else if (*g != common || *f != m(f_rows[c], c)) {
      return std::nullopt;
    }
  }
  std::vector<bool> used(n, false);
  for (std::size_t r : f_rows) {
    if (used[r]) return std::nullopt;
    used[r] = true;
  }
  SymmetricForm form{Permutation(f_rows), *f, *g};
  if (apply_perm(form.sigma, circulant(order, form.f, form.g, n)) != m) return std::nullopt;
  return form;
}

std::optional<NaturalForm> natural_decomposition(const OrderMatrix& m) {
  const std::size_t n = m.size();
  const auto& order = m.order();
  std::vector<std::size_t> rows(n);
  std::optional<OrderElement> h;
  bool all_zero = true;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      ++nonzero;
      rows[c] = r;
    }
    if (nonzero == 0) continue;
    all_zero = false;
    if (nonzero != 1) return std::nullopt;
    if (!h) h = m(rows[c], c);
    if (*h != m(rows[c], c)) return std::nullopt;
  }
  if (all_zero) return NaturalForm{Permutation::identity(n), order.zero()};
  // A zero column next to nonzero ones cannot come from a single h.
  for (std::size_t c = 0; c < n; ++c) {
    bool column_zero = true;
    for (std::size_t r = 0; r < n; ++r) column_zero = column_zero && m(r, c).is_zero();
    if (column_zero) return std::nullopt;
  }
  std::vector<bool> used(n, false);
  for (std::size_t r : rows) {
    if (used[r]) return std::nullopt;
    used[r] = true;
  }
  return NaturalForm{Permutation(rows), *h};
}

bool is_natural_form(const OrderMatrix& m) { return natural_decomposition(m).has_value(); }

}  // namespace symaut
