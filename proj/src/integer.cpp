#include "symaut/integer.hpp"

#include <utility>

#include "symaut/error.hpp"

namespace symaut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::NotTotallyReal: return "NotTotallyReal";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NegativePowerOfNonUnit: return "NegativePowerOfNonUnit";
    case ErrorCode::InvalidSuborder: return "InvalidSuborder";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::ZeroG: return "ZeroG";
    case ErrorCode::ParityFailure: return "ParityFailure";
    case ErrorCode::UnitNotFound: return "UnitNotFound";
    case ErrorCode::SuborderPowerNotFound: return "SuborderPowerNotFound";
    case ErrorCode::CheckFailed: return "CheckFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
  }
  return "Unknown";
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  bool ok = !s.empty();
  for (std::size_t k = 0; k < s.size() && ok; ++k) {
    const char c = s[k];
    ok = (c >= '0' && c <= '9') || (k == 0 && c == '-' && s.size() > 1);
  }
  if (!ok) throw Error(ErrorCode::InvalidArgument, "not a decimal integer: '" + std::string(text) + "'");
  return Integer(s, 10);
}

std::string to_decimal(const Integer& value) { return value.get_str(10); }

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix product size mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(r, k)) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(m(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        Integer t = m(r, c) * m(k, k) - m(r, k) * m(k, c);
        mpz_divexact(m(r, c).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      m(r, k) = 0;
    }
    previous = m(k, k);
  }
  Integer result = m(n - 1, n - 1);
  return sign < 0 ? Integer(-result) : result;
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "charpoly of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Integer> coeffs(n + 1);
  coeffs[n] = 1;
  IntMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[n - k + 1];
    m = std::move(next);
    IntMatrix am = a * m;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), trace.get_mpz_t(), static_cast<unsigned long>(k));
    coeffs[n - k] = -q;
  }
  return coeffs;
}

bool solve_left_rational(const IntMatrix& m, const std::vector<Integer>& target,
                         std::vector<Rational>& solution) {
  const std::size_t n = m.rows();
  if (m.cols() != n || target.size() != n) return false;
  // Augmented system m^T x^T = target^T.
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m(c, r);
    aug[r][n] = target[r];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(aug[pivot][col]) == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(aug[pivot], aug[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(aug[r][col]) == 0) continue;
      const Rational factor = aug[r][col] / aug[col][col];
      for (std::size_t c = col; c <= n; ++c) aug[r][c] -= factor * aug[col][c];
    }
  }
  solution.assign(n, Rational(0));
  for (std::size_t r = 0; r < n; ++r) {
    solution[r] = aug[r][n] / aug[r][r];
    solution[r].canonicalize();
  }
  return true;
}

}  // namespace symaut
