#include "strata/intmat.hpp"

#include <ostream>
#include <stdexcept>

namespace strata {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i)
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const Integer& xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

IntVector operator*(const IntMatrix& x, const IntVector& v) {
  if (x.cols_ != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  IntVector out(x.rows_, 0);
  for (std::size_t i = 0; i < x.rows_; ++i)
    for (std::size_t k = 0; k < x.cols_; ++k) out[i] += x(i, k) * v[k];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os;
}

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t cols) {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Fold every lower entry of column c into the pivot row with gcd steps.
    for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Integer a = rows[pivot_row][c];
      const Integer b = rows[r][c];
      const ExtGcd eg = ext_gcd(a, b);
      const Integer ag = a / eg.g;
      const Integer bg = b / eg.g;
      for (std::size_t k = 0; k < cols; ++k) {
        const Integer top = eg.s * rows[pivot_row][k] + eg.t * rows[r][k];
        const Integer bottom = ag * rows[r][k] - bg * rows[pivot_row][k];
        rows[pivot_row][k] = top;
        rows[r][k] = bottom;
      }
    }
    if (rows[pivot_row][c] == 0) continue;
    if (rows[pivot_row][c] < 0)
      for (auto& x : rows[pivot_row]) x = -x;
    const Integer& p = rows[pivot_row][c];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

}  // namespace strata
