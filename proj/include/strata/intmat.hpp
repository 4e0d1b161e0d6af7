#pragma once

// Small dense integer matrices over GMP integers: Hermite normal form,
// products, and the extended gcd helpers shared by the lattice code.

#include "strata/field.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace strata {

using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend IntVector operator*(const IntMatrix& x, const IntVector& v);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct ExtGcd {
  Integer g;  // g = s*a + t*b, g >= 0
  Integer s;
  Integer t;
};
ExtGcd ext_gcd(const Integer& a, const Integer& b);
Integer gcd_of(const IntVector& v);

// Row-style Hermite normal form of the lattice spanned by the rows. Returns
// the nonzero rows (a Z-basis of the row lattice) in echelon form with
// positive pivots and reduced entries above each pivot.
std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t cols);

}  // namespace strata
