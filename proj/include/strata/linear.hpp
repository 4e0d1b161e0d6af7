#pragma once

// Integer symplectic matrices acting on homology and positive-determinant
// real linear maps acting on the plane.

#include "strata/field.hpp"
#include "strata/intmat.hpp"

#include <array>
#include <iosfwd>

namespace strata {

// Standard symplectic form in the (a1, b1, ..., ag, bg) ordering.
IntMatrix standard_symplectic_form(int g);

// Change of symplectic basis: new basis element j is sum_k m(j,k) * old
// element k, so the period vector transforms as chi' = m * chi.
class SpMatrix {
 public:
  explicit SpMatrix(int g = 1) : g_(g), m_(IntMatrix::identity(2 * static_cast<std::size_t>(g))) {}
  SpMatrix(int g, IntMatrix m);  // throws unless 2g x 2g; symplecticity is not enforced

  static SpMatrix identity(int g) { return SpMatrix(g); }
  // (x_i, y_i) -> (a x_i + b y_i, c x_i + d y_i) inside handle i, ad - bc = 1.
  static SpMatrix handle_sl2(int g, int i, const Integer& a, const Integer& b, const Integer& c,
                             const Integer& d);
  static SpMatrix handle_swap(int g, int i, int j);
  // Generic elementary move: new element `target` += k * old element `source`,
  // with the compensating change that keeps the form (a symplectic transvection
  // pair when source and target lie in different handles).
  static SpMatrix elementary(int g, int target, int source, const Integer& k);

  int genus() const { return g_; }
  const IntMatrix& matrix() const { return m_; }
  IntMatrix& matrix() { return m_; }
  bool is_symplectic() const;

  // (this * other) applies `other` first.
  friend SpMatrix operator*(const SpMatrix& x, const SpMatrix& y);
  friend bool operator==(const SpMatrix&, const SpMatrix&) = default;
  SpMatrix inverse() const;  // -J m^T J

 private:
  int g_;
  IntMatrix m_;
};

std::ostream& operator<<(std::ostream& os, const SpMatrix& m);

// 2x2 matrix over the field acting on plane points as column vectors (re, im).
class GLPlus {
 public:
  GLPlus() : a_{1, 0, 0, 1} {}
  GLPlus(QuadElem a, QuadElem b, QuadElem c, QuadElem d);  // throws unless det > 0

  static GLPlus identity() { return {}; }
  static GLPlus scale(const QuadElem& s) { return {s, 0, 0, s}; }
  // The unique map sending (u, v) to (1, i); requires det2(u, v) > 0.
  static GLPlus to_unit_square(const PlanePoint& u, const PlanePoint& v);

  const QuadElem& operator()(int r, int c) const { return a_[static_cast<std::size_t>(2 * r + c)]; }
  QuadElem det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }
  PlanePoint apply(const PlanePoint& p) const {
    return {a_[0] * p.re + a_[1] * p.im, a_[2] * p.re + a_[3] * p.im};
  }
  GLPlus inverse() const;
  friend GLPlus operator*(const GLPlus& x, const GLPlus& y);
  friend bool operator==(const GLPlus&, const GLPlus&) = default;

 private:
  std::array<QuadElem, 4> a_;
};

std::ostream& operator<<(std::ostream& os, const GLPlus& a);

}  // namespace strata
