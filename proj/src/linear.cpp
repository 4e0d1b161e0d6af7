#include "strata/linear.hpp"

#include <ostream>
#include <stdexcept>

namespace strata {

IntMatrix standard_symplectic_form(int g) {
  IntMatrix j(2 * static_cast<std::size_t>(g), 2 * static_cast<std::size_t>(g));
  for (std::size_t i = 0; i < static_cast<std::size_t>(g); ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

SpMatrix::SpMatrix(int g, IntMatrix m) : g_(g), m_(std::move(m)) {
  const auto n = 2 * static_cast<std::size_t>(g);
  if (g < 1 || m_.rows() != n || m_.cols() != n)
    throw std::invalid_argument("symplectic matrix must be 2g x 2g");
}

SpMatrix SpMatrix::handle_sl2(int g, int i, const Integer& a, const Integer& b, const Integer& c,
                              const Integer& d) {
  if (a * d - b * c != 1) throw std::invalid_argument("handle move must have determinant 1");
  SpMatrix s(g);
  const auto x = 2 * static_cast<std::size_t>(i);
  s.m_(x, x) = a;
  s.m_(x, x + 1) = b;
  s.m_(x + 1, x) = c;
  s.m_(x + 1, x + 1) = d;
  return s;
}

SpMatrix SpMatrix::handle_swap(int g, int i, int j) {
  SpMatrix s(g);
  if (i == j) return s;
  const auto x = 2 * static_cast<std::size_t>(i);
  const auto y = 2 * static_cast<std::size_t>(j);
  for (std::size_t k = 0; k < 2; ++k) {
    s.m_(x + k, x + k) = 0;
    s.m_(y + k, y + k) = 0;
    s.m_(x + k, y + k) = 1;
    s.m_(y + k, x + k) = 1;
  }
  return s;
}

SpMatrix SpMatrix::elementary(int g, int target, int source, const Integer& k) {
  if (target == source) throw std::invalid_argument("elementary move needs distinct indices");
  SpMatrix s(g);
  const auto t = static_cast<std::size_t>(target);
  const auto src = static_cast<std::size_t>(source);
  s.m_(t, src) = k;
  if (t / 2 == src / 2) return s;
  // Symplectic duals: a_i <-> b_i.
  const auto t_dual = t ^ 1U;
  const auto s_dual = src ^ 1U;
  s.m_(s_dual, t_dual) = -k;
  if (s.is_symplectic()) return s;
  s.m_(s_dual, t_dual) = k;
  return s;
}

bool SpMatrix::is_symplectic() const {
  const IntMatrix j = standard_symplectic_form(g_);
  return m_.transpose() * j * m_ == j;
}

SpMatrix operator*(const SpMatrix& x, const SpMatrix& y) {
  if (x.g_ != y.g_) throw std::invalid_argument("genus mismatch in symplectic product");
  return {x.g_, x.m_ * y.m_};
}

SpMatrix SpMatrix::inverse() const {
  const IntMatrix j = standard_symplectic_form(g_);
  IntMatrix inv = j * m_.transpose() * j;
  for (std::size_t r = 0; r < inv.rows(); ++r)
    for (std::size_t c = 0; c < inv.cols(); ++c) inv(r, c) = -inv(r, c);
  return {g_, inv};
}

std::ostream& operator<<(std::ostream& os, const SpMatrix& m) {
  os << m.genus() << '\n' << m.matrix();
  return os;
}

GLPlus::GLPlus(QuadElem a, QuadElem b, QuadElem c, QuadElem d) : a_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (qsign(det()) <= 0) throw std::invalid_argument("GL2+ map must have positive determinant");
}

GLPlus GLPlus::to_unit_square(const PlanePoint& u, const PlanePoint& v) {
  const QuadElem det = det2(u, v);
  if (qsign(det) <= 0) throw std::invalid_argument("basis must be positively oriented");
  return {v.im / det, -v.re / det, -u.im / det, u.re / det};
}

GLPlus GLPlus::inverse() const {
  const QuadElem d = det();
  return {a_[3] / d, -a_[1] / d, -a_[2] / d, a_[0] / d};
}

GLPlus operator*(const GLPlus& x, const GLPlus& y) {
  return {x.a_[0] * y.a_[0] + x.a_[1] * y.a_[2], x.a_[0] * y.a_[1] + x.a_[1] * y.a_[3],
          x.a_[2] * y.a_[0] + x.a_[3] * y.a_[2], x.a_[2] * y.a_[1] + x.a_[3] * y.a_[3]};
}

std::ostream& operator<<(std::ostream& os, const GLPlus& a) {
  return os << a(0, 0) << ' ' << a(0, 1) << '\n' << a(1, 0) << ' ' << a(1, 1) << '\n';
}

}  // namespace strata
