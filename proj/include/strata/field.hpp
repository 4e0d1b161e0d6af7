#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt d) and in the plane with
// coordinates in that field.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strata {

using Rational = mpq_class;
using Integer = mpz_class;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : FieldError {
  DivisionByZero() : FieldError("division by zero") {}
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

bool is_squarefree(std::int64_t d);

// The field Q(sqrt d). d = 1 means the rationals.
class FieldContext {
 public:
  explicit FieldContext(std::int64_t d = 1);
  std::int64_t d() const { return d_; }
  bool operator==(const FieldContext&) const = default;

 private:
  std::int64_t d_;
};

// p + q*sqrt(d). Elements with q = 0 are pure rationals and combine with any
// field; combining two irrational elements of different fields throws.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long v) : p_(v) {}  // NOLINT(google-explicit-constructor)
  QuadElem(Rational p) : p_(std::move(p)) { p_.canonicalize(); }  // NOLINT
  QuadElem(Rational p, Rational q, std::int64_t d);

  static QuadElem sqrt_of(std::int64_t d) { return {0, 1, d}; }

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt_part() const { return q_; }
  std::int64_t d() const { return d_; }

  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_rational() const { return sgn(q_) == 0; }
  bool is_integer() const { return is_rational() && p_.get_den() == 1; }
  Integer to_integer() const;  // throws unless is_integer()

  QuadElem conjugate() const { return {p_, -q_, d_}; }
  Rational norm() const { return p_ * p_ - q_ * q_ * d_; }

  QuadElem operator-() const { return {-p_, -q_, d_}; }
  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
  QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
  QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
  QuadElem& operator/=(const QuadElem& y) { return *this = *this / y; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.p_ == y.p_ && x.q_ == y.q_ && (x.is_rational() || x.d_ == y.d_);
  }
  friend bool operator<(const QuadElem& x, const QuadElem& y);
  friend bool operator>(const QuadElem& x, const QuadElem& y) { return y < x; }
  friend bool operator<=(const QuadElem& x, const QuadElem& y) { return !(y < x); }
  friend bool operator>=(const QuadElem& x, const QuadElem& y) { return !(x < y); }

  double to_double() const;
  std::string str() const;

 private:
  void normalize();

  Rational p_{0};
  Rational q_{0};
  std::int64_t d_ = 1;
};

// Exact sign of p + q*sqrt(d): -1, 0 or +1.
int qsign(const QuadElem& x);
QuadElem abs(const QuadElem& x);
Integer floor(const QuadElem& x);
Integer ceil(const QuadElem& x);
QuadElem min(const QuadElem& x, const QuadElem& y);
QuadElem max(const QuadElem& x, const QuadElem& y);

// "p/q" or "p/q+r/s*sqrt(d)" (also "sqrt(d)", "-r*sqrt(d)", integers).
QuadElem parse_quad(std::string_view text, const FieldContext& ctx);
std::ostream& operator<<(std::ostream& os, const QuadElem& x);

struct PlanePoint {
  QuadElem re;
  QuadElem im;

  PlanePoint() = default;
  PlanePoint(QuadElem r, QuadElem i = QuadElem{}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  static PlanePoint i() { return {0, 1}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  PlanePoint operator-() const { return {-re, -im}; }
  friend PlanePoint operator+(const PlanePoint& u, const PlanePoint& v) {
    return {u.re + v.re, u.im + v.im};
  }
  friend PlanePoint operator-(const PlanePoint& u, const PlanePoint& v) {
    return {u.re - v.re, u.im - v.im};
  }
  // Complex multiplication.
  friend PlanePoint operator*(const PlanePoint& u, const PlanePoint& v) {
    return {u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re};
  }
  friend PlanePoint operator*(const QuadElem& s, const PlanePoint& v) { return {s * v.re, s * v.im}; }
  PlanePoint& operator+=(const PlanePoint& v) { return *this = *this + v; }
  PlanePoint& operator-=(const PlanePoint& v) { return *this = *this - v; }
  friend bool operator==(const PlanePoint& u, const PlanePoint& v) = default;

  std::string str() const;
};

// Im(conj(u) v) = u.re v.im - u.im v.re.
QuadElem det2(const PlanePoint& u, const PlanePoint& v);
QuadElem dot(const PlanePoint& u, const PlanePoint& v);
QuadElem norm_sq(const PlanePoint& u);

// Plane point literal "<re> <im>" (two field literals separated by blanks);
// a lone "<re>" means im = 0.
PlanePoint parse_point(std::string_view text, const FieldContext& ctx);
std::ostream& operator<<(std::ostream& os, const PlanePoint& u);

}  // namespace strata
