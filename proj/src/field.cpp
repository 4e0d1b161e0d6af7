#include "strata/field.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace strata {

bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t k = 2; k * k <= d; ++k) {
    if (d % (k * k) == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(std::int64_t d) : d_(d) {
  if (!is_squarefree(d)) throw FieldError("field parameter d must be squarefree and >= 1, got " + std::to_string(d));
}

QuadElem::QuadElem(Rational p, Rational q, std::int64_t d) : p_(std::move(p)), q_(std::move(q)), d_(d) {
  normalize();
}

void QuadElem::normalize() {
  p_.canonicalize();
  q_.canonicalize();
  if (sgn(q_) != 0 && d_ == 1) {
    p_ += q_;
    q_ = 0;
  }
  if (sgn(q_) == 0) d_ = 1;
}

namespace {

std::int64_t common_d(const QuadElem& x, const QuadElem& y) {
  if (x.is_rational()) return y.d();
  if (y.is_rational() || x.d() == y.d()) return x.d();
  throw FieldError("mixing elements of Q(sqrt " + std::to_string(x.d()) + ") and Q(sqrt " +
                   std::to_string(y.d()) + ")");
}

}  // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  const auto d = common_d(x, y);
  return {x.p_ + y.p_, x.q_ + y.q_, d};
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  const auto d = common_d(x, y);
  return {x.p_ - y.p_, x.q_ - y.q_, d};
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  const auto d = common_d(x, y);
  return {x.p_ * y.p_ + x.q_ * y.q_ * d, x.p_ * y.q_ + x.q_ * y.p_, d};
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) {
  if (y.is_zero()) throw DivisionByZero();
  const auto d = common_d(x, y);
  const Rational n = y.norm();
  const QuadElem num = x * y.conjugate();
  return {num.p_ / n, num.q_ / n, d};
}

int qsign(const QuadElem& x) {
  const int sp = sgn(x.rational_part());
  const int sq = sgn(x.sqrt_part());
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with q^2 d. Equality is impossible for q != 0.
  const Rational p2 = x.rational_part() * x.rational_part();
  const Rational q2d = x.sqrt_part() * x.sqrt_part() * x.d();
  return p2 > q2d ? sp : sq;
}

bool operator<(const QuadElem& x, const QuadElem& y) { return qsign(y - x) > 0; }

QuadElem abs(const QuadElem& x) { return qsign(x) < 0 ? -x : x; }
QuadElem min(const QuadElem& x, const QuadElem& y) { return y < x ? y : x; }
QuadElem max(const QuadElem& x, const QuadElem& y) { return x < y ? y : x; }

Integer QuadElem::to_integer() const {
  if (!is_integer()) throw FieldError("element " + str() + " is not an integer");
  return p_.get_num();
}

Integer floor(const QuadElem& x) {
  // floor(p) + floor(q sqrt d) is within one of the answer.
  Integer fp;
  mpz_fdiv_q(fp.get_mpz_t(), x.rational_part().get_num_mpz_t(), x.rational_part().get_den_mpz_t());
  Integer fq = 0;
  if (!x.is_rational()) {
    // q sqrt d = sign(q) sqrt(a^2 d) / b with q = a/b.
    const Integer a = abs(x.sqrt_part().get_num());
    const Integer b = x.sqrt_part().get_den();
    Integer r2 = a * a * x.d();
    Integer root;
    mpz_sqrt(root.get_mpz_t(), r2.get_mpz_t());
    if (sgn(x.sqrt_part()) > 0) {
      mpz_fdiv_q(fq.get_mpz_t(), root.get_mpz_t(), b.get_mpz_t());
    } else {
      Integer neg = -(root + 1);
      mpz_fdiv_q(fq.get_mpz_t(), neg.get_mpz_t(), b.get_mpz_t());
    }
  }
  Integer n = fp + fq;
  while (qsign(x - QuadElem(Rational(n))) < 0) n -= 1;
  while (qsign(x - QuadElem(Rational(n + 1))) >= 0) n += 1;
  return n;
}

Integer ceil(const QuadElem& x) { return -floor(-x); }

double QuadElem::to_double() const {
  return p_.get_d() + q_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string QuadElem::str() const {
  if (is_rational()) return p_.get_str();
  std::string out;
  Rational q = q_;
  if (sgn(p_) != 0) {
    out = p_.get_str();
    out += sgn(q) < 0 ? "-" : "+";
    q = abs(q);
  } else if (sgn(q) < 0) {
    out = "-";
    q = abs(q);
  }
  if (q != 1) out += q.get_str() + "*";
  out += "sqrt(" + std::to_string(d_) + ")";
  return out;
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.str(); }

namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, const FieldContext& ctx) : s_(text), ctx_(ctx) {}

  QuadElem parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("empty field literal");
    QuadElem value = term(false);
    skip_ws();
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c != '+' && c != '-') fail("unexpected character '" + std::string(1, c) + "'");
      ++pos_;
      value += term(c == '-');
      skip_ws();
    }
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view lit) {
    if (s_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  Integer digits() {
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  QuadElem sqrt_factor() {
    if (!accept("sqrt(")) fail("expected sqrt(");
    const Integer d = digits();
    if (!accept(")")) fail("expected ')'");
    if (d != ctx_.d()) fail("sqrt(" + d.get_str() + ") does not match field d=" + std::to_string(ctx_.d()));
    return QuadElem::sqrt_of(ctx_.d());
  }

  QuadElem term(bool negate) {
    skip_ws();
    if (accept("-")) negate = !negate;
    else accept("+");
    QuadElem value;
    if (s_.substr(pos_, 4) == "sqrt") {
      value = sqrt_factor();
    } else {
      Integer num = digits();
      Integer den = 1;
      if (accept("/")) {
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      value = QuadElem(Rational(num, den));
      if (accept("*")) value *= sqrt_factor();
    }
    return negate ? -value : value;
  }

  std::string_view s_;
  const FieldContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadElem parse_quad(std::string_view text, const FieldContext& ctx) { return LiteralParser(text, ctx).parse(); }

QuadElem det2(const PlanePoint& u, const PlanePoint& v) { return u.re * v.im - u.im * v.re; }
QuadElem dot(const PlanePoint& u, const PlanePoint& v) { return u.re * v.re + u.im * v.im; }
QuadElem norm_sq(const PlanePoint& u) { return dot(u, u); }

std::string PlanePoint::str() const { return re.str() + " " + im.str(); }

std::ostream& operator<<(std::ostream& os, const PlanePoint& u) { return os << u.str(); }

PlanePoint parse_point(std::string_view text, const FieldContext& ctx) {
  std::size_t b = 0;
  while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  std::size_t e = b;
  while (e < text.size() && !std::isspace(static_cast<unsigned char>(text[e]))) ++e;
  if (b == e) throw ParseError("expected plane point", b);
  std::size_t b2 = e;
  while (b2 < text.size() && std::isspace(static_cast<unsigned char>(text[b2]))) ++b2;
  std::size_t e2 = b2;
  while (e2 < text.size() && !std::isspace(static_cast<unsigned char>(text[e2]))) ++e2;
  std::size_t rest = e2;
  while (rest < text.size() && std::isspace(static_cast<unsigned char>(text[rest]))) ++rest;
  if (rest != text.size()) throw ParseError("trailing input after plane point", rest);
  PlanePoint out;
  try {
    out.re = parse_quad(text.substr(b, e - b), ctx);
    out.im = b2 == e2 ? QuadElem{} : parse_quad(text.substr(b2, e2 - b2), ctx);
  } catch (const ParseError& err) {
    throw ParseError(err.what(), b);
  }
  return out;
}

}  // namespace strata
