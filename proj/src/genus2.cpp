#include "strata/sp_action.hpp"

namespace strata {

namespace {

// Q-rank of {x0, x1} in {1, sqrt d} coordinates is 2.
bool dense_pair(const QuadElem& x0, const QuadElem& x1) {
  return x0.rational_part() * x1.sqrt_part() - x0.sqrt_part() * x1.rational_part() != 0;
}

// Smallest e >= 0 with 2^e |v| >= 1/2, returned as -sign(v) 2^e.
Integer halving_power(const QuadElem& v) {
  Integer k = 1;
  const QuadElem half(Rational(1, 2));
  while (QuadElem(Rational(k)) * abs(v) < half) k *= 2;
  return qsign(v) > 0 ? Integer(-k) : k;
}

void require_normalized(const PeriodVector& chi) {
  if (chi.genus() != 2) throw PreconditionError("genus-2 operation on a genus " + std::to_string(chi.genus()) + " character");
  if (!(chi.a(0) == PlanePoint(1) && chi.b(0) == PlanePoint::i()))
    throw PreconditionError("handle 1 must be normalized to (1, i)");
}

SpStep halve_impl(const PeriodVector& chi) {
  const int g = 2;
  const QuadElem x = chi.a(1).re;
  const QuadElem yp = chi.b(1).im;
  const QuadElem one(1);
  SpStep s{SpMatrix(g), chi};
  bool use_b = false;
  if (!yp.is_zero() && abs(yp) < one) use_b = true;
  else if (!x.is_zero() && abs(x) < one) use_b = false;
  else use_b = !yp.is_zero() && abs(yp) <= one;
  if (use_b) {
    s.gamma = SpMatrix::elementary(g, 1, 3, halving_power(yp));
  } else {
    if (x.is_zero() || abs(x) > one) throw InternalError("halve_handle: no admissible coordinate");
    s.gamma = SpMatrix::elementary(g, 0, 2, halving_power(x));
  }
  s.chi = apply_sp(s.gamma, chi);
  const QuadElem d1 = s.chi.handle_det(0);
  if (qsign(d1) < 0 || QuadElem(2) * d1 > chi.handle_det(0)) throw InternalError("halve_handle postcondition failed");
  return s;
}

}  // namespace

IntPair dense_interval_hit(const QuadElem& x0, const QuadElem& x1, const QuadElem& lo, const QuadElem& hi) {
  if (!(lo < hi)) throw PreconditionError("dense_interval_hit: empty interval");
  if (!dense_pair(x0, x1)) throw PreconditionError("dense_interval_hit: Z x0 + Z x1 is not dense");
  struct Term {
    QuadElem r;
    Integer n, m;
  };
  Term u{x0, 1, 0};
  Term v{x1, 0, 1};
  auto make_positive = [](Term& t) {
    if (qsign(t.r) < 0) t = {-t.r, -t.n, -t.m};
  };
  make_positive(u);
  make_positive(v);
  const QuadElem width = hi - lo;
  for (int it = 0; it < 100000; ++it) {
    if (u.r < v.r) std::swap(u, v);
    if (v.r < width) {
      const Integer steps = floor(lo / v.r) + 1;
      const QuadElem value = QuadElem(Rational(steps)) * v.r;
      if (!(lo < value && value < hi)) throw InternalError("dense_interval_hit: stepping missed the interval");
      return {steps * v.n, steps * v.m};
    }
    const Integer q = floor(u.r / v.r);
    u = {u.r - QuadElem(Rational(q)) * v.r, u.n - q * v.n, u.m - q * v.m};
  }
  throw InternalError("dense_interval_hit: iteration cap");
}

SpStep halve_handle(const PeriodVector& chi) {
  require_normalized(chi);
  if (!chi.b(1).re.is_zero()) throw PreconditionError("halve_handle: Re b2 must be 0");
  if (qsign(chi.handle_det(1)) <= 0) throw PreconditionError("halve_handle: det(a2, b2) must be positive");
  if (chi.handle_det(1) > chi.handle_det(0)) throw PreconditionError("halve_handle: det(a2, b2) exceeds det(a1, b1)");
  return halve_impl(chi);
}

SpStep resolve_zero_det(const PeriodVector& chi) {
  require_normalized(chi);
  if (qsign(chi.handle_det(1)) != 0) throw PreconditionError("resolve_zero_det: det(a2, b2) must be 0");
  if (image_group(chi).is_lattice()) throw PreconditionError("resolve_zero_det: image is a lattice");
  const int g = 2;
  SpStep s{SpMatrix(g), chi};
  auto apply = [&](const SpMatrix& e) {
    s.gamma = e * s.gamma;
    s.chi = apply_sp(e, s.chi);
  };
  if (s.chi.a(1).is_zero()) apply(SpMatrix::handle_sl2(g, 1, 0, 1, -1, 0));
  if (s.chi.a(1).is_zero()) throw PreconditionError("resolve_zero_det: handle 2 is zero");
  if (!s.chi.b(1).is_zero()) {
    const QuadElem lambda = dot(s.chi.a(1), s.chi.b(1)) / norm_sq(s.chi.a(1));
    if (!lambda.is_rational()) throw PreconditionError("resolve_zero_det: b2 / a2 is irrational");
    apply(handle_euclid(s.chi, 1, EuclidCoordinate::plane, EuclidZero::b).gamma);
  }
  const PlanePoint z = s.chi.a(1);
  QuadElem coord;
  if (!z.re.is_rational()) {
    coord = z.re;
  } else if (!z.im.is_rational()) {
    apply(SpMatrix::handle_sl2(g, 0, 0, 1, -1, 0));
    coord = z.im;
  } else {
    throw InternalError("resolve_zero_det: both coordinates rational, image would be a lattice");
  }
  // Shift the irrational coordinate into (0, 1), then split the volume.
  apply(SpMatrix::elementary(g, 1, 3, floor(coord)));
  apply(SpMatrix::elementary(g, 0, 2, -1));
  const QuadElem d1 = s.chi.handle_det(0);
  const QuadElem d2 = s.chi.handle_det(1);
  if (qsign(d1) <= 0 || qsign(d2) <= 0 || d1 == d2 || d1 + d2 != QuadElem(1))
    throw InternalError("resolve_zero_det postcondition failed");
  return s;
}

NormalFormResult genus2_normalize(const PeriodVector& chi) {
  if (chi.genus() != 2) throw PreconditionError("genus2_normalize needs genus 2");
  if (qsign(volume(chi)) <= 0) throw PreconditionError("genus2_normalize needs positive volume");
  if (image_group(chi).is_lattice()) throw PreconditionError("genus2_normalize: image is a lattice");
  const int g = 2;
  NormalFormResult r;
  r.gamma = SpMatrix(g);
  r.chi_prime = chi;
  auto sp = [&](const SpMatrix& e) {
    r.gamma = e * r.gamma;
    r.chi_prime = apply_sp(e, r.chi_prime);
  };
  auto gl = [&](const GLPlus& b) {
    r.A = b * r.A;
    r.chi_prime = apply_gl(b, r.chi_prime);
  };
  const QuadElem two(2), three(3);
  bool done = false;
  for (int it = 0; it < 10000 && !done; ++it) {
    if (r.chi_prime.handle_det(0) < r.chi_prime.handle_det(1)) sp(SpMatrix::handle_swap(g, 0, 1));
    gl(GLPlus::to_unit_square(r.chi_prime.a(0), r.chi_prime.b(0)));
    const QuadElem d2 = r.chi_prime.handle_det(1);
    const QuadElem vol = QuadElem(1) + d2;
    if (qsign(d2) > 0 && two * d2 <= QuadElem(1)) {
      done = true;
      break;
    }
    if (!dense_pair(r.chi_prime.a(1).re, r.chi_prime.b(1).re) && dense_pair(r.chi_prime.a(1).im, r.chi_prime.b(1).im)) {
      gl(GLPlus(0, 1, -1, 0));
      sp(SpMatrix::handle_sl2(g, 0, 0, 1, -1, 0));
    }
    if (dense_pair(r.chi_prime.a(1).re, r.chi_prime.b(1).re)) {
      const IntPair nm = dense_interval_hit(r.chi_prime.a(1).re, r.chi_prime.b(1).re, two * vol / three - QuadElem(1),
                                            vol - QuadElem(1));
      const Integer k = gcd(nm.n, nm.m);
      if (k == 0) continue;
      const Integer n = nm.n / k;
      const Integer m = nm.m / k;
      const ExtGcd e = ext_gcd(n, m);
      sp(SpMatrix::handle_sl2(g, 1, n, m, -e.t, e.s));
      sp(SpMatrix::elementary(g, 0, 2, k));
      continue;
    }
    sp(handle_euclid(r.chi_prime, 1, EuclidCoordinate::re, EuclidZero::b).gamma);
    if (qsign(r.chi_prime.handle_det(1)) == 0) sp(resolve_zero_det(r.chi_prime).gamma);
    else sp(halve_impl(r.chi_prime).gamma);
  }
  if (!done) throw InternalError("genus2_normalize: iteration cap reached");
  const GaussResult red = gauss_reduce(r.chi_prime.a(1), r.chi_prime.b(1));
  sp(SpMatrix::handle_sl2(g, 1, red.u.a, red.u.b, red.u.c, red.u.d));
  r.form_tag = FormTag::genus2_form;
  const QuadElem d1 = r.chi_prime.handle_det(0);
  const QuadElem d2 = r.chi_prime.handle_det(1);
  if (qsign(d2) <= 0 || two * d2 > d1 || !r.gamma.is_symplectic() || !r.recomputes(chi))
    throw InternalError("genus2_normalize postcondition failed");
  return r;
}

}  // namespace strata
