#include "strata/sp_action.hpp"

#include <sstream>

namespace strata {

std::string to_string(FormTag t) {
  switch (t) {
    case FormTag::lattice_form: return "lattice_form";
    case FormTag::generic_form: return "generic_form";
    case FormTag::genus2_form: return "genus2_form";
  }
  return "?";
}

FormTag form_tag_from_string(const std::string& s) {
  if (s == "lattice_form") return FormTag::lattice_form;
  if (s == "generic_form") return FormTag::generic_form;
  if (s == "genus2_form") return FormTag::genus2_form;
  throw ParseError("unknown form tag '" + s + "'", 0);
}

bool NormalFormResult::recomputes(const PeriodVector& chi) const {
  return chi_prime == apply_gl(A, apply_sp(gamma, chi));
}

namespace {

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Accumulates symplectic moves applied to an integer vector.
struct IntTracker {
  SpMatrix m;
  IntVector w;
  void apply(const SpMatrix& e) {
    m = e * m;
    w = e.matrix() * w;
  }
};

}  // namespace

SpMatrix primitive_to_basis(const IntVector& u) {
  if (u.size() < 2 || u.size() % 2 != 0) throw PreconditionError("vector length must be 2g");
  if (gcd_of(u) != 1) throw PreconditionError("vector is not primitive (gcd " + gcd_of(u).get_str() + ")");
  const int g = static_cast<int>(u.size() / 2);
  IntTracker t{SpMatrix(g), u};
  for (int i = 0; i < g; ++i) {
    const auto a = 2 * static_cast<std::size_t>(i);
    while (t.w[a + 1] != 0) {
      const Integer q = trunc_div(t.w[a], t.w[a + 1]);
      if (q != 0) t.apply(SpMatrix::handle_sl2(g, i, 1, -q, 0, 1));
      t.apply(SpMatrix::handle_sl2(g, i, 0, 1, -1, 0));
    }
  }
  for (int i = 1; i < g; ++i) {
    const auto a = 2 * static_cast<std::size_t>(i);
    const int ai = 2 * i;
    while (t.w[0] != 0 && t.w[a] != 0) {
      if (abs(t.w[0]) >= abs(t.w[a])) t.apply(SpMatrix::elementary(g, 0, ai, -trunc_div(t.w[0], t.w[a])));
      else t.apply(SpMatrix::elementary(g, ai, 0, -trunc_div(t.w[a], t.w[0])));
    }
    if (t.w[0] == 0 && t.w[a] != 0) {
      t.apply(SpMatrix::elementary(g, 0, ai, 1));
      t.apply(SpMatrix::elementary(g, ai, 0, -1));
    }
  }
  if (t.w[0] == -1) t.apply(SpMatrix::handle_sl2(g, 0, -1, 0, 0, -1));
  IntVector e1(u.size(), 0);
  e1[0] = 1;
  if (t.w != e1 || !t.m.is_symplectic()) throw InternalError("primitive_to_basis failed to reach e1");
  return t.m;
}

std::optional<SpMatrix> orbit_map(const IntVector& u, const IntVector& v) {
  if (u.size() != v.size()) throw PreconditionError("orbit_map: length mismatch");
  const Integer gu = gcd_of(u);
  const Integer gv = gcd_of(v);
  if (gu == 0 || gv == 0) throw PreconditionError("orbit_map: zero vector");
  if (gu != gv) return std::nullopt;
  IntVector pu = u;
  IntVector pv = v;
  for (auto& x : pu) x /= gu;
  for (auto& x : pv) x /= gv;
  return primitive_to_basis(pv).inverse() * primitive_to_basis(pu);
}

SpStep handle_euclid(const PeriodVector& chi, int handle, EuclidCoordinate coord, EuclidZero zero,
                     int max_iterations) {
  const int g = chi.genus();
  if (handle < 0 || handle >= g) throw PreconditionError("handle index out of range");
  SpStep s{SpMatrix(g), chi};
  auto apply = [&](const SpMatrix& e) {
    s.gamma = e * s.gamma;
    s.chi = apply_sp(e, s.chi);
  };
  PlanePoint direction;
  if (coord == EuclidCoordinate::plane) {
    if (qsign(det2(chi.a(handle), chi.b(handle))) != 0)
      throw PreconditionError("handle values are not collinear; their group is not discrete");
    direction = chi.a(handle).is_zero() ? chi.b(handle) : chi.a(handle);
  }
  auto value = [&](const PlanePoint& p) {
    switch (coord) {
      case EuclidCoordinate::re: return p.re;
      case EuclidCoordinate::im: return p.im;
      case EuclidCoordinate::plane: return dot(p, direction);
    }
    return QuadElem{};
  };
  int iterations = 0;
  for (;;) {
    const QuadElem x = value(s.chi.a(handle));
    const QuadElem y = value(s.chi.b(handle));
    if (x.is_zero() || y.is_zero()) break;
    if (++iterations > max_iterations)
      throw PreconditionError("handle_euclid exceeded its iteration cap; the values are not commensurable");
    if (abs(x) >= abs(y)) {
      const QuadElem r = x / y;
      const Integer q = qsign(r) >= 0 ? floor(r) : -floor(-r);
      apply(SpMatrix::handle_sl2(g, handle, 1, -q, 0, 1));
    } else {
      const QuadElem r = y / x;
      const Integer q = qsign(r) >= 0 ? floor(r) : -floor(-r);
      apply(SpMatrix::handle_sl2(g, handle, 1, 0, -q, 1));
    }
  }
  const bool a_zero = value(s.chi.a(handle)).is_zero();
  const bool b_zero = value(s.chi.b(handle)).is_zero();
  if (zero == EuclidZero::a && !a_zero) apply(SpMatrix::handle_sl2(g, handle, 0, -1, 1, 0));
  if (zero == EuclidZero::b && !b_zero) apply(SpMatrix::handle_sl2(g, handle, 0, 1, -1, 0));
  return s;
}

namespace {

bool in_lattice(const PlanePoint& p, const PlanePoint& v1, const PlanePoint& v2) {
  const QuadElem det = det2(v1, v2);
  return (det2(p, v2) / det).is_integer() && (det2(v1, p) / det).is_integer();
}

IntVector integer_parts(const PeriodVector& chi, bool imaginary) {
  IntVector out;
  for (const auto& p : chi.entries()) out.push_back((imaginary ? p.im : p.re).to_integer());
  return out;
}

struct Tracker {
  SpMatrix gamma;
  PeriodVector chi;
  void apply(const SpMatrix& e) {
    gamma = e * gamma;
    chi = apply_sp(e, chi);
  }
};

}  // namespace

NormalFormResult lattice_normal_form(const PeriodVector& chi, const std::vector<int>& m_in) {
  const int g = chi.genus();
  if (g < 2) throw PreconditionError("lattice normal form needs genus >= 2");
  std::vector<int> m = m_in;
  if (static_cast<int>(m.size()) == g - 2) m.insert(m.begin(), 1);
  if (static_cast<int>(m.size()) != g - 1) throw PreconditionError("m must list m_2..m_g");
  if (m[0] != 1) throw PreconditionError("m_2 must be 1");
  for (int x : m)
    if (x != 1 && x != 2) throw PreconditionError("m_i must be 1 or 2");

  const ImageGroupReport img = image_group(chi);
  if (!img.is_lattice()) throw PreconditionError("image of the character is not a lattice");
  const QuadElem vol = volume(chi);
  if (vol < QuadElem(2) * *img.covolume)
    throw PreconditionError("volume " + vol.str() + " < 2 * covolume " + img.covolume->str());

  NormalFormResult res;
  const auto& [v1, v2] = *img.lattice_basis;
  const bool standard = *img.covolume == QuadElem(1) && in_lattice(PlanePoint(1), v1, v2) &&
                        in_lattice(PlanePoint::i(), v1, v2);
  res.A = standard ? GLPlus::identity() : GLPlus::to_unit_square(v1, v2);
  Tracker t{SpMatrix(g), apply_gl(res.A, chi)};

  // Imaginary parts to e_{b1}.
  t.apply(SpMatrix::handle_sl2(g, 0, 0, -1, 1, 0) * primitive_to_basis(integer_parts(t.chi, true)));

  // Real parts of handles 2..g to (0, l, 0, ..., 0).
  IntVector rest;
  {
    const IntVector re = integer_parts(t.chi, false);
    rest.assign(re.begin() + 2, re.end());
  }
  const Integer c = gcd_of(rest);
  if (c == 0) throw InternalError("lattice normal form: handles 2..g carry no real period");
  for (auto& x : rest) x /= c;
  {
    const SpMatrix inner = SpMatrix::handle_sl2(g - 1, 0, 0, -1, 1, 0) * primitive_to_basis(rest);
    SpMatrix block(g);
    for (std::size_t r = 0; r < rest.size(); ++r)
      for (std::size_t k = 0; k < rest.size(); ++k) block.matrix()(r + 2, k + 2) = inner.matrix()(r, k);
    t.apply(block);
  }

  // chi = (p, q + i, 0, l, 0, ...): clear q with the mu and lambda moves.
  const Integer p = t.chi[0].re.to_integer();
  const Integer q = t.chi[1].re.to_integer();
  const Integer l = t.chi[3].re.to_integer();
  const ExtGcd eg = ext_gcd(p, l);
  if (q % eg.g != 0) throw InternalError("lattice normal form: q not in pZ + lZ");
  const Integer lambda = -eg.s * (q / eg.g);
  const Integer mu = -eg.t * (q / eg.g);
  t.apply(SpMatrix::elementary(g, 1, 3, mu));
  t.apply(SpMatrix::handle_sl2(g, 0, 1, 0, lambda, 1));

  // Euclid in handle 2 to (0, l'), then bring p into a2 and run Euclid again.
  t.apply(handle_euclid(t.chi, 1, EuclidCoordinate::re, EuclidZero::a).gamma);
  t.apply(SpMatrix::elementary(g, 1, 3, -1));
  t.apply(handle_euclid(t.chi, 1, EuclidCoordinate::re, EuclidZero::a).gamma);
  if (t.chi[3].re == QuadElem(-1)) t.apply(SpMatrix::handle_sl2(g, 1, -1, 0, 0, -1));
  if (!(t.chi[2].is_zero() && t.chi[3] == PlanePoint(1)))
    throw InternalError("lattice normal form: handle 2 did not reduce to (0, 1)");
  const Integer k = -t.chi[1].re.to_integer();
  t.apply(SpMatrix::elementary(g, 1, 3, k));
  t.apply(SpMatrix::handle_sl2(g, 1, 0, 1, -1, t.chi[2].re.to_integer()));

  for (int h = 2; h < g; ++h) t.apply(SpMatrix::elementary(g, 3, 2 * h + 1, -m[static_cast<std::size_t>(h - 1)]));

  std::vector<PlanePoint> expected{PlanePoint(QuadElem(Rational(p))), PlanePoint::i(), PlanePoint(1), PlanePoint()};
  for (int h = 2; h < g; ++h) {
    expected.emplace_back(m[static_cast<std::size_t>(h - 1)]);
    expected.emplace_back();
  }
  res.gamma = t.gamma;
  res.chi_prime = t.chi;
  res.form_tag = FormTag::lattice_form;
  if (res.chi_prime != PeriodVector(expected) || !res.gamma.is_symplectic() || !res.recomputes(chi))
    throw InternalError("lattice normal form postcondition failed");
  return res;
}

GaussResult gauss_reduce(const PlanePoint& v1_in, const PlanePoint& v2_in) {
  if (qsign(det2(v1_in, v2_in)) == 0) throw PreconditionError("gauss_reduce: vectors are collinear");
  GaussResult r{Sl2Integer{}, v1_in, v2_in};
  auto rotate = [&r] {
    // (v1, v2) -> (v2, -v1)
    std::swap(r.v1, r.v2);
    r.v2 = -r.v2;
    Sl2Integer n{r.u.c, r.u.d, -r.u.a, -r.u.b};
    r.u = n;
  };
  if (norm_sq(r.v2) < norm_sq(r.v1)) rotate();
  for (;;) {
    const QuadElem ratio = dot(r.v1, r.v2) / norm_sq(r.v1);
    const Integer mu = floor(ratio + QuadElem(Rational(1, 2)));
    if (mu != 0) {
      r.v2 = r.v2 - QuadElem(Rational(mu)) * r.v1;
      r.u.c -= mu * r.u.a;
      r.u.d -= mu * r.u.b;
    }
    if (norm_sq(r.v2) < norm_sq(r.v1)) {
      rotate();
      continue;
    }
    break;
  }
  return r;
}

Box bounding_box(const std::vector<PlanePoint>& pts) {
  Box b;
  if (pts.empty()) return b;
  b.xmin = b.xmax = pts[0].re;
  b.ymin = b.ymax = pts[0].im;
  for (const auto& p : pts) {
    b.xmin = min(b.xmin, p.re);
    b.xmax = max(b.xmax, p.re);
    b.ymin = min(b.ymin, p.im);
    b.ymax = max(b.ymax, p.im);
  }
  return b;
}

std::optional<PlanePoint> fit_box_in_parallelogram(const Box& box, const PlanePoint& u, const PlanePoint& v) {
  const QuadElem det = det2(u, v);
  if (qsign(det) <= 0) return std::nullopt;
  const std::vector<PlanePoint> corners{{box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmin, box.ymax}, {box.xmax, box.ymax}};
  // Parallelogram coordinates s(p) = det(p, v)/det, t(p) = det(u, p)/det are
  // affine, so each can be centred independently.
  QuadElem offset[2];
  for (int axis = 0; axis < 2; ++axis) {
    QuadElem lo, hi;
    for (std::size_t k = 0; k < corners.size(); ++k) {
      const QuadElem f = axis == 0 ? det2(corners[k], v) / det : det2(u, corners[k]) / det;
      if (k == 0 || f < lo) lo = f;
      if (k == 0 || f > hi) hi = f;
    }
    if (!(hi - lo < QuadElem(1))) return std::nullopt;
    offset[axis] = (QuadElem(1) - lo - hi) / QuadElem(2);
  }
  return offset[0] * u + offset[1] * v;
}

bool generic_form_check(const PeriodVector& chi, const QuadElem& M) {
  const int g = chi.genus();
  for (int i = 0; i < g; ++i)
    if (qsign(chi.handle_det(i)) <= 0) return false;
  std::vector<PlanePoint> scaled;
  for (int i = 1; i < g; ++i) scaled.push_back(M * chi.a(i));
  if (!scaled.empty() && !fit_box_in_parallelogram(bounding_box(scaled), chi.a(0), chi.b(0))) return false;
  for (int i = 1; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      if (qsign(det2(chi.a(i), chi.a(j))) == 0 && qsign(dot(chi.a(i), chi.a(j))) > 0) return false;
  return true;
}

std::string format_sp_matrix(const SpMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

SpMatrix parse_sp_matrix(const std::string& text) {
  std::istringstream is(text);
  int g = 0;
  if (!(is >> g) || g < 1) throw ParseError("expected genus at start of symplectic matrix", 0);
  const auto n = 2 * static_cast<std::size_t>(g);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::string tok;
      if (!(is >> tok)) throw ParseError("symplectic matrix truncated", static_cast<std::size_t>(is.tellg()));
      try {
        m(r, c) = Integer(tok);
      } catch (const std::exception&) {
        throw ParseError("bad integer '" + tok + "'", 0);
      }
    }
  return {g, m};
}

std::string format_normal_form(const NormalFormResult& r) {
  std::int64_t d = 1;
  auto note = [&d](const QuadElem& x) {
    if (!x.is_rational()) d = x.d();
  };
  for (int i = 0; i < 4; ++i) note(r.A(i / 2, i % 2));
  for (const auto& p : r.chi_prime.entries()) {
    note(p.re);
    note(p.im);
  }
  std::ostringstream os;
  os << "normal_form " << to_string(r.form_tag);
  if (d != 1) os << " d=" << d;
  os << "\nA\n" << r.A;
  os << "gamma\n" << r.gamma;
  os << "chi_prime\n" << format_period_vector(r.chi_prime);
  return os.str();
}

NormalFormResult parse_normal_form(const std::string& text, FieldContext ctx) {
  const auto a_pos = text.find("\nA\n");
  const auto g_pos = text.find("\ngamma\n");
  const auto c_pos = text.find("\nchi_prime\n");
  if (text.rfind("normal_form ", 0) != 0 || a_pos == std::string::npos || g_pos == std::string::npos ||
      c_pos == std::string::npos || !(a_pos < g_pos && g_pos < c_pos))
    throw ParseError("malformed normal form document", 0);
  NormalFormResult r;
  std::istringstream header(text.substr(12, a_pos - 12));
  std::string tag, field;
  header >> tag;
  r.form_tag = form_tag_from_string(tag);
  if (header >> field) {
    if (field.rfind("d=", 0) != 0) throw ParseError("expected d=<d> in normal form header", 12);
    const FieldContext hdr(std::stoll(field.substr(2)));
    if (ctx.d() != 1 && ctx.d() != hdr.d()) throw ParseError("normal form field conflicts with --field-d", 12);
    ctx = hdr;
  }
  std::istringstream as(text.substr(a_pos + 3, g_pos - a_pos - 3));
  std::string e[4];
  for (auto& s : e)
    if (!(as >> s)) throw ParseError("GL2+ block truncated", a_pos);
  r.A = GLPlus(parse_quad(e[0], ctx), parse_quad(e[1], ctx), parse_quad(e[2], ctx), parse_quad(e[3], ctx));
  r.gamma = parse_sp_matrix(text.substr(g_pos + 7, c_pos - g_pos - 7));
  r.chi_prime = parse_period_vector(text.substr(c_pos + 11), ctx);
  return r;
}

}  // namespace strata
