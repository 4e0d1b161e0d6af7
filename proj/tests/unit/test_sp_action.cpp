#include "strata/sp_action.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace strata;
using namespace strata::test;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

SpMatrix random_symplectic(std::mt19937_64& rng, int g, int moves) {
  SpMatrix m(g);
  for (int s = 0; s < moves; ++s) {
    const int a = static_cast<int>(rng() % (2 * g));
    const int b = static_cast<int>(rng() % (2 * g));
    if (a == b) {
      m = SpMatrix::handle_swap(g, a / 2, static_cast<int>(rng() % g)) * m;
      continue;
    }
    m = SpMatrix::elementary(g, a, b, static_cast<long>(rng() % 5) - 2) * m;
  }
  return m;
}

}  // namespace

TEST_CASE("symplectic matrices") {
  CHECK(SpMatrix::handle_swap(3, 0, 2).is_symplectic());
  for (int t = 0; t < 6; ++t)
    for (int s = 0; s < 6; ++s)
      if (t != s) CHECK(SpMatrix::elementary(3, t, s, 3).is_symplectic());
  std::mt19937_64 rng(3);
  const SpMatrix m = random_symplectic(rng, 3, 20);
  CHECK(m * m.inverse() == SpMatrix(3));
  CHECK(parse_sp_matrix(format_sp_matrix(m)) == m);
}

TEST_CASE("halving move keeps the form") {
  // (a1, b1 + k b2, a2 - k a1, b2)
  const SpMatrix e = SpMatrix::elementary(2, 1, 3, 4);
  CHECK(e.matrix()(1, 3) == 4);
  CHECK(e.matrix()(2, 0) == -4);
}

TEST_CASE("primitive_to_basis examples") {
  CHECK(primitive_to_basis(iv({1, 0, 0, 0})) == SpMatrix(2));
  for (const IntVector& u : {iv({0, 1, 0, 0}), iv({2, 3, 0, 5}), iv({-6, 10, 15, 0}), iv({0, 0, 0, -1})}) {
    const SpMatrix m = primitive_to_basis(u);
    CHECK(m.is_symplectic());
    CHECK(m.matrix() * u == iv({1, 0, 0, 0}));
  }
  CHECK_THROWS_AS(primitive_to_basis(iv({2, 4, 0, 0})), PreconditionError);
}

TEST_CASE("orbit_map examples") {
  const auto same = orbit_map(iv({2, 3, 0, 5}), iv({2, 3, 0, 5}));
  REQUIRE(same);
  CHECK(same->matrix() * iv({2, 3, 0, 5}) == iv({2, 3, 0, 5}));
  const auto m = orbit_map(iv({2, 0, 0, 0}), iv({0, 2, 0, 0}));
  REQUIRE(m);
  CHECK(m->matrix() * iv({2, 0, 0, 0}) == iv({0, 2, 0, 0}));
  CHECK(m->is_symplectic());
  CHECK_FALSE(orbit_map(iv({2, 0, 0, 0}), iv({3, 0, 0, 0})));
}

TEST_CASE("handle_euclid examples") {
  const PeriodVector chi = V({P("1"), P("0", "1"), P("3"), P("5")});
  const SpStep s = handle_euclid(chi, 1, EuclidCoordinate::plane);
  CHECK(s.gamma.is_symplectic());
  CHECK(apply_sp(s.gamma, chi) == s.chi);
  CHECK((s.chi[2].is_zero() || s.chi[3].is_zero()));
  CHECK(abs(s.chi[2].re + s.chi[3].re) == QuadElem(1));
  CHECK(s.chi[0] == chi[0]);

  const PeriodVector zero = V({P("1"), P("0", "1"), P("0"), P("7")});
  CHECK(handle_euclid(zero, 1, EuclidCoordinate::plane).gamma == SpMatrix(2));

  const PeriodVector halves = V({P("1"), P("0", "1"), P("1/2"), P("3/2")});
  const SpStep h = handle_euclid(halves, 1, EuclidCoordinate::re, EuclidZero::b);
  CHECK(h.chi[3].is_zero());
  CHECK(abs(h.chi[2].re) == Q("1/2"));

  CHECK_THROWS_AS(handle_euclid(V({P("1"), P("0", "1"), P("1"), P("sqrt(2)")}), 1, EuclidCoordinate::re, EuclidZero::either, 500),
                  PreconditionError);
}

TEST_CASE("lattice normal form examples") {
  const PeriodVector fixed = V({P("3"), P("0", "1"), P("1"), P("0")});
  const NormalFormResult r = lattice_normal_form(fixed, {});
  CHECK(r.chi_prime == fixed);
  CHECK(r.recomputes(fixed));

  std::mt19937_64 rng(17);
  const PeriodVector target = V({P("5"), P("0", "1"), P("1"), P("0"), P("2"), P("0")});
  const SpMatrix m = random_symplectic(rng, 3, 25);
  const PeriodVector scrambled = apply_sp(m, target);
  const NormalFormResult r3 = lattice_normal_form(scrambled, {1, 2});
  CHECK(r3.chi_prime == target);
  CHECK(r3.gamma.is_symplectic());
  CHECK(r3.recomputes(scrambled));

  CHECK_THROWS_AS(lattice_normal_form(V({P("1"), P("1", "1"), P("0"), P("0", "1")}), {}), PreconditionError);

  // Non-standard lattice: basis {1/2, i}.
  const PeriodVector half = V({P("1"), P("0", "1"), P("1/2"), P("0"), P("0"), P("1/2", "1")});
  const NormalFormResult rh = lattice_normal_form(half, {1, 1});
  CHECK(rh.recomputes(half));
  CHECK(rh.chi_prime == V({P("2"), P("0", "1"), P("1"), P("0"), P("1"), P("0")}));
}

TEST_CASE("normal form text round trip") {
  const PeriodVector half = V({P("1"), P("0", "1"), P("1/2"), P("0")});
  const NormalFormResult r = lattice_normal_form(apply_gl(GLPlus(1, Q("sqrt(2)"), 0, 3), half), {});
  const NormalFormResult back = parse_normal_form(format_normal_form(r), FieldContext());
  CHECK(back.A == r.A);
  CHECK(back.gamma == r.gamma);
  CHECK(back.chi_prime == r.chi_prime);
  CHECK(back.form_tag == r.form_tag);
}

TEST_CASE("generic_form_check examples") {
  CHECK(generic_form_check(V({P("10"), P("0", "10"), P("1"), P("0", "1"), P("1", "1"), P("-1", "1")}), 1));
  CHECK_FALSE(generic_form_check(V({P("10"), P("0", "10"), P("1"), P("2"), P("1", "1"), P("-1", "1")}), 1));
  CHECK_FALSE(generic_form_check(V({P("10"), P("0", "10"), P("1"), P("0", "1"), P("1"), P("0", "2")}), 1));
  CHECK_FALSE(generic_form_check(V({P("10"), P("0", "10"), P("1"), P("0", "1"), P("1", "1"), P("-1", "1")}), 20));
}

TEST_CASE("generic heuristic") {
  const PeriodVector ok = V({P("10"), P("0", "10"), P("1"), P("0", "1"), P("1", "1"), P("-1", "1")});
  HeuristicOptions opt;
  const auto r = generic_normalize_heuristic(ok, opt);
  REQUIRE(r);
  CHECK(r->gamma == SpMatrix(3));
  CHECK(r->A == GLPlus());

  const PeriodVector need = V({P("10"), P("0", "10"), P("1"), P("0", "1"), P("1+sqrt(2)"), P("0", "1")});
  const auto r2 = generic_normalize_heuristic(need, opt);
  REQUIRE(r2);
  CHECK(generic_form_check(r2->chi_prime, opt.M));
  CHECK(r2->recomputes(need));
  CHECK(r2->form_tag == FormTag::generic_form);

  HeuristicOptions none;
  none.max_steps = 0;
  CHECK_FALSE(generic_normalize_heuristic(need, none));
}

TEST_CASE("gauss_reduce examples") {
  const GaussResult a = gauss_reduce(P("1"), P("0", "1"));
  CHECK(a.v1 == P("1"));
  CHECK(a.v2 == P("0", "1"));
  const GaussResult b = gauss_reduce(P("1"), P("10", "1"));
  CHECK(b.v2 == P("0", "1"));
  const GaussResult c = gauss_reduce(P("5"), P("0", "1/5"));
  CHECK(QuadElem(3) * norm_sq(c.v1) * norm_sq(c.v1) <= QuadElem(4) * det2(c.v1, c.v2) * det2(c.v1, c.v2));
  CHECK_THROWS_AS(gauss_reduce(P("1", "1"), P("2", "2")), PreconditionError);
}

TEST_CASE("dense_interval_hit examples") {
  const IntPair a = dense_interval_hit(1, Q("sqrt(2)"), 0, 1);
  CHECK(a.n == -1);
  CHECK(a.m == 1);
  const IntPair b = dense_interval_hit(1, Q("sqrt(2)"), 2, Q("5/2"));
  const QuadElem v = QuadElem(Rational(b.n)) + QuadElem(Rational(b.m)) * Q("sqrt(2)");
  CHECK(QuadElem(2) < v);
  CHECK(v < Q("5/2"));
  CHECK_THROWS_AS(dense_interval_hit(1, Q("sqrt(2)"), 1, 1), PreconditionError);
  CHECK_THROWS_AS(dense_interval_hit(1, 2, 0, 1), PreconditionError);
}

TEST_CASE("halve_handle examples") {
  const PeriodVector chi = V({P("1"), P("0", "1"), P("-1"), P("0", "-1/4")});
  const SpStep s = halve_handle(chi);
  CHECK(s.gamma.is_symplectic());
  const QuadElem d1 = s.chi.handle_det(0);
  CHECK(qsign(d1) >= 0);
  CHECK(d1 <= Q("1/2"));
  CHECK((s.gamma.matrix()(1, 3) == 2 || s.gamma.matrix()(1, 3) == 4));

  const SpStep eq = halve_handle(V({P("1"), P("0", "1"), P("1"), P("0", "1")}));
  CHECK(qsign(eq.chi.handle_det(0)) >= 0);
  CHECK_THROWS_AS(halve_handle(V({P("1"), P("0", "1"), P("1"), P("0", "-1")})), PreconditionError);
}

TEST_CASE("resolve_zero_det examples") {
  const SpStep s = resolve_zero_det(V({P("1"), P("0", "1"), P("1/2*sqrt(2)"), P("0")}));
  CHECK(s.chi.handle_det(0) == Q("1-1/2*sqrt(2)"));
  CHECK(s.chi.handle_det(1) == Q("1/2*sqrt(2)"));
  CHECK_THROWS_AS(resolve_zero_det(V({P("1"), P("0", "1"), P("0"), P("0")})), PreconditionError);
  const SpStep y = resolve_zero_det(V({P("1"), P("0", "1"), P("0", "1/2*sqrt(2)"), P("0")}));
  CHECK(qsign(y.chi.handle_det(0)) > 0);
  CHECK(qsign(y.chi.handle_det(1)) > 0);
  CHECK(y.chi.handle_det(0) != y.chi.handle_det(1));
  CHECK(y.gamma.is_symplectic());
}

TEST_CASE("genus2_normalize examples") {
  for (const PeriodVector& chi : {V({P("1"), P("0", "1"), P("1/4+1/4*sqrt(2)"), P("0", "1/4")}),
                                  V({P("1"), P("0", "1"), P("1/2*sqrt(2)"), P("0")}),
                                  V({P("1"), P("0", "1"), P("sqrt(2)"), P("3", "2")}),
                                  V({P("sqrt(2)", "1"), P("2", "5"), P("1/3"), P("7", "1")})}) {
    const NormalFormResult r = genus2_normalize(chi);
    const QuadElem d1 = r.chi_prime.handle_det(0);
    const QuadElem d2 = r.chi_prime.handle_det(1);
    CHECK(qsign(d2) > 0);
    CHECK(QuadElem(2) * d2 <= d1);
    CHECK(norm_sq(r.chi_prime.a(1)) < QuadElem(1));
    CHECK(r.chi_prime.a(0) == P("1"));
    CHECK(r.chi_prime.b(0) == P("0", "1"));
    CHECK(r.recomputes(chi));
  }
  CHECK_THROWS_AS(genus2_normalize(V({P("3"), P("0", "1"), P("1"), P("0")})), PreconditionError);
}
