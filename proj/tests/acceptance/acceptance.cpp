// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "strata/certificate.hpp"
#include "strata/sp_action.hpp"
#include "../unit/support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace strata;
using namespace strata::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Certificates built along the way, reused by the surface-wide criteria.
std::vector<RealizationCertificate> g_built;

void partitions_of(int n, int max, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(n, max); k >= 1; --k) {
    cur.push_back(k);
    partitions_of(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of_genus(int g) {
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_of(2 * g - 2, 2 * g - 2, cur, out);
  return out;
}

PlanePoint point(long re, long im = 0) { return {QuadElem(Rational(re)), QuadElem(Rational(im))}; }

// (p w1, w2, w1, 0, ..., 0) has image Z w1 + Z w2 and volume p det(w1, w2).
PeriodVector lattice_character(int g, long p, const PlanePoint& w1, const PlanePoint& w2) {
  std::vector<PlanePoint> e{QuadElem(Rational(p)) * w1, w2, w1, point(0)};
  for (int j = 2; j < g; ++j) {
    e.push_back(point(0));
    e.push_back(point(0));
  }
  return PeriodVector(e);
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

PeriodVector random_character(std::mt19937_64& rng, int g, int range) {
  std::vector<PlanePoint> e;
  for (int k = 0; k < 2 * g; ++k) e.push_back(random_point(rng, 2, range));
  return PeriodVector(e);
}

bool positive_nonlattice(const PeriodVector& c) {
  if (qsign(volume(c)) <= 0) return false;
  return image_group(c).classification == ImageClass::plane_nondiscrete;
}

// 1. Decision catalog with known verdicts.
Outcome decision_catalog() {
  struct Fixture {
    std::string name;
    PeriodVector chi;
    Partition part;
    bool expect;
  };
  std::vector<Fixture> fx;
  std::mt19937_64 rng(101);
  const std::vector<std::pair<PlanePoint, PlanePoint>> lattices = {
      {point(1), point(0, 1)}, {point(2), {Q("1/2"), Q("1")}}, {{Q("1/3"), Q("0")}, {Q("1/5"), Q("2/3")}}};
  int n_lattice = 0;
  for (int g = 2; g <= 4; ++g)
    for (const auto& part : partitions_of_genus(g)) {
      const auto& [w1, w2] = lattices[static_cast<std::size_t>(n_lattice++ % 3)];
      const long nk = part.largest();
      const SpMatrix scramble = random_symplectic(rng, g, 12);
      // vol = n_k covolumes is (n_k + 1) covolumes minus one covolume.
      for (auto [p, ok] : {std::pair{nk, false}, {nk + 1, true}, {2 * (nk + 1), true}})
        fx.push_back({"lattice " + part.str() + " p=" + std::to_string(p),
                      apply_sp(scramble, lattice_character(g, p, w1, w2)), part, ok});
    }
  fx.push_back({"nonpositive lattice", lattice_character(2, -3, point(1), point(0, 1)), Partition({2}), false});
  fx.push_back({"zero volume lattice", lattice_character(3, 0, point(1), point(0, 1)), Partition({4}), false});
  fx.push_back({"trivial", PeriodVector(std::vector<PlanePoint>(4, point(0))), Partition({2}), false});
  fx.push_back({"discrete line", V({P("1"), P("2"), P("3"), P("5")}), Partition({1, 1}), false});
  fx.push_back({"dense line", V({P("1"), P("sqrt(2)"), P("0"), P("1")}), Partition({2}), false});
  fx.push_back({"dense slanted line", V({P("1", "1"), P("sqrt(2)", "sqrt(2)"), P("0"), P("3", "3")}), Partition({2}), false});
  int dense = 0;
  while (dense < 12) {
    const int g = 2 + dense % 3;
    PeriodVector c = random_character(rng, g, 6);
    if (image_group(c).classification != ImageClass::plane_nondiscrete || volume(c).is_zero()) continue;
    const bool positive = qsign(volume(c)) > 0;
    const auto parts = partitions_of_genus(g);
    fx.push_back({"dense plane", c, parts[static_cast<std::size_t>(dense) % parts.size()], positive});
    ++dense;
  }

  Outcome o;
  const auto t0 = Clock::now();
  int lattice_images = 0, edges = 0;
  for (const auto& f : fx) {
    const Verdict v = decide(f.chi, f.part);
    if (v.realizable != f.expect) o.fail(f.name + " decided " + (v.realizable ? "realizable" : "not realizable"));
    if (v.image.is_lattice()) {
      ++lattice_images;
      if (v.deficit && v.deficit->is_zero()) ++edges;
    }
  }
  const double t = seconds_since(t0);
  if (fx.size() < 50) o.fail("catalog has only " + std::to_string(fx.size()) + " fixtures");
  if (t >= 1.0) o.fail("took " + std::to_string(t) + " s");
  std::ostringstream os;
  os << fx.size() << " fixtures, " << lattice_images << " lattice images, " << edges << " zero-deficit edges, " << t
     << " s";
  if (o.pass) o.detail = os.str();
  return o;
}

// 2. Lattice normal form recovery from symplectic scrambles.
Outcome lattice_scrambles() {
  Outcome o;
  std::mt19937_64 rng(202);
  const auto t0 = Clock::now();
  for (int k = 0; k < 200 && o.pass; ++k) {
    const int g = 2 + k % 4;
    const long p = 2 + static_cast<long>(rng() % 8);
    std::vector<int> m{1};
    std::vector<PlanePoint> e{point(p), point(0, 1), point(1), point(0)};
    for (int j = 2; j < g; ++j) {
      m.push_back(1 + static_cast<int>(rng() % 2));
      e.push_back(point(m.back()));
      e.push_back(point(0));
    }
    const PeriodVector target(e);
    const PeriodVector scrambled = apply_sp(random_symplectic(rng, g, 30), target);
    const NormalFormResult r = lattice_normal_form(scrambled, m);
    if (!(r.chi_prime == target)) o.fail("scramble " + std::to_string(k) + " recovered the wrong form");
    if (!r.gamma.is_symplectic()) o.fail("scramble " + std::to_string(k) + " gamma not symplectic");
    if (!r.recomputes(scrambled)) o.fail("scramble " + std::to_string(k) + " recomputation differs");
  }
  const double t = seconds_since(t0);
  if (t >= 10.0) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "200 scrambles, g 2..5, p 2..9, " + std::to_string(t) + " s";
  return o;
}

// 3. Lattice realization over every partition of genus 2..4.
Outcome lattice_realization() {
  Outcome o;
  const auto t0 = Clock::now();
  int count = 0;
  for (int g = 2; g <= 4; ++g)
    for (const auto& part : partitions_of_genus(g))
      for (int extra : {1, 3}) {
        const long p = part.largest() + extra;
        const std::string name = part.str() + " p=" + std::to_string(p);
        const RealizeOutcome out = realize(lattice_character(g, p, point(1), point(0, 1)), part);
        if (out.status != RealizeStatus::certificate) {
          o.fail(name + ": " + to_string(out.status));
          continue;
        }
        const VerificationReport rep = verify_certificate(*out.certificate);
        if (!rep.all_pass()) o.fail(name + " failed check " + std::to_string(rep.first_failure()));
        g_built.push_back(*out.certificate);
        ++count;
      }
  // Cone angles for the two pictured strata: H(2,2) has two 6pi points, H(6) one 14pi point.
  for (const auto& c : g_built) {
    std::multiset<long> turns;
    for (const auto& vc : vertex_cycles(c.surface))
      if (vc.turns > 1) turns.insert(vc.turns);
    if (c.partition == Partition({2, 2}) && turns != std::multiset<long>{3, 3}) o.fail("H(2,2) cone angles wrong");
    if (c.partition == Partition({6}) && turns != std::multiset<long>{7}) o.fail("H(6) cone angle wrong");
  }
  const double t = seconds_since(t0);
  if (t >= 30.0) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(count) + " certificates verified, " + std::to_string(t) + " s";
  return o;
}

// 4. Genus 2 over Q(sqrt 2) with non-discrete image.
Outcome genus2_nonlattice() {
  Outcome o;
  std::mt19937_64 rng(404);
  const auto t0 = Clock::now();
  int done = 0;
  while (done < 100 && o.pass) {
    const PeriodVector c = random_character(rng, 2, 4);
    if (!positive_nonlattice(c)) continue;
    ++done;
    const NormalFormResult nf = genus2_normalize(c);
    const QuadElem d1 = nf.chi_prime.handle_det(0), d2 = nf.chi_prime.handle_det(1);
    if (!(QuadElem(2) * d2 <= d1) || qsign(d2) <= 0) o.fail("normal form determinants out of bounds");
    if (!nf.recomputes(c)) o.fail("normal form recomputation differs");
    for (const Partition& part : {Partition({2}), Partition({1, 1})}) {
      const RealizeOutcome out = realize(c, part);
      if (out.status != RealizeStatus::certificate) {
        o.fail("H(" + part.str() + "): " + to_string(out.status));
        continue;
      }
      const VerificationReport rep = verify_certificate(*out.certificate);
      if (!rep.all_pass()) o.fail("H(" + part.str() + ") failed check " + std::to_string(rep.first_failure()));
      g_built.push_back(*out.certificate);
    }
  }
  const double t = seconds_since(t0);
  if (t >= 60.0) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "100 characters, 200 certificates verified, " + std::to_string(t) + " s";
  return o;
}

// Smallest norm of a first basis vector over SL2(Z) words of length <= 8 in
// the generators v1 +- v2, v2 +- v1 and the quarter turn.
Integer brute_force_min(long x1, long y1, long x2, long y2) {
  using Basis = std::array<long, 4>;
  std::set<Basis> seen{{x1, y1, x2, y2}};
  std::vector<Basis> frontier{{x1, y1, x2, y2}};
  long best = x1 * x1 + y1 * y1;
  for (int len = 0; len < 8; ++len) {
    std::vector<Basis> next;
    for (const auto& b : frontier) {
      const Basis moves[] = {{b[0] + b[2], b[1] + b[3], b[2], b[3]}, {b[0] - b[2], b[1] - b[3], b[2], b[3]},
                             {b[0], b[1], b[2] + b[0], b[3] + b[1]}, {b[0], b[1], b[2] - b[0], b[3] - b[1]},
                             {b[2], b[3], -b[0], -b[1]}};
      for (const auto& m : moves)
        if (seen.insert(m).second) {
          best = std::min(best, m[0] * m[0] + m[1] * m[1]);
          next.push_back(m);
        }
    }
    frontier = std::move(next);
  }
  return best;
}

// 5. Gauss reduction bound and brute-force agreement.
Outcome gauss_reduction() {
  Outcome o;
  std::mt19937_64 rng(505);
  int done = 0;
  while (done < 1000 && o.pass) {
    const std::int64_t d = done % 2 == 0 ? 1 : 2;
    const PlanePoint v1 = random_point(rng, d, 12), v2 = random_point(rng, d, 12);
    const QuadElem det = det2(v1, v2);
    if (det.is_zero()) continue;
    ++done;
    const GaussResult r = gauss_reduce(v1, v2);
    const QuadElem n = norm_sq(r.v1);
    if (!(QuadElem(3) * n * n <= QuadElem(4) * det * det)) o.fail("bound fails for " + v1.str() + ", " + v2.str());
    const Sl2Integer& u = r.u;
    if (u.a * u.d - u.b * u.c != 1) o.fail("transform not in SL2(Z)");
    const auto lin = [](const Integer& x, const PlanePoint& p, const Integer& y, const PlanePoint& q) {
      return QuadElem(Rational(x)) * p + QuadElem(Rational(y)) * q;
    };
    if (!(lin(u.a, v1, u.b, v2) == r.v1) || !(lin(u.c, v1, u.d, v2) == r.v2)) o.fail("transform mismatch");
  }
  int brute = 0;
  while (brute < 50 && o.pass) {
    long e[4];
    for (auto& x : e) x = static_cast<long>(rng() % 11) - 5;
    if (e[0] * e[3] - e[1] * e[2] == 0) continue;
    ++brute;
    const GaussResult r = gauss_reduce(point(e[0], e[1]), point(e[2], e[3]));
    const Integer bf = brute_force_min(e[0], e[1], e[2], e[3]);
    if (!(norm_sq(r.v1) == QuadElem(Rational(bf))))
      o.fail("shortest vector differs from brute force on case " + std::to_string(brute));
  }
  if (o.pass) o.detail = "1000 bases bounded, 50 brute-force matches";
  return o;
}

// 10. Heuristic honesty for genus 3 non-lattice characters.
Outcome heuristic_honesty() {
  Outcome o;
  std::mt19937_64 rng(1010);
  int done = 0, successes = 0, exhausted = 0;
  while (done < 4 && o.pass) {
    const PeriodVector c = random_character(rng, 3, 3);
    if (!positive_nonlattice(c)) continue;
    ++done;
    for (const auto& part : partitions_of_genus(3)) {
      HeuristicOptions h;
      h.max_steps = 4000;
      h.accept = [&part](const PeriodVector& x) { return plan_generic(x, part).has_value(); };
      const auto nf = generic_normalize_heuristic(c, h);
      if (nf) {
        if (!generic_form_check(nf->chi_prime, 1)) o.fail("heuristic success fails generic_form_check");
        if (!nf->recomputes(c)) o.fail("heuristic success does not recompute");
      }
      RealizeOptions opt;
      opt.max_steps = 4000;
      const RealizeOutcome out = realize(c, part, opt);
      if (out.status == RealizeStatus::not_realizable) o.fail("realizable character reported not realizable");
      if (out.status == RealizeStatus::certificate) {
        ++successes;
        const VerificationReport rep = verify_certificate(*out.certificate);
        if (!rep.all_pass()) o.fail("heuristic certificate failed check " + std::to_string(rep.first_failure()));
        g_built.push_back(*out.certificate);
      } else {
        ++exhausted;
      }
      opt.max_steps = 0;
      const RealizeOutcome starved = realize(c, part, opt);
      if (starved.status == RealizeStatus::heuristic_exhausted) ++exhausted;
      else if (starved.status != RealizeStatus::certificate) o.fail("starved heuristic reported not realizable");
    }
  }
  if (successes == 0) o.fail("no heuristic success observed");
  if (exhausted == 0) o.fail("no exhaustion observed");
  if (o.pass)
    o.detail = std::to_string(successes) + " verified successes, " + std::to_string(exhausted) +
               " runs ended heuristic_exhausted, none not_realizable";
  return o;
}

QuadElem polygon_area(const std::vector<PlanePoint>& edges) {
  QuadElem twice;
  PlanePoint at;
  for (const auto& e : edges) {
    twice += det2(at, e);
    at = at + e;
  }
  return twice * QuadElem(Rational(1, 2));
}

// 6. Riemann bilinear identity on every built surface.
Outcome bilinear_identity() {
  Outcome o;
  for (const auto& c : g_built) {
    const int g = c.chi_prime.genus();
    QuadElem marked, area;
    for (int j = 0; j < g; ++j)
      marked += det2(period(c.surface, c.marked_basis[static_cast<std::size_t>(2 * j)]),
                     period(c.surface, c.marked_basis[static_cast<std::size_t>(2 * j + 1)]));
    for (int p = 0; p < c.surface.polygon_count(); ++p) area += polygon_area(c.surface.polygon(p));
    const QuadElem v = volume(c.chi_prime);
    if (!(marked == v)) o.fail("marked periods disagree with volume in H(" + c.partition.str() + ")");
    if (!(area == v)) o.fail("polygon area disagrees with volume in H(" + c.partition.str() + ")");
  }
  if (g_built.empty()) o.fail("no surfaces built");
  if (o.pass) o.detail = std::to_string(g_built.size()) + " surfaces, periods and polygon areas both match";
  return o;
}

// 7. Cover data on lattice certificates and the one-covolume flip.
Outcome cover_degree() {
  Outcome o;
  int lattice = 0, flips = 0;
  for (const auto& c : g_built) {
    const ImageGroupReport img = image_group(c.chi_prime);
    if (!img.is_lattice()) continue;
    ++lattice;
    const CoverData cd = cover_data(c);
    const long nk = c.partition.largest();
    if (!(QuadElem(Rational(cd.degree)) * *img.covolume == volume(c.chi_prime))) o.fail("degree times area != volume");
    if (cd.degree < nk + 1 || !cd.degree_bound_ok) o.fail("degree below n_k + 1");
    // Normal form (p, i, 1, 0, ...): lowering p by one removes one covolume.
    if (!(c.chi_prime[1] == point(0, 1)) || !c.chi_prime[0].im.is_zero()) {
      o.fail("lattice certificate not in normal form");
      continue;
    }
    PeriodVector lower = c.chi_prime;
    lower[0] = lower[0] - point(1);
    const bool expect = cd.degree - 1 >= nk + 1;
    if (decide(lower, c.partition).realizable != expect) o.fail("decide disagrees after removing one covolume");
    if (!expect) ++flips;
  }
  if (flips == 0) o.fail("no boundary case flipped");
  if (o.pass)
    o.detail = std::to_string(lattice) + " lattice certificates, " + std::to_string(flips) + " flips to not realizable";
  return o;
}

// 8. primitive_to_basis on random primitive vectors.
Outcome sp_transitivity() {
  Outcome o;
  std::mt19937_64 rng(808);
  int done = 0;
  while (done < 1000 && o.pass) {
    const int g = 2 + done % 4;
    IntVector u(static_cast<std::size_t>(2 * g));
    for (auto& x : u) x = static_cast<long>(rng() % 61) - 30;
    if (gcd_of(u) != 1) continue;
    ++done;
    const SpMatrix m = primitive_to_basis(u);
    IntVector e1(u.size(), 0);
    e1[0] = 1;
    if (!(m.matrix() * u == e1)) o.fail("M u != e1");
    const IntMatrix j = standard_symplectic_form(g);
    if (!(m.matrix().transpose() * j * m.matrix() == j)) o.fail("M^T J M != J");
  }
  if (o.pass) o.detail = "1000 primitive vectors, g 2..5";
  return o;
}

std::vector<std::pair<EdgeRef, EdgeRef>> pairs_of(const TranslationSurface& s) {
  std::vector<std::pair<EdgeRef, EdgeRef>> out;
  for (int k = 0; k < s.directed_edge_count(); ++k) {
    const EdgeRef e = s.ref(k);
    if (s.is_paired(e) && k < s.index(s.partner(e))) out.emplace_back(e, s.partner(e));
  }
  return out;
}

TranslationSurface rebuild(const std::vector<std::vector<PlanePoint>>& polys,
                           const std::vector<std::pair<EdgeRef, EdgeRef>>& pairs) {
  TranslationSurface s;
  for (const auto& p : polys) s.add_polygon(p);
  for (const auto& [a, b] : pairs) s.glue(a, b);
  return s;
}

std::vector<std::vector<PlanePoint>> polygons_of(const TranslationSurface& s) {
  std::vector<std::vector<PlanePoint>> out;
  for (int p = 0; p < s.polygon_count(); ++p) out.push_back(s.polygon(p));
  return out;
}

RealizationCertificate flip_pairing(RealizationCertificate c) {
  auto pairs = pairs_of(c.surface);
  for (std::size_t j = 1; j < pairs.size(); ++j)
    if (!(c.surface.edge_vector(pairs[0].first) == c.surface.edge_vector(pairs[j].first))) {
      std::swap(pairs[0].second, pairs[j].second);
      break;
    }
  c.surface = rebuild(polygons_of(c.surface), pairs);
  return c;
}

RealizationCertificate drop_pairing(RealizationCertificate c) {
  auto pairs = pairs_of(c.surface);
  pairs.pop_back();
  c.surface = rebuild(polygons_of(c.surface), pairs);
  return c;
}

RealizationCertificate rotate_polygon(RealizationCertificate c) {
  auto polys = polygons_of(c.surface);
  for (auto& p : polys)
    if (p.size() > 3) {
      std::rotate(p.begin(), p.begin() + 1, p.end());
      break;
    }
  c.surface = rebuild(polys, pairs_of(c.surface));
  return c;
}

// Moves one glued slit: both banks translate, so the bordering polygons no
// longer close.
RealizationCertificate shift_slit(RealizationCertificate c) {
  const auto pairs = pairs_of(c.surface);
  const auto& [a, b] = pairs[pairs.size() / 2];
  const PlanePoint shift{Q("1/7"), Q("1/11")};
  c.surface.set_edge_vector(a, c.surface.edge_vector(a) + shift);
  c.surface.set_edge_vector(b, c.surface.edge_vector(b) - shift);
  return c;
}

RealizationCertificate scale_gamma_row(RealizationCertificate c, std::size_t row) {
  for (std::size_t j = 0; j < c.gamma.matrix().cols(); ++j) c.gamma.matrix()(row, j) *= 2;
  return c;
}

// 9. Certificate mutations and the check each must trip.
Outcome mutations() {
  const auto lattice = realize(lattice_character(3, 5, point(1), point(0, 1)), Partition({1, 3})).certificate;
  const auto nonlattice =
      realize(V({P("1"), P("0", "1"), P("1/8*sqrt(2)", "1/8*sqrt(2)"), P("0", "1/8")}), Partition({1, 1})).certificate;
  Outcome o;
  if (!lattice || !nonlattice) {
    o.fail("base certificates not built");
    return o;
  }
  const RealizationCertificate& L = *lattice;
  const RealizationCertificate& N = *nonlattice;
  std::vector<std::tuple<std::string, RealizationCertificate, int>> cases;
  auto add = [&cases](std::string name, RealizationCertificate c, int check) {
    cases.emplace_back(std::move(name), std::move(c), check);
  };
  add("gamma row 0 scaled", scale_gamma_row(L, 0), 1);
  add("gamma row 3 scaled", scale_gamma_row(L, 3), 1);
  add("gamma row scaled, non-lattice", scale_gamma_row(N, 1), 1);
  {
    auto c = L;
    c.gamma.matrix()(0, 0) += 1;
    add("gamma entry bumped", c, 1);
  }
  {
    auto c = N;
    auto& m = c.gamma.matrix();
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(0, j), m(1, j));
    add("gamma handle rows swapped", c, 1);
  }
  {
    auto c = L;
    c.A = GLPlus::scale(2) * c.A;
    add("A scaled", c, 2);
  }
  {
    auto c = N;
    c.chi_prime[2] = c.chi_prime[2] + point(1);
    add("chi' entry moved", c, 2);
  }
  {
    auto c = L;
    c.chi_original[3] = c.chi_original[3] + point(0, 1);
    add("chi entry moved", c, 2);
  }
  add("flipped pairing", flip_pairing(L), 3);
  add("flipped pairing, non-lattice", flip_pairing(N), 3);
  add("dropped pairing", drop_pairing(L), 3);
  add("rotated polygon", rotate_polygon(L), 3);
  add("shifted slit", shift_slit(L), 3);
  add("shifted slit, non-lattice", shift_slit(N), 3);
  {
    auto c = L;
    c.partition = Partition({2});
    add("partition of another genus", c, 4);
  }
  {
    auto c = L;
    c.partition = Partition({2, 2});
    add("wrong partition", c, 5);
  }
  {
    auto c = N;
    c.partition = Partition({2});
    add("wrong partition, non-lattice", c, 5);
  }
  {
    auto c = L;
    c.marked_basis.pop_back();
    add("marked curve dropped", c, 6);
  }
  {
    auto c = N;
    std::swap(c.marked_basis[0], c.marked_basis[1]);
    add("marked curves swapped", c, 6);
  }
  {
    auto c = L;
    c.marked_basis[2] = reversed(c.surface, c.marked_basis[2]);
    add("marked curve reversed", c, 6);
  }
  {
    // chi and chi' moved consistently, so only the surface periods disagree.
    auto c = L;
    c.chi_prime[4] = c.chi_prime[4] + point(1);
    c.chi_original = apply_sp(c.gamma.inverse(), apply_gl(c.A.inverse(), c.chi_prime));
    add("consistent chi' change", c, 7);
  }
  {
    auto c = N;
    c.A = GLPlus::scale(2) * c.A;
    c.chi_prime = apply_gl(GLPlus::scale(2), c.chi_prime);
    add("A and chi' scaled together", c, 7);
  }
  for (const auto& [name, cert, check] : cases) {
    int got = -1;
    try {
      got = verify_certificate(cert).first_failure();
    } catch (const std::exception& e) {
      o.fail(name + " threw " + e.what());
      continue;
    }
    if (got != check) o.fail(name + " tripped check " + std::to_string(got) + ", expected " + std::to_string(check));
  }
  if (!verify_certificate(L).all_pass() || !verify_certificate(N).all_pass()) o.fail("unmutated certificates fail");
  if (o.pass) o.detail = std::to_string(cases.size()) + " mutations, each caught by its documented check";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::string>> titles = {
      {1, "decision catalog"},          {2, "lattice normal form"},   {3, "lattice realization"},
      {4, "genus 2 non-lattice"},       {5, "Gauss reduction"},       {6, "Riemann bilinear identity"},
      {7, "cover data"},                {8, "Sp transitivity"},       {9, "mutation robustness"},
      {10, "heuristic honesty"}};
  // Criteria 6 and 7 inspect the certificates built by 3, 4 and 10.
  const std::vector<std::pair<int, std::function<Outcome()>>> order = {
      {1, decision_catalog}, {2, lattice_scrambles}, {3, lattice_realization}, {4, genus2_nonlattice},
      {5, gauss_reduction},  {10, heuristic_honesty}, {6, bilinear_identity},  {7, cover_degree},
      {8, sp_transitivity},  {9, mutations}};
  std::map<int, Outcome> results;
  for (const auto& [id, run] : order) {
    try {
      results[id] = run();
    } catch (const std::exception& e) {
      results[id].fail(std::string("exception: ") + e.what());
    }
  }
  bool all = true;
  for (const auto& [id, title] : titles) {
    const Outcome& r = results[id];
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << r.detail << ")\n";
  }
  return all ? 0 : 1;
}
