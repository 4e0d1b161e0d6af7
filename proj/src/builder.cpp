#include "strata/builder.hpp"

#include "strata/geometry.hpp"
#include "strata/sp_action.hpp"

#include <algorithm>

namespace strata {

namespace {

RealizationCertificate assemble(const PeriodVector& chi_prime, const Partition& part, SlitDiagram d) {
  CompiledSurface c = compile(d);
  RealizationCertificate cert;
  cert.chi_original = chi_prime;
  cert.gamma = SpMatrix(chi_prime.genus());
  cert.chi_prime = chi_prime;
  cert.partition = part;
  cert.surface = std::move(c.surface);
  cert.marked_basis = std::move(c.curves);
  cert.diagram = std::move(d);
  return cert;
}

QuadElem half() { return QuadElem(Rational(1, 2)); }

void require_genus(const PeriodVector& chi, const Partition& part) {
  if (part.genus() != chi.genus())
    throw PreconditionError("partition " + part.str() + " has genus " + std::to_string(part.genus()) +
                            ", character has genus " + std::to_string(chi.genus()));
  if (chi.genus() < 2) throw PreconditionError("genus must be at least 2");
}

// (p, i, m_2, 0, ..., m_g, 0) with integer p and m_j in {1, 2}; returns p.
Integer lattice_shape(const PeriodVector& chi) {
  if (!(chi.b(0) == PlanePoint::i()) || !chi.a(0).im.is_zero() || !chi.a(0).re.is_integer())
    throw PreconditionError("lattice builder needs chi' = (p, i, m_2, 0, ..., m_g, 0)");
  for (int j = 1; j < chi.genus(); ++j) {
    const PlanePoint& a = chi.a(j);
    if (!chi.b(j).is_zero() || !a.im.is_zero() || !(a.re == QuadElem(1) || a.re == QuadElem(2)))
      throw PreconditionError("lattice builder needs chi' = (p, i, m_2, 0, ..., m_g, 0)");
  }
  return chi.a(0).re.to_integer();
}

// Replaces the marked basis by a symplectic basis whose periods are exactly
// chi_prime; used where the layout's own curves are not a basis.
void mark_lattice_basis(RealizationCertificate& cert, const std::vector<int>& m) {
  const std::vector<MarkedCurve> basis = symplectic_homology_basis(cert.surface);
  std::vector<PlanePoint> periods;
  for (const auto& c : basis) periods.push_back(period(cert.surface, c));
  const PeriodVector pi(periods);
  const NormalFormResult nf = lattice_normal_form(pi, m);
  if (!(nf.A == GLPlus()) || !(nf.chi_prime == cert.chi_prime))
    throw InternalError("lattice builder: surface periods do not reduce to chi'");
  const std::size_t n = basis.size();
  std::vector<MarkedCurve> marked;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = nf.gamma.matrix()(j, k);
    marked.push_back(combine(cert.surface, basis, row));
  }
  cert.marked_basis = std::move(marked);
}

std::vector<int> m_of(const PeriodVector& chi) {
  std::vector<int> m;
  for (int j = 1; j < chi.genus(); ++j) m.push_back(static_cast<int>(chi.a(j).re.to_integer().get_si()));
  return m;
}

// Unit slits at offsets 0, 1, 3, ..., 2m - 3 from x0, glued cyclically: a
// single point of angle 2 pi (2m - 1).
std::vector<PlanePoint> chain_anchors(int m, const QuadElem& x0, const QuadElem& y) {
  std::vector<PlanePoint> a{PlanePoint(x0, y)};
  for (int j = 1; j < m; ++j) a.emplace_back(x0 + QuadElem(2 * j - 1), y);
  return a;
}

}  // namespace

std::vector<int> lattice_m_for(const Partition& part) {
  const int g = part.genus();
  std::vector<int> m(static_cast<std::size_t>(std::max(g - 1, 0)), 1);
  if (part.parts().size() == 1)
    for (std::size_t j = 1; j < m.size(); ++j) m[j] = 2;
  return m;
}

RealizationCertificate build_lattice_minimal(const PeriodVector& chi_prime, int g) {
  if (chi_prime.genus() != g || g < 2) throw PreconditionError("build_lattice_minimal: genus mismatch");
  const Integer p = lattice_shape(chi_prime);
  if (p < 2 * g - 1)
    throw PreconditionError("build_lattice_minimal: volume " + p.get_str() + " < 2g - 1 = " + std::to_string(2 * g - 1));
  SlitDiagram d = base_diagram(chi_prime.a(0), chi_prime.b(0));
  d = add_cyclic_slits(d, chain_anchors(g, half(), half()), PlanePoint(1), "min");
  const Partition part({2 * g - 2});
  RealizationCertificate cert = assemble(chi_prime, part, std::move(d));
  mark_lattice_basis(cert, m_of(chi_prime));
  return cert;
}

RealizationCertificate build_lattice_multi(const PeriodVector& chi_prime, const Partition& part) {
  require_genus(chi_prime, part);
  if (part.parts().size() < 2) throw PreconditionError("build_lattice_multi needs at least two parts");
  const Integer p = lattice_shape(chi_prime);
  if (p < part.largest() + 1)
    throw PreconditionError("build_lattice_multi: volume " + p.get_str() + " < n_k + 1 = " + std::to_string(part.largest() + 1));
  // Rows: one per even part, one per consecutive pair of odd parts.
  struct Row {
    int a = 0;  // smaller odd part, or 0 for an even-part row
    int b = 0;
  };
  std::vector<Row> rows;
  std::vector<int> odd;
  for (int n : part.parts()) {
    if (n % 2 == 0) rows.push_back({0, n});
    else odd.push_back(n);
  }
  for (std::size_t j = 0; j + 1 < odd.size(); j += 2) rows.push_back({odd[j], odd[j + 1]});
  SlitDiagram d = base_diagram(chi_prime.a(0), chi_prime.b(0));
  const QuadElem quarter(Rational(1, 4));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const QuadElem y(Rational(static_cast<long>(r) + 1, static_cast<long>(rows.size()) + 1));
    const std::string tag = "row" + std::to_string(r);
    if (rows[r].a == 0) {
      d = add_cyclic_slits(d, chain_anchors(rows[r].b / 2 + 1, half(), y), PlanePoint(1), tag);
      continue;
    }
    // a + 1 half-length translates give two points of angle 2 pi (a + 1);
    // a unit chain from the right end raises one of them to 2 pi (b + 1).
    const int a = rows[r].a;
    std::vector<PlanePoint> anchors;
    for (int j = 0; j <= a; ++j) anchors.emplace_back(quarter + QuadElem(j), y);
    d = add_cyclic_slits(d, anchors, PlanePoint(half()), tag + "a");
    if (rows[r].b > a) {
      const QuadElem x0 = quarter + QuadElem(a) + half();
      d = add_cyclic_slits(d, chain_anchors((rows[r].b - a) / 2 + 1, x0, y), PlanePoint(1), tag + "b");
    }
  }
  RealizationCertificate cert = assemble(chi_prime, part, std::move(d));
  mark_lattice_basis(cert, m_of(chi_prime));
  return cert;
}

RealizationCertificate build_genus2(const PeriodVector& chi_prime, const Partition& part) {
  require_genus(chi_prime, part);
  if (!(chi_prime.a(0) == PlanePoint(1)) || !(chi_prime.b(0) == PlanePoint::i()))
    throw PreconditionError("build_genus2 needs (a1, b1) = (1, i)");
  const PlanePoint& a = chi_prime.a(1);
  const PlanePoint& b = chi_prime.b(1);
  if (!(norm_sq(a) < QuadElem(1))) throw PreconditionError("build_genus2: |a2| must be below 1");
  if (qsign(det2(a, b)) <= 0) throw PreconditionError("build_genus2: det(a2, b2) must be positive");
  const PlanePoint center(half(), half());
  SlitDiagram d = base_diagram(chi_prime.a(0), chi_prime.b(0));
  if (part == Partition({2})) {
    d = glue_handle_slit(d, center - half() * a, a, b);
  } else if (part == Partition({1, 1})) {
    const PlanePoint w = half() * a;
    d = glue_odd_slit(d, center - half() * w, w, a, b);
  } else {
    throw PreconditionError("build_genus2 handles H(2) and H(1,1) only");
  }
  return assemble(chi_prime, part, std::move(d));
}

namespace {

struct StarSlit {
  int handle;  // 0-based handle index >= 1
  PlanePoint offset;  // slit anchor relative to the cluster origin
};

// A cluster of starfish, possibly two joined by an odd slit, with every
// slit placed relative to the first center.
struct Cluster {
  std::vector<StarSlit> stars;
  int odd_handle = -1;
  PlanePoint odd_w;
  std::vector<PlanePoint> points;  // all slit endpoints, relative
};

bool same_direction(const PlanePoint& u, const PlanePoint& v) { return qsign(det2(u, v)) == 0 && qsign(dot(u, v)) > 0; }

// Chooses +a or -a per handle so that no two rays share a direction and,
// when `away` is nonzero, every ray satisfies dot(ray, away) <= 0.
std::optional<std::vector<PlanePoint>> starfish_rays(const PeriodVector& chi, const std::vector<int>& handles,
                                                     const PlanePoint& away) {
  std::vector<PlanePoint> rays;
  for (int h : handles) {
    const PlanePoint a = chi.a(h);
    std::vector<PlanePoint> options;
    const int s = away.is_zero() ? 0 : qsign(dot(a, away));
    if (s <= 0) options.push_back(a);
    if (s >= 0) options.push_back(-a);
    bool placed = false;
    for (const auto& r : options) {
      bool clash = false;
      for (const auto& q : rays) clash = clash || same_direction(q, r);
      if (!clash) {
        rays.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return rays;
}

// Anchor of the slit of vector a whose ray from the center is r.
PlanePoint anchor_for(const PlanePoint& center, const PlanePoint& a, const PlanePoint& r) {
  return r == a ? center : center + r;
}

bool cluster_sound(const Cluster& c, const PeriodVector& chi) {
  std::vector<std::pair<PlanePoint, PlanePoint>> segs;
  for (const auto& st : c.stars) segs.emplace_back(st.offset, st.offset + chi.a(st.handle));
  if (c.odd_handle >= 0) segs.emplace_back(PlanePoint(), c.odd_w);
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (segment_contact(segs[i].first, segs[i].second, segs[j].first, segs[j].second) == Contact::illegal)
        return false;
  return true;
}

std::optional<Cluster> even_cluster(const PeriodVector& chi, const std::vector<int>& handles) {
  const auto rays = starfish_rays(chi, handles, PlanePoint());
  if (!rays) return std::nullopt;
  Cluster c;
  c.points.emplace_back();
  for (std::size_t k = 0; k < handles.size(); ++k) {
    c.stars.push_back({handles[k], anchor_for(PlanePoint(), chi.a(handles[k]), (*rays)[k])});
    c.points.push_back((*rays)[k]);
  }
  if (!cluster_sound(c, chi)) return std::nullopt;
  return c;
}

// Two starfish joined by the odd slit [0, w]; the first one's rays point
// away from w and the second one's toward it, so the halves never meet.
std::optional<Cluster> odd_cluster(const PeriodVector& chi, const std::vector<int>& h1, const std::vector<int>& h2,
                                   int torus) {
  static const std::vector<std::pair<Rational, Rational>> candidates = {
      {Rational(1, 2), 0}, {0, Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(-1, 2)},
      {Rational(1, 3), Rational(1, 7)}, {Rational(1, 4), 0}, {0, Rational(1, 4)}, {Rational(1, 5), Rational(-1, 3)}};
  for (const auto& [s, t] : candidates) {
    const PlanePoint w = QuadElem(s) * chi.a(torus) + QuadElem(t) * chi.b(torus);
    if (w.is_zero()) continue;
    const auto r1 = starfish_rays(chi, h1, w);
    const auto r2 = starfish_rays(chi, h2, -w);
    if (!r1 || !r2) continue;
    Cluster c;
    c.odd_handle = torus;
    c.odd_w = w;
    c.points = {PlanePoint(), w};
    for (std::size_t k = 0; k < h1.size(); ++k) {
      c.stars.push_back({h1[k], anchor_for(PlanePoint(), chi.a(h1[k]), (*r1)[k])});
      c.points.push_back((*r1)[k]);
    }
    for (std::size_t k = 0; k < h2.size(); ++k) {
      c.stars.push_back({h2[k], anchor_for(w, chi.a(h2[k]), (*r2)[k])});
      c.points.push_back(w + (*r2)[k]);
    }
    if (cluster_sound(c, chi)) return c;
  }
  return std::nullopt;
}

std::pair<QuadElem, QuadElem> base_coords(const PlanePoint& x, const PlanePoint& u, const PlanePoint& v) {
  const QuadElem det = det2(u, v);
  return {det2(x, v) / det, det2(u, x) / det};
}

}  // namespace

std::optional<SlitDiagram> plan_generic(const PeriodVector& chi, const Partition& part) {
  require_genus(chi, part);
  const int g = chi.genus();
  for (int j = 0; j < g; ++j)
    if (qsign(chi.handle_det(j)) <= 0) return std::nullopt;
  int next = 1;
  auto take = [&](int count) {
    std::vector<int> h;
    for (int k = 0; k < count; ++k) h.push_back(next++);
    return h;
  };
  std::vector<Cluster> clusters;
  std::vector<int> odd;
  for (int n : part.parts()) {
    if (n % 2 == 1) {
      odd.push_back(n);
      continue;
    }
    auto c = even_cluster(chi, take(n / 2));
    if (!c) return std::nullopt;
    clusters.push_back(std::move(*c));
  }
  for (std::size_t j = 0; j + 1 < odd.size(); j += 2) {
    const auto h1 = take(odd[j] / 2);
    const auto h2 = take(odd[j + 1] / 2);
    auto c = odd_cluster(chi, h1, h2, next++);
    if (!c) return std::nullopt;
    clusters.push_back(std::move(*c));
  }
  if (next != g) throw InternalError("plan_generic: handle count mismatch");

  const PlanePoint u = chi.a(0);
  const PlanePoint v = chi.b(0);
  struct Extent {
    QuadElem s0, s1, t0, t1;
  };
  std::vector<Extent> ext;
  for (const Cluster& c : clusters) {
    Extent e;
    bool first = true;
    for (const PlanePoint& p : c.points) {
      const auto [s, t] = base_coords(p, u, v);
      if (first) e = {s, s, t, t};
      e = {min(e.s0, s), max(e.s1, s), min(e.t0, t), max(e.t1, t)};
      first = false;
    }
    ext.push_back(e);
  }
  std::vector<std::size_t> order(clusters.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return ext[y].t1 - ext[y].t0 < ext[x].t1 - ext[x].t0; });
  for (const long den : {16L, 64L, 256L, 1024L}) {
    const QuadElem gap(Rational(1, den));
    std::vector<PlanePoint> shift(clusters.size());
    QuadElem x = gap, y = gap, shelf;
    bool fits = true;
    for (std::size_t k : order) {
      const QuadElem w = ext[k].s1 - ext[k].s0;
      const QuadElem h = ext[k].t1 - ext[k].t0;
      if (QuadElem(1) < x + w + gap && x != gap) {
        y += shelf + gap;
        x = gap;
        shelf = QuadElem();
      }
      if (QuadElem(1) < x + w + gap || QuadElem(1) < y + h + gap) {
        fits = false;
        break;
      }
      shift[k] = (x - ext[k].s0) * u + (y - ext[k].t0) * v;
      x += w + gap;
      shelf = max(shelf, h);
    }
    if (!fits) continue;
    try {
      SlitDiagram d = base_diagram(u, v);
      for (int h = 1; h < g; ++h) {
        for (std::size_t k = 0; k < clusters.size(); ++k) {
          const Cluster& c = clusters[k];
          for (const StarSlit& st : c.stars)
            if (st.handle == h) d = glue_handle_slit(d, shift[k] + st.offset, chi.a(h), chi.b(h));
          if (c.odd_handle == h) d = glue_odd_slit(d, shift[k], c.odd_w, chi.a(h), chi.b(h));
        }
      }
      return d;
    } catch (const BuildError&) {
      continue;
    }
  }
  return std::nullopt;
}

RealizationCertificate build_generic(const PeriodVector& chi_prime, const Partition& part) {
  auto d = plan_generic(chi_prime, part);
  if (!d) throw BuildError("build_generic: the starfish do not pack into the base parallelogram");
  return assemble(chi_prime, part, std::move(*d));
}

std::string to_string(RealizeStatus s) {
  switch (s) {
    case RealizeStatus::certificate: return "certificate";
    case RealizeStatus::not_realizable: return "not_realizable";
    case RealizeStatus::heuristic_exhausted: return "heuristic_exhausted";
  }
  return "?";
}

RealizeOutcome realize(const PeriodVector& chi, const Partition& part, const RealizeOptions& opt) {
  require_genus(chi, part);
  RealizeOutcome out;
  out.verdict = decide(chi, part);
  if (!out.verdict.realizable) {
    out.status = RealizeStatus::not_realizable;
    out.message = out.verdict.describe();
    return out;
  }
  auto finish = [&](RealizationCertificate cert, const NormalFormResult& nf) {
    cert.chi_original = chi;
    cert.A = nf.A;
    cert.gamma = nf.gamma;
    out.status = RealizeStatus::certificate;
    out.certificate = std::move(cert);
    return out;
  };
  const int g = chi.genus();
  if (out.verdict.image.is_lattice()) {
    const NormalFormResult nf = lattice_normal_form(chi, lattice_m_for(part));
    if (part.parts().size() == 1) return finish(build_lattice_minimal(nf.chi_prime, g), nf);
    return finish(build_lattice_multi(nf.chi_prime, part), nf);
  }
  if (g == 2) {
    const NormalFormResult nf = genus2_normalize(chi);
    return finish(build_genus2(nf.chi_prime, part), nf);
  }
  HeuristicOptions h;
  h.M = 1;
  h.max_steps = opt.max_steps;
  h.seed = opt.seed;
  h.accept = [&part](const PeriodVector& c) { return plan_generic(c, part).has_value(); };
  const auto nf = generic_normalize_heuristic(chi, h);
  if (!nf) {
    out.status = RealizeStatus::heuristic_exhausted;
    out.message = "heuristic exhausted " + std::to_string(opt.max_steps) + " steps (seed " + std::to_string(opt.seed) +
                  "); realizable by the decision rule, no certificate found";
    return out;
  }
  return finish(build_generic(nf->chi_prime, part), *nf);
}

}  // namespace strata
