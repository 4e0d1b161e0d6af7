#include "strata/builder.hpp"
#include "strata/geometry.hpp"
#include "strata/sp_action.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace strata {

namespace {

struct QLess {
  bool operator()(const QuadElem& x, const QuadElem& y) const { return x < y; }
};
using QSet = std::set<QuadElem, QLess>;

std::string side_str(const SideRef& s) {
  return "group " + std::to_string(s.group) + " segment " + std::to_string(s.segment) +
         (s.bank == Bank::left ? " left" : " right");
}

int segment_count(const Parallelogram& p) { return first_slit + static_cast<int>(p.slits.size()); }

// Parallelogram coordinates (s, t) of x = s u + t v.
std::pair<QuadElem, QuadElem> coords(const PlanePoint& x, const PlanePoint& u, const PlanePoint& v) {
  const QuadElem det = det2(u, v);
  return {det2(x, v) / det, det2(u, x) / det};
}

bool strictly_inside(const PlanePoint& x, const Parallelogram& p) {
  const auto [s, t] = coords(x, p.u, p.v);
  return qsign(s) > 0 && s < QuadElem(1) && qsign(t) > 0 && t < QuadElem(1);
}

std::string slit_problem(const Parallelogram& p, std::size_t k) {
  const Slit& sl = p.slits[k];
  if (sl.vector.is_zero()) return "slit '" + sl.tag + "' has zero length";
  if (!strictly_inside(sl.anchor, p) || !strictly_inside(sl.anchor + sl.vector, p))
    return "slit '" + sl.tag + "' leaves its parallelogram";
  for (std::size_t j = 0; j < k; ++j) {
    const Slit& o = p.slits[j];
    if (segment_contact(sl.anchor, sl.anchor + sl.vector, o.anchor, o.anchor + o.vector) == Contact::illegal)
      return "slit '" + sl.tag + "' meets slit '" + o.tag + "' illegally";
  }
  return {};
}

}  // namespace

std::pair<PlanePoint, PlanePoint> segment_of(const SlitDiagram& d, int group, int segment) {
  const Parallelogram& p = d.groups.at(static_cast<std::size_t>(group));
  switch (segment) {
    case seg_bottom: return {PlanePoint(), p.u};
    case seg_right: return {p.u, p.v};
    case seg_top: return {p.v, p.u};
    case seg_left: return {PlanePoint(), p.v};
    default: {
      const Slit& s = p.slits.at(static_cast<std::size_t>(segment - first_slit));
      return {s.anchor, s.vector};
    }
  }
}

std::vector<std::string> check_diagram(const SlitDiagram& d) {
  std::vector<std::string> out;
  if (d.groups.empty()) out.emplace_back("diagram has no parallelograms");
  for (std::size_t g = 0; g < d.groups.size(); ++g) {
    const Parallelogram& p = d.groups[g];
    if (qsign(det2(p.u, p.v)) <= 0) {
      out.push_back("group " + std::to_string(g) + " is not positively oriented");
      continue;
    }
    for (std::size_t k = 0; k < p.slits.size(); ++k) {
      const std::string msg = slit_problem(p, k);
      if (!msg.empty()) out.push_back("group " + std::to_string(g) + ": " + msg);
    }
  }
  std::set<SideRef> used;
  auto known = [&](const SideRef& s) {
    return s.group >= 0 && s.group < static_cast<int>(d.groups.size()) && s.segment >= 0 &&
           s.segment < segment_count(d.groups[static_cast<std::size_t>(s.group)]);
  };
  for (const auto& [a, b] : d.gluing) {
    if (!known(a) || !known(b)) {
      out.emplace_back("gluing names an unknown side");
      continue;
    }
    for (const SideRef& s : {a, b})
      if (!used.insert(s).second) out.push_back(side_str(s) + " is glued twice");
    if (a.bank == b.bank) out.push_back(side_str(a) + " and " + side_str(b) + " have the same bank");
    if (segment_of(d, a.group, a.segment).second != segment_of(d, b.group, b.segment).second)
      out.push_back(side_str(a) + " and " + side_str(b) + " have different vectors");
  }
  return out;
}

int add_torus_group(SlitDiagram& d, const PlanePoint& u, const PlanePoint& v, const std::string& tag) {
  if (qsign(det2(u, v)) <= 0) throw BuildError("parallelogram '" + tag + "' is not positively oriented");
  d.groups.push_back({u, v, {}, tag});
  const int g = static_cast<int>(d.groups.size()) - 1;
  d.gluing.push_back({{g, seg_bottom, Bank::left}, {g, seg_top, Bank::right}});
  d.gluing.push_back({{g, seg_right, Bank::left}, {g, seg_left, Bank::right}});
  return g;
}

SlitDiagram base_diagram(const PlanePoint& u, const PlanePoint& v) {
  SlitDiagram d;
  add_torus_group(d, u, v, "base");
  d.curves.push_back({{0, seg_bottom, Bank::left}});
  d.curves.push_back({{0, seg_right, Bank::left}});
  return d;
}

int add_slit(SlitDiagram& d, int group, const PlanePoint& anchor, const PlanePoint& vec, const std::string& tag) {
  Parallelogram& p = d.groups.at(static_cast<std::size_t>(group));
  p.slits.push_back({anchor, vec, tag});
  const std::string msg = slit_problem(p, p.slits.size() - 1);
  if (!msg.empty()) {
    p.slits.pop_back();
    throw BuildError(msg);
  }
  return first_slit + static_cast<int>(p.slits.size()) - 1;
}

SlitDiagram glue_handle_slit(SlitDiagram d, const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const std::string tag = "handle" + std::to_string(d.groups.size());
  if (qsign(det2(a, b)) <= 0) throw BuildError("handle '" + tag + "' is not positively oriented");
  const int s = add_slit(d, 0, p, a, tag);
  d.groups.push_back({a, b, {}, tag});
  const int h = static_cast<int>(d.groups.size()) - 1;
  d.gluing.push_back({{h, seg_bottom, Bank::left}, {0, s, Bank::right}});
  d.gluing.push_back({{h, seg_top, Bank::right}, {0, s, Bank::left}});
  d.gluing.push_back({{h, seg_right, Bank::left}, {h, seg_left, Bank::right}});
  d.curves.push_back({{h, seg_bottom, Bank::left}});
  d.curves.push_back({{h, seg_right, Bank::left}});
  return d;
}

SlitDiagram glue_odd_slit(SlitDiagram d, const PlanePoint& p, const PlanePoint& w, const PlanePoint& a,
                          const PlanePoint& b) {
  const std::string tag = "odd" + std::to_string(d.groups.size());
  const int s = add_slit(d, 0, p, w, tag);
  const int t = add_torus_group(d, a, b, tag);
  const PlanePoint center = QuadElem(Rational(1, 2)) * (a + b - w);
  const int ts = add_slit(d, t, center, w, tag);
  d.gluing.push_back({{0, s, Bank::left}, {t, ts, Bank::right}});
  d.gluing.push_back({{0, s, Bank::right}, {t, ts, Bank::left}});
  d.curves.push_back({{t, seg_bottom, Bank::left}});
  d.curves.push_back({{t, seg_right, Bank::left}});
  return d;
}

SlitDiagram add_cyclic_slits(SlitDiagram d, const std::vector<PlanePoint>& anchors, const PlanePoint& vec,
                             const std::string& tag) {
  std::vector<int> segs;
  for (std::size_t k = 0; k < anchors.size(); ++k) segs.push_back(add_slit(d, 0, anchors[k], vec, tag + "." + std::to_string(k)));
  for (std::size_t k = 0; k < segs.size(); ++k)
    d.gluing.push_back({{0, segs[k], Bank::left}, {0, segs[(k + 1) % segs.size()], Bank::right}});
  return d;
}

namespace {

// One group's segments in sheared coordinates x' = x - s y.
struct Sheared {
  Rational shear;
  std::vector<std::pair<PlanePoint, PlanePoint>> segs;  // (anchor, vector)

  QuadElem xp(const PlanePoint& p) const { return p.re - QuadElem(shear) * p.im; }
  QuadElem t_at(int k, const QuadElem& c) const {
    const auto& [a, w] = segs[static_cast<std::size_t>(k)];
    return (c - xp(a)) / xp(w);
  }
  PlanePoint at_t(int k, const QuadElem& t) const {
    const auto& [a, w] = segs[static_cast<std::size_t>(k)];
    return a + t * w;
  }
  PlanePoint on_line(const QuadElem& c, const QuadElem& y) const { return {c + QuadElem(shear) * y, y}; }
  bool spans(int k, const QuadElem& lo, const QuadElem& hi) const {
    const auto& [a, w] = segs[static_cast<std::size_t>(k)];
    const QuadElem x0 = xp(a);
    const QuadElem x1 = xp(a + w);
    return min(x0, x1) <= lo && hi <= max(x0, x1);
  }
  bool forward(int k) const { return qsign(xp(segs[static_cast<std::size_t>(k)].second)) > 0; }
};

Rational choose_shear(const std::vector<std::pair<PlanePoint, PlanePoint>>& segs) {
  for (int den = 1;; ++den)
    for (int num = 0; num <= den; ++num)
      for (int sign : {1, -1}) {
        const Rational s(sign * num, den);
        bool ok = true;
        for (const auto& [a, w] : segs)
          if ((w.re - QuadElem(s) * w.im).is_zero()) ok = false;
        if (ok) return s;
      }
}

struct Trapezoid {
  int group;
  int slab;
  int lo, hi;  // segment indices
  QuadElem c0, c1;
};

// Flat key of a polygon edge piece for later gluing.
struct PieceKey {
  int kind;  // 0 side piece, 1 cut piece
  int group;
  int a;  // segment or line index
  int b;  // bank, or 0 for the left slab, 1 for the right slab of the line
  QuadElem start;
};

struct PieceLess {
  bool operator()(const PieceKey& x, const PieceKey& y) const {
    if (std::tie(x.kind, x.group, x.a, x.b) != std::tie(y.kind, y.group, y.a, y.b))
      return std::tie(x.kind, x.group, x.a, x.b) < std::tie(y.kind, y.group, y.a, y.b);
    return x.start < y.start;
  }
};

}  // namespace

CompiledSurface compile(const SlitDiagram& d) {
  if (const auto problems = check_diagram(d); !problems.empty()) throw BuildError(problems.front());
  const std::size_t ng = d.groups.size();
  std::vector<Sheared> sh(ng);
  std::vector<std::vector<QuadElem>> lines(ng);
  std::vector<Trapezoid> traps;
  std::map<SideRef, QSet> side_breaks;
  std::map<std::pair<int, int>, QSet> line_breaks;

  for (std::size_t g = 0; g < ng; ++g) {
    const int gi = static_cast<int>(g);
    Sheared& S = sh[g];
    for (int k = 0; k < segment_count(d.groups[g]); ++k) S.segs.push_back(segment_of(d, gi, k));
    S.shear = choose_shear(S.segs);
    QSet xs;
    for (const auto& [a, w] : S.segs) {
      xs.insert(S.xp(a));
      xs.insert(S.xp(a + w));
    }
    lines[g].assign(xs.begin(), xs.end());
    const auto& L = lines[g];
    for (std::size_t li = 0; li < L.size(); ++li) {
      QSet& ys = line_breaks[{gi, static_cast<int>(li)}];
      for (int k = 0; k < static_cast<int>(S.segs.size()); ++k)
        if (S.spans(k, L[li], L[li])) ys.insert(S.at_t(k, S.t_at(k, L[li])).im);
    }
    for (std::size_t li = 0; li + 1 < L.size(); ++li) {
      const QuadElem c0 = L[li];
      const QuadElem c1 = L[li + 1];
      const QuadElem mid = (c0 + c1) / QuadElem(2);
      std::vector<std::pair<QuadElem, int>> span;
      for (int k = 0; k < static_cast<int>(S.segs.size()); ++k)
        if (S.spans(k, c0, c1)) span.emplace_back(S.at_t(k, S.t_at(k, mid)).im, k);
      std::sort(span.begin(), span.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (span.size() < 2 || span.front().second >= first_slit || span.back().second >= first_slit)
        throw InternalError("compile: slab is not bounded by the parallelogram");
      for (std::size_t j = 1; j + 1 < span.size(); ++j)
        if (span[j].second < first_slit) throw InternalError("compile: parallelogram side inside a slab");
      for (std::size_t j = 0; j + 1 < span.size(); ++j) {
        const int lo = span[j].second;
        const int hi = span[j + 1].second;
        traps.push_back({gi, static_cast<int>(li), lo, hi, c0, c1});
        const SideRef bottom{gi, lo, S.forward(lo) ? Bank::left : Bank::right};
        const SideRef top{gi, hi, S.forward(hi) ? Bank::right : Bank::left};
        for (const auto& [side, k] : {std::pair{bottom, lo}, std::pair{top, hi}}) {
          side_breaks[side].insert(S.t_at(k, c0));
          side_breaks[side].insert(S.t_at(k, c1));
        }
      }
    }
  }
  for (const auto& [a, b] : d.gluing) {
    QSet u = side_breaks[a];
    u.insert(side_breaks[b].begin(), side_breaks[b].end());
    side_breaks[a] = u;
    side_breaks[b] = u;
  }

  CompiledSurface out;
  std::map<PieceKey, EdgeRef, PieceLess> pieces;
  for (const Trapezoid& tz : traps) {
    const Sheared& S = sh[static_cast<std::size_t>(tz.group)];
    std::vector<PlanePoint> pts;
    std::vector<PieceKey> keys;
    auto walk_segment = [&](int k, Bank bank, const QuadElem& t0, const QuadElem& t1) {
      const SideRef side{tz.group, k, bank};
      const QSet& br = side_breaks.at(side);
      std::vector<QuadElem> ts;
      const QuadElem lo = min(t0, t1);
      const QuadElem hi = max(t0, t1);
      for (const QuadElem& t : br)
        if (lo <= t && t <= hi) ts.push_back(t);
      if (t1 < t0) std::reverse(ts.begin(), ts.end());
      for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
        pts.push_back(S.at_t(k, ts[j]));
        keys.push_back({0, tz.group, k, static_cast<int>(bank), min(ts[j], ts[j + 1])});
      }
    };
    auto walk_line = [&](int li, int slab_side, const QuadElem& c, const QuadElem& y0, const QuadElem& y1) {
      if (y0 == y1) return;
      const QSet& br = line_breaks.at({tz.group, li});
      std::vector<QuadElem> ys;
      const QuadElem lo = min(y0, y1);
      const QuadElem hi = max(y0, y1);
      for (const QuadElem& y : br)
        if (lo <= y && y <= hi) ys.push_back(y);
      if (y1 < y0) std::reverse(ys.begin(), ys.end());
      for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        pts.push_back(S.on_line(c, ys[j]));
        keys.push_back({1, tz.group, li, slab_side, min(ys[j], ys[j + 1])});
      }
    };
    const QuadElem tb0 = S.t_at(tz.lo, tz.c0), tb1 = S.t_at(tz.lo, tz.c1);
    const QuadElem tt0 = S.t_at(tz.hi, tz.c0), tt1 = S.t_at(tz.hi, tz.c1);
    const QuadElem yb0 = S.at_t(tz.lo, tb0).im, yb1 = S.at_t(tz.lo, tb1).im;
    const QuadElem yt0 = S.at_t(tz.hi, tt0).im, yt1 = S.at_t(tz.hi, tt1).im;
    walk_segment(tz.lo, S.forward(tz.lo) ? Bank::left : Bank::right, tb0, tb1);
    walk_line(tz.slab + 1, 0, tz.c1, yb1, yt1);
    walk_segment(tz.hi, S.forward(tz.hi) ? Bank::right : Bank::left, tt1, tt0);
    walk_line(tz.slab, 1, tz.c0, yt0, yb0);
    std::vector<PlanePoint> edges;
    for (std::size_t j = 0; j < pts.size(); ++j) edges.push_back(pts[(j + 1) % pts.size()] - pts[j]);
    const int poly = out.surface.add_polygon(std::move(edges));
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (!pieces.emplace(keys[j], EdgeRef{poly, static_cast<int>(j)}).second)
        throw InternalError("compile: duplicate edge piece");
  }

  std::set<PieceKey, PieceLess> glued;
  auto glue_pair = [&](const PieceKey& x, const PieceKey& y) {
    const auto ix = pieces.find(x);
    const auto iy = pieces.find(y);
    if (ix == pieces.end() || iy == pieces.end()) throw InternalError("compile: unmatched edge piece");
    out.surface.glue(ix->second, iy->second);
    glued.insert(x);
    glued.insert(y);
  };
  for (const auto& [key, ref] : pieces) {
    if (key.kind != 1 || key.b != 0) continue;
    glue_pair(key, {1, key.group, key.a, 1, key.start});
  }
  for (const auto& [a, b] : d.gluing)
    for (const QuadElem& t : side_breaks.at(a)) {
      const PieceKey ka{0, a.group, a.segment, static_cast<int>(a.bank), t};
      if (pieces.count(ka) == 0) continue;
      glue_pair(ka, {0, b.group, b.segment, static_cast<int>(b.bank), t});
    }
  for (const auto& [key, ref] : pieces)
    if (glued.count(key) == 0)
      throw BuildError("side " + side_str({key.group, key.a, static_cast<Bank>(key.b)}) + " is not glued");

  for (const auto& chain : d.curves) {
    MarkedCurve c;
    for (const SideRef& side : chain) {
      std::vector<EdgeRef> steps;
      for (const QuadElem& t : side_breaks.at(side)) {
        const auto it = pieces.find({0, side.group, side.segment, static_cast<int>(side.bank), t});
        if (it != pieces.end()) steps.push_back(it->second);
      }
      if (side.bank == Bank::right) std::reverse(steps.begin(), steps.end());
      c.steps.insert(c.steps.end(), steps.begin(), steps.end());
    }
    out.curves.push_back(std::move(c));
  }
  return out;
}

}  // namespace strata
