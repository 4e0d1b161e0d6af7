#include "strata/surface.hpp"

#include "strata/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace strata {

int TranslationSurface::add_polygon(std::vector<PlanePoint> edges) {
  if (edges.size() < 3) throw SurfaceError("polygon needs at least 3 edges");
  offset_.push_back(static_cast<int>(pair_.size()));
  pair_.resize(pair_.size() + edges.size(), -1);
  polys_.push_back(std::move(edges));
  return static_cast<int>(polys_.size()) - 1;
}

int TranslationSurface::index(EdgeRef e) const {
  if (e.poly < 0 || e.poly >= polygon_count() || e.edge < 0 ||
      e.edge >= static_cast<int>(polys_[static_cast<std::size_t>(e.poly)].size()))
    throw SurfaceError("edge reference " + std::to_string(e.poly) + ":" + std::to_string(e.edge) + " out of range");
  return offset_[static_cast<std::size_t>(e.poly)] + e.edge;
}

EdgeRef TranslationSurface::ref(int idx) const {
  const auto it = std::upper_bound(offset_.begin(), offset_.end(), idx);
  const int p = static_cast<int>(it - offset_.begin()) - 1;
  return {p, idx - offset_[static_cast<std::size_t>(p)]};
}

const PlanePoint& TranslationSurface::edge_vector(EdgeRef e) const {
  index(e);
  return polys_[static_cast<std::size_t>(e.poly)][static_cast<std::size_t>(e.edge)];
}

void TranslationSurface::set_edge_vector(EdgeRef e, const PlanePoint& v) {
  index(e);
  polys_[static_cast<std::size_t>(e.poly)][static_cast<std::size_t>(e.edge)] = v;
}

void TranslationSurface::glue(EdgeRef a, EdgeRef b) {
  const int ia = index(a);
  const int ib = index(b);
  if (pair_[static_cast<std::size_t>(ia)] >= 0 || pair_[static_cast<std::size_t>(ib)] >= 0)
    throw SurfaceError("edge glued twice");
  pair_[static_cast<std::size_t>(ia)] = ib;
  pair_[static_cast<std::size_t>(ib)] = ia;
}

EdgeRef TranslationSurface::partner(EdgeRef e) const {
  const int p = pair_[static_cast<std::size_t>(index(e))];
  if (p < 0) throw SurfaceError("edge " + std::to_string(e.poly) + ":" + std::to_string(e.edge) + " is unpaired");
  return ref(p);
}

EdgeRef TranslationSurface::next_in_polygon(EdgeRef e) const {
  const int n = static_cast<int>(polygon(e.poly).size());
  return {e.poly, (e.edge + 1) % n};
}

EdgeRef TranslationSurface::prev_in_polygon(EdgeRef e) const {
  const int n = static_cast<int>(polygon(e.poly).size());
  return {e.poly, (e.edge + n - 1) % n};
}

namespace {

std::vector<PlanePoint> vertices_of(const std::vector<PlanePoint>& edges) {
  std::vector<PlanePoint> v{PlanePoint()};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) v.push_back(v.back() + edges[i]);
  return v;
}

std::string polygon_problem(const std::vector<PlanePoint>& edges) {
  PlanePoint sum;
  for (const auto& e : edges) {
    if (e.is_zero()) return "zero-length edge";
    sum += e;
  }
  if (!sum.is_zero()) return "edge vectors do not sum to zero";
  const auto v = vertices_of(edges);
  const std::size_t n = edges.size();
  QuadElem area2;
  for (std::size_t i = 0; i < n; ++i) area2 += det2(v[i], v[(i + 1) % n]);
  if (qsign(area2) <= 0) return "polygon is not counterclockwise";
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (qsign(det2(edges[i], edges[j])) == 0 && qsign(dot(edges[i], edges[j])) < 0) return "polygon has a spike";
    for (std::size_t k = i + 2; k < n; ++k) {
      if (i == 0 && k == n - 1) continue;
      if (segment_contact(v[i], v[(i + 1) % n], v[k], v[(k + 1) % n]) != Contact::none)
        return "polygon is not simple";
    }
  }
  return {};
}

}  // namespace

std::vector<std::string> validate(const TranslationSurface& s) {
  std::vector<std::string> problems;
  if (s.polygon_count() == 0) problems.emplace_back("surface has no polygons");
  for (int p = 0; p < s.polygon_count(); ++p) {
    const std::string msg = polygon_problem(s.polygon(p));
    if (!msg.empty()) problems.push_back("polygon " + std::to_string(p) + ": " + msg);
  }
  std::vector<int> parent(static_cast<std::size_t>(s.polygon_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int i = 0; i < s.directed_edge_count(); ++i) {
    const EdgeRef e = s.ref(i);
    if (!s.is_paired(e)) {
      problems.push_back("edge " + std::to_string(e.poly) + ":" + std::to_string(e.edge) + " is unpaired");
      continue;
    }
    const EdgeRef f = s.partner(e);
    if (f == e) problems.push_back("edge " + std::to_string(e.poly) + ":" + std::to_string(e.edge) + " is paired with itself");
    if (s.partner(f) != e) problems.push_back("pairing is not an involution");
    if (!(s.edge_vector(e) + s.edge_vector(f)).is_zero())
      problems.push_back("edges " + std::to_string(e.poly) + ":" + std::to_string(e.edge) + " and " +
                         std::to_string(f.poly) + ":" + std::to_string(f.edge) + " are not opposite vectors");
    parent[static_cast<std::size_t>(find(e.poly))] = find(f.poly);
  }
  for (int p = 1; p < s.polygon_count(); ++p)
    if (find(p) != find(0)) {
      problems.emplace_back("surface is not connected");
      break;
    }
  return problems;
}

std::vector<VertexCycle> vertex_cycles(const TranslationSurface& s) {
  std::vector<bool> seen(static_cast<std::size_t>(s.directed_edge_count()), false);
  std::vector<VertexCycle> out;
  for (int i = 0; i < s.directed_edge_count(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    VertexCycle cyc;
    EdgeRef c = s.ref(i);
    long crossings = 0;
    do {
      seen[static_cast<std::size_t>(s.index(c))] = true;
      cyc.corners.push_back(c);
      const EdgeRef in = s.prev_in_polygon(c);
      const PlanePoint u = s.edge_vector(c);
      const PlanePoint w = -s.edge_vector(in);
      // The interior sweep from u counterclockwise to w passes the positive
      // real axis exactly when w does not come after u in angular order.
      if (!angle_less(u, w)) ++crossings;
      c = s.partner(in);
    } while (s.index(c) != i);
    cyc.turns = crossings;
    if (crossings <= 0) throw SurfaceError("vertex with non-positive cone angle");
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> vertex_ids(const TranslationSurface& s) {
  std::vector<int> id(static_cast<std::size_t>(s.directed_edge_count()), -1);
  const auto cycles = vertex_cycles(s);
  for (std::size_t v = 0; v < cycles.size(); ++v)
    for (const EdgeRef& c : cycles[v].corners) id[static_cast<std::size_t>(s.index(c))] = static_cast<int>(v);
  return id;
}

EulerData euler_and_genus(const TranslationSurface& s) {
  EulerData d;
  d.vertices = static_cast<int>(vertex_cycles(s).size());
  d.edges = s.directed_edge_count() / 2;
  d.faces = s.polygon_count();
  d.euler = d.vertices - d.edges + d.faces;
  if (d.euler % 2 != 0 || d.euler > 2) throw SurfaceError("Euler characteristic " + std::to_string(d.euler) + " is not that of a closed orientable surface");
  d.genus = (2 - d.euler) / 2;
  return d;
}

Partition stratum(const TranslationSurface& s) {
  const EulerData e = euler_and_genus(s);
  if (e.genus < 2) throw SurfaceError("stratum needs genus >= 2, surface has genus " + std::to_string(e.genus));
  std::vector<int> parts;
  long total = 0;
  for (const auto& c : vertex_cycles(s)) {
    total += c.turns - 1;
    if (c.turns > 1) parts.push_back(static_cast<int>(c.turns - 1));
  }
  if (total != 2L * e.genus - 2) throw SurfaceError("Gauss-Bonnet violated: cone excess " + std::to_string(total));
  return Partition(parts);
}

bool is_closed(const TranslationSurface& s, const MarkedCurve& c) {
  if (c.steps.empty()) return false;
  const auto id = vertex_ids(s);
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const EdgeRef cur = c.steps[k];
    const EdgeRef nxt = c.steps[(k + 1) % c.steps.size()];
    if (id[static_cast<std::size_t>(s.index(s.next_in_polygon(cur)))] != id[static_cast<std::size_t>(s.index(nxt))])
      return false;
  }
  return true;
}

PlanePoint period(const TranslationSurface& s, const MarkedCurve& c) {
  if (!is_closed(s, c)) throw SurfaceError("curve is not a closed edge path");
  PlanePoint sum;
  for (const EdgeRef& e : c.steps) sum += s.edge_vector(e);
  return sum;
}

MarkedCurve reversed(const TranslationSurface& s, const MarkedCurve& c) {
  MarkedCurve r;
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) r.steps.push_back(s.partner(*it));
  return r;
}

MarkedCurve concat(const MarkedCurve& a, const MarkedCurve& b) {
  MarkedCurve r = a;
  r.steps.insert(r.steps.end(), b.steps.begin(), b.steps.end());
  return r;
}

int intersection_number(const TranslationSurface& s, const MarkedCurve& c1, const MarkedCurve& c2) {
  if (c1.steps.empty() || c2.steps.empty()) return 0;
  std::vector<int> uses(static_cast<std::size_t>(s.directed_edge_count()), 0);
  for (const EdgeRef& e : c1.steps) ++uses[static_cast<std::size_t>(s.index(e))];
  // Push c2 off to its left. At each vertex it visits, the push-off cuts
  // through the half-edges strictly between the outgoing step and the
  // reversed incoming step, counterclockwise; a c1 edge leaving the vertex
  // there counts -1 and one arriving counts +1.
  long total = 0;
  const std::size_t n = c2.steps.size();
  for (std::size_t k = 0; k < n; ++k) {
    const EdgeRef in = c2.steps[k];
    const EdgeRef out = c2.steps[(k + 1) % n];
    const EdgeRef back = s.partner(in);
    EdgeRef h = s.partner(s.prev_in_polygon(out));
    int guard = 0;
    while (h != back) {
      if (h == out) throw SurfaceError("curve steps do not share a vertex");
      total += uses[static_cast<std::size_t>(s.index(s.partner(h)))] - uses[static_cast<std::size_t>(s.index(h))];
      h = s.partner(s.prev_in_polygon(h));
      if (++guard > s.directed_edge_count()) throw SurfaceError("curve steps do not share a vertex");
    }
  }
  return static_cast<int>(total);
}

IntMatrix intersection_matrix(const TranslationSurface& s, const std::vector<MarkedCurve>& curves) {
  const std::size_t n = curves.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int x = intersection_number(s, curves[i], curves[j]);
      m(i, j) = x;
      m(j, i) = -x;
    }
  return m;
}

std::vector<MarkedCurve> symplectic_homology_basis(const TranslationSurface& s) {
  const auto id = vertex_ids(s);
  const int ne = s.directed_edge_count();
  int nv = 0;
  for (int v : id) nv = std::max(nv, v + 1);
  auto start = [&](int e) { return id[static_cast<std::size_t>(e)]; };
  auto end = [&](int e) { return id[static_cast<std::size_t>(s.index(s.next_in_polygon(s.ref(e))))]; };
  auto mate = [&](int e) { return s.index(s.partner(s.ref(e))); };

  // Spanning tree of the vertex graph rooted at vertex 0.
  std::vector<std::vector<EdgeRef>> path(static_cast<std::size_t>(nv));
  std::vector<bool> reached(static_cast<std::size_t>(nv), false);
  std::vector<bool> used(static_cast<std::size_t>(ne), false);
  reached[0] = true;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    for (int e = 0; e < ne; ++e) {
      if (start(e) != u || reached[static_cast<std::size_t>(end(e))]) continue;
      const int w = end(e);
      reached[static_cast<std::size_t>(w)] = true;
      used[static_cast<std::size_t>(e)] = used[static_cast<std::size_t>(mate(e))] = true;
      path[static_cast<std::size_t>(w)] = path[static_cast<std::size_t>(u)];
      path[static_cast<std::size_t>(w)].push_back(s.ref(e));
      queue.push_back(w);
    }
  }
  // Spanning tree of the dual graph through the remaining edges.
  std::vector<bool> face_seen(static_cast<std::size_t>(s.polygon_count()), false);
  face_seen[0] = true;
  queue = {0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int p = queue[qi];
    for (int k = 0; k < static_cast<int>(s.polygon(p).size()); ++k) {
      const int e = s.index({p, k});
      if (used[static_cast<std::size_t>(e)]) continue;
      const int q = s.partner(s.ref(e)).poly;
      if (face_seen[static_cast<std::size_t>(q)]) continue;
      face_seen[static_cast<std::size_t>(q)] = true;
      used[static_cast<std::size_t>(e)] = used[static_cast<std::size_t>(mate(e))] = true;
      queue.push_back(q);
    }
  }
  std::vector<MarkedCurve> loops;
  for (int e = 0; e < ne; ++e) {
    if (used[static_cast<std::size_t>(e)]) continue;
    used[static_cast<std::size_t>(e)] = used[static_cast<std::size_t>(mate(e))] = true;
    MarkedCurve c{path[static_cast<std::size_t>(start(e))]};
    c.steps.push_back(s.ref(e));
    c = concat(c, reversed(s, MarkedCurve{path[static_cast<std::size_t>(end(e))]}));
    loops.push_back(std::move(c));
  }
  const std::size_t n = loops.size();
  if (n % 2 != 0) throw SurfaceError("tree-cotree left an odd number of loops");
  const IntMatrix omega = intersection_matrix(s, loops);
  auto form = [&](const IntVector& x, const IntVector& y) {
    Integer r = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r += x[i] * omega(i, j) * y[j];
    return r;
  };

  // Symplectic Gram-Schmidt over Z on coefficient vectors.
  std::vector<IntVector> rest;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v(n, 0);
    v[i] = 1;
    rest.push_back(std::move(v));
  }
  std::vector<IntVector> as, bs;
  while (!rest.empty()) {
    const IntVector x = rest.front();
    IntVector y(n, 0);
    Integer g = 0;
    for (const IntVector& r : rest) {
      const Integer w = form(x, r);
      const ExtGcd eg = ext_gcd(g, w);
      for (std::size_t i = 0; i < n; ++i) y[i] = eg.s * y[i] + eg.t * r[i];
      g = eg.g;
    }
    if (g != 1) throw SurfaceError("intersection form is not unimodular");
    std::vector<IntVector> next;
    for (const IntVector& z : rest) {
      const Integer zy = form(z, y);
      const Integer zx = form(z, x);
      IntVector p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] - zy * x[i] + zx * y[i];
      next.push_back(std::move(p));
    }
    rest = hermite_basis(std::move(next), n);
    as.push_back(x);
    bs.push_back(y);
  }
  std::vector<MarkedCurve> out;
  for (std::size_t k = 0; k < as.size(); ++k) {
    out.push_back(combine(s, loops, as[k]));
    out.push_back(combine(s, loops, bs[k]));
  }
  return out;
}

MarkedCurve combine(const TranslationSurface& s, const std::vector<MarkedCurve>& curves, const IntVector& coeffs) {
  MarkedCurve out;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const Integer& c = coeffs[k];
    if (c == 0) continue;
    const MarkedCurve piece = c > 0 ? curves[k] : reversed(s, curves[k]);
    const long times = Integer(abs(c)).get_si();
    for (long t = 0; t < times; ++t) out = concat(out, piece);
  }
  return out;
}

namespace {

std::string ref_str(EdgeRef e) { return std::to_string(e.poly) + ":" + std::to_string(e.edge); }

EdgeRef parse_ref(const std::string& tok) {
  const auto colon = tok.find(':');
  if (colon == std::string::npos) throw ParseError("expected <poly>:<edge>, got '" + tok + "'", 0);
  try {
    std::size_t u1 = 0, u2 = 0;
    const int p = std::stoi(tok.substr(0, colon), &u1);
    const int e = std::stoi(tok.substr(colon + 1), &u2);
    if (u1 != colon || u2 != tok.size() - colon - 1) throw ParseError("bad edge reference '" + tok + "'", 0);
    return {p, e};
  } catch (const std::logic_error&) {
    throw ParseError("bad edge reference '" + tok + "'", 0);
  }
}

}  // namespace

std::string format_tsurf(const TranslationSurface& s, const std::vector<MarkedCurve>& curves) {
  std::int64_t d = 1;
  for (int p = 0; p < s.polygon_count(); ++p)
    for (const auto& e : s.polygon(p)) {
      if (!e.re.is_rational()) d = e.re.d();
      if (!e.im.is_rational()) d = e.im.d();
    }
  std::ostringstream os;
  os << "TSURF 1 d=" << d << '\n';
  os << "polygons " << s.polygon_count() << '\n';
  for (int p = 0; p < s.polygon_count(); ++p) {
    os << "polygon";
    for (const auto& e : s.polygon(p)) os << " (" << e.re << ',' << e.im << ')';
    os << '\n';
  }
  std::vector<std::pair<EdgeRef, EdgeRef>> pairs;
  for (int i = 0; i < s.directed_edge_count(); ++i) {
    const EdgeRef e = s.ref(i);
    if (!s.is_paired(e)) continue;
    const EdgeRef f = s.partner(e);
    if (e < f) pairs.emplace_back(e, f);
  }
  os << "pairs " << pairs.size() << '\n';
  for (const auto& [e, f] : pairs) os << "pair " << ref_str(e) << ' ' << ref_str(f) << '\n';
  os << "curves " << curves.size() << '\n';
  for (const auto& c : curves) {
    os << "curve";
    for (const EdgeRef& e : c.steps) os << ' ' << ref_str(e);
    os << '\n';
  }
  return os.str();
}

std::pair<TranslationSurface, std::vector<MarkedCurve>> parse_tsurf(const std::string& text, FieldContext ctx) {
  std::istringstream is(text);
  std::string line;
  std::size_t offset = 0;
  std::size_t line_start = 0;
  auto next = [&]() -> std::istringstream {
    while (std::getline(is, line)) {
      line_start = offset;
      offset += line.size() + 1;
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      return std::istringstream(line);
    }
    throw ParseError("unexpected end of TSURF document", offset);
  };
  auto expect_count = [&](const char* keyword) {
    auto ls = next();
    std::string word;
    long n = -1;
    ls >> word >> n;
    if (word != keyword || n < 0) throw ParseError(std::string("expected '") + keyword + " <n>'", line_start);
    return n;
  };
  {
    auto ls = next();
    std::string magic, version, field;
    ls >> magic >> version >> field;
    if (magic != "TSURF" || version != "1" || field.rfind("d=", 0) != 0) throw ParseError("expected 'TSURF 1 d=<d>' header", line_start);
    const FieldContext hdr(std::stoll(field.substr(2)));
    if (ctx.d() != 1 && hdr.d() != 1 && ctx.d() != hdr.d()) throw ParseError("TSURF field conflicts with --field-d", line_start);
    if (hdr.d() != 1) ctx = hdr;
  }
  TranslationSurface s;
  const long np = expect_count("polygons");
  for (long p = 0; p < np; ++p) {
    auto ls = next();
    std::string word;
    ls >> word;
    if (word != "polygon") throw ParseError("expected 'polygon'", line_start);
    std::vector<PlanePoint> edges;
    std::string tok;
    while (ls >> tok) {
      if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')' || tok.find(',') == std::string::npos)
        throw ParseError("expected (re,im), got '" + tok + "'", line_start);
      const auto comma = tok.find(',');
      try {
        edges.emplace_back(parse_quad(tok.substr(1, comma - 1), ctx), parse_quad(tok.substr(comma + 1, tok.size() - comma - 2), ctx));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_start);
      }
    }
    try {
      s.add_polygon(std::move(edges));
    } catch (const SurfaceError& e) {
      throw ParseError(e.what(), line_start);
    }
  }
  const long npairs = expect_count("pairs");
  for (long k = 0; k < npairs; ++k) {
    auto ls = next();
    std::string word, a, b;
    ls >> word >> a >> b;
    if (word != "pair") throw ParseError("expected 'pair'", line_start);
    try {
      s.glue(parse_ref(a), parse_ref(b));
    } catch (const SurfaceError& e) {
      throw ParseError(e.what(), line_start);
    }
  }
  std::vector<MarkedCurve> curves;
  const long nc = expect_count("curves");
  for (long k = 0; k < nc; ++k) {
    auto ls = next();
    std::string word, tok;
    ls >> word;
    if (word != "curve") throw ParseError("expected 'curve'", line_start);
    MarkedCurve c;
    while (ls >> tok) {
      c.steps.push_back(parse_ref(tok));
      try {
        s.index(c.steps.back());
      } catch (const SurfaceError& e) {
        throw ParseError(e.what(), line_start);
      }
    }
    curves.push_back(std::move(c));
  }
  return {std::move(s), std::move(curves)};
}

}  // namespace strata
