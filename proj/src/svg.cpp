#include "strata/builder.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace strata {

namespace {

struct Pt {
  double x, y;
};

Pt to_pt(const PlanePoint& p) { return {p.re.to_double(), p.im.to_double()}; }

std::string slit_color(const std::string& tag) {
  if (tag.rfind("odd", 0) == 0) return "purple";
  if (tag.rfind("handle", 0) == 0) return "black";
  return "steelblue";
}

struct Canvas {
  std::ostringstream body;
  double xmax = 0, ymax = 0;

  void line(Pt a, Pt b, const std::string& color, double width) {
    body << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y << "\" stroke=\"" << color
         << "\" stroke-width=\"" << width << "\"/>\n";
    xmax = std::max({xmax, a.x, b.x});
    ymax = std::max({ymax, a.y, b.y});
  }
  void text(Pt a, const std::string& s, double size) {
    body << "<text x=\"" << a.x << "\" y=\"" << a.y << "\" font-size=\"" << size << "\">" << s << "</text>\n";
  }
  std::string finish() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << xmax + 20 << "\" height=\"" << ymax + 20 << "\">\n"
       << body.str() << "</svg>\n";
    return os.str();
  }
};

}  // namespace

std::string render_svg(const SlitDiagram& d) {
  Canvas c;
  c.body << std::fixed << std::setprecision(2);
  double left = 10;
  const double size = 300;
  for (const Parallelogram& p : d.groups) {
    const Pt u = to_pt(p.u), v = to_pt(p.v);
    const double xs[] = {0, u.x, v.x, u.x + v.x};
    const double ys[] = {0, u.y, v.y, u.y + v.y};
    const double x0 = *std::min_element(xs, xs + 4), x1 = *std::max_element(xs, xs + 4);
    const double y0 = *std::min_element(ys, ys + 4), y1 = *std::max_element(ys, ys + 4);
    const double scale = size / std::max(x1 - x0, y1 - y0);
    auto map = [&](Pt q) { return Pt{left + (q.x - x0) * scale, 30 + (y1 - q.y) * scale}; };
    const Pt corners[] = {{0, 0}, u, {u.x + v.x, u.y + v.y}, v};
    for (int k = 0; k < 4; ++k) c.line(map(corners[k]), map(corners[(k + 1) % 4]), "gray", 1);
    for (const Slit& s : p.slits) {
      const Pt a = to_pt(s.anchor), w = to_pt(s.vector);
      c.line(map(a), map({a.x + w.x, a.y + w.y}), slit_color(s.tag), 2.5);
    }
    c.text({left, 20}, p.tag, 14);
    left += (x1 - x0) * scale + 40;
  }
  return c.finish();
}

std::string render_surface_svg(const TranslationSurface& s) {
  Canvas c;
  c.body << std::fixed << std::setprecision(2);
  const int n = s.polygon_count();
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
  double cell = 0;
  std::vector<std::vector<Pt>> polys;
  for (int p = 0; p < n; ++p) {
    std::vector<Pt> pts{{0, 0}};
    for (const auto& e : s.polygon(p)) {
      const Pt d = to_pt(e);
      pts.push_back({pts.back().x + d.x, pts.back().y + d.y});
    }
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    for (const Pt& q : pts) {
      x0 = std::min(x0, q.x), x1 = std::max(x1, q.x), y0 = std::min(y0, q.y), y1 = std::max(y1, q.y);
    }
    for (Pt& q : pts) q = {q.x - x0, y1 - q.y};
    cell = std::max({cell, x1 - x0, y1 - y0});
    polys.push_back(std::move(pts));
  }
  const double scale = cell > 0 ? 120 / cell : 1;
  for (int p = 0; p < n; ++p) {
    const double ox = 10 + (p % cols) * 150, oy = 10 + (p / cols) * 150;
    const auto& pts = polys[static_cast<std::size_t>(p)];
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const Pt a{ox + pts[k].x * scale, oy + pts[k].y * scale};
      const Pt b{ox + pts[k + 1].x * scale, oy + pts[k + 1].y * scale};
      c.line(a, b, "black", 1);
      const EdgeRef e{p, static_cast<int>(k)};
      if (s.is_paired(e)) {
        const EdgeRef f = s.partner(e);
        c.text({(a.x + b.x) / 2, (a.y + b.y) / 2}, std::to_string(std::min(s.index(e), s.index(f))), 8);
      }
    }
  }
  return c.finish();
}

}  // namespace strata
