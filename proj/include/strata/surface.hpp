#pragma once

// Translation surfaces as polygons with translation edge pairings: vertex
// cycles and cone angles, Euler data, stratum, periods and algebraic
// intersection numbers of closed edge paths, a symplectic homology basis,
// and the TSURF text format.

#include "strata/chi.hpp"
#include "strata/intmat.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strata {

struct SurfaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Directed edge `edge` of polygon `poly`, running from vertex `edge` to
// vertex `edge + 1` of that polygon.
struct EdgeRef {
  int poly = 0;
  int edge = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

class TranslationSurface {
 public:
  // Edge vectors in counterclockwise order; returns the polygon index.
  int add_polygon(std::vector<PlanePoint> edges);
  void glue(EdgeRef a, EdgeRef b);

  int polygon_count() const { return static_cast<int>(polys_.size()); }
  const std::vector<PlanePoint>& polygon(int p) const { return polys_.at(static_cast<std::size_t>(p)); }
  const PlanePoint& edge_vector(EdgeRef e) const;
  bool is_paired(EdgeRef e) const { return pair_.at(static_cast<std::size_t>(index(e))) >= 0; }
  EdgeRef partner(EdgeRef e) const;
  int directed_edge_count() const { return static_cast<int>(pair_.size()); }
  int index(EdgeRef e) const;
  EdgeRef ref(int index) const;
  EdgeRef next_in_polygon(EdgeRef e) const;
  EdgeRef prev_in_polygon(EdgeRef e) const;

  // Replaces an edge vector in place; used by mutation tests.
  void set_edge_vector(EdgeRef e, const PlanePoint& v);

  friend bool operator==(const TranslationSurface&, const TranslationSurface&) = default;

 private:
  std::vector<std::vector<PlanePoint>> polys_;
  std::vector<int> offset_;
  std::vector<int> pair_;
};

struct MarkedCurve {
  std::vector<EdgeRef> steps;
  friend bool operator==(const MarkedCurve&, const MarkedCurve&) = default;
};

// Problems with closure, simplicity, orientation, pairing and connectivity;
// empty when the surface is valid.
std::vector<std::string> validate(const TranslationSurface& s);

// A corner is named by its outgoing edge. Angle = 2 pi * turns.
struct VertexCycle {
  std::vector<EdgeRef> corners;
  long turns = 0;
};

std::vector<VertexCycle> vertex_cycles(const TranslationSurface& s);
// Vertex class of the start point of every directed edge, by flat index.
std::vector<int> vertex_ids(const TranslationSurface& s);

struct EulerData {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler = 0;
  int genus = 0;
};
EulerData euler_and_genus(const TranslationSurface& s);
Partition stratum(const TranslationSurface& s);

bool is_closed(const TranslationSurface& s, const MarkedCurve& c);
PlanePoint period(const TranslationSurface& s, const MarkedCurve& c);
MarkedCurve reversed(const TranslationSurface& s, const MarkedCurve& c);
MarkedCurve concat(const MarkedCurve& a, const MarkedCurve& b);
int intersection_number(const TranslationSurface& s, const MarkedCurve& c1, const MarkedCurve& c2);
IntMatrix intersection_matrix(const TranslationSurface& s, const std::vector<MarkedCurve>& curves);
std::vector<MarkedCurve> symplectic_homology_basis(const TranslationSurface& s);
// Integer combination sum_k coeffs[k] * curves[k]; all curves must share a
// base vertex.
MarkedCurve combine(const TranslationSurface& s, const std::vector<MarkedCurve>& curves, const IntVector& coeffs);

std::string format_tsurf(const TranslationSurface& s, const std::vector<MarkedCurve>& curves = {});
std::pair<TranslationSurface, std::vector<MarkedCurve>> parse_tsurf(const std::string& text, FieldContext ctx);

}  // namespace strata
