#pragma once

// Slit diagrams over parallelograms, their compilation into polygon
// complexes, and the realization builders.

#include "strata/chi.hpp"
#include "strata/linear.hpp"
#include "strata/surface.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strata {

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Left bank: material on the left of the segment vector.
enum class Bank { left, right };

// Segments of a parallelogram group: 0 bottom [0, u], 1 right [u, u + v],
// 2 top [v, v + u], 3 left [0, v], slit k is segment 4 + k.
inline constexpr int seg_bottom = 0;
inline constexpr int seg_right = 1;
inline constexpr int seg_top = 2;
inline constexpr int seg_left = 3;
inline constexpr int first_slit = 4;

struct SideRef {
  int group = 0;
  int segment = 0;
  Bank bank = Bank::left;
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct Slit {
  PlanePoint anchor;
  PlanePoint vector;
  std::string tag;
};

struct Parallelogram {
  PlanePoint u;
  PlanePoint v;
  std::vector<Slit> slits;
  std::string tag;
};

struct SlitDiagram {
  std::vector<Parallelogram> groups;  // group 0 is the base
  // Glued side pairs; each pair must be a left bank and a right bank of
  // equal vectors, identified by translation.
  std::vector<std::pair<SideRef, SideRef>> gluing;
  // Marked curves as chains of whole sides, each walked along its material
  // orientation (+vector on a left bank, -vector on a right bank).
  std::vector<std::vector<SideRef>> curves;
};

std::pair<PlanePoint, PlanePoint> segment_of(const SlitDiagram& d, int group, int segment);

// Containment, slit contacts and gluing consistency; empty when sound.
std::vector<std::string> check_diagram(const SlitDiagram& d);

// Parallelogram (u, v) with its torus gluing; returns the group index.
int add_torus_group(SlitDiagram& d, const PlanePoint& u, const PlanePoint& v, const std::string& tag);
SlitDiagram base_diagram(const PlanePoint& u, const PlanePoint& v);

// Adds slit [anchor, anchor + vec] to a group after exact containment and
// contact checks; returns the slit's segment index.
int add_slit(SlitDiagram& d, int group, const PlanePoint& anchor, const PlanePoint& vec, const std::string& tag);

// Slit [p, p + a] in the base; the handle (a, b) is glued along its a-edges
// to the two banks. Appends the handle's (a, b) curves.
SlitDiagram glue_handle_slit(SlitDiagram d, const PlanePoint& p, const PlanePoint& a, const PlanePoint& b);

// Slit [p, p + w] in the base cross-glued to the slit of vector w centered in
// a new torus (a, b). Appends the torus's (a, b) curves.
SlitDiagram glue_odd_slit(SlitDiagram d, const PlanePoint& p, const PlanePoint& w, const PlanePoint& a,
                          const PlanePoint& b);

// Base slits [anchor_t, anchor_t + vec] glued cyclically: the left bank of
// slit t to the right bank of slit t + 1.
SlitDiagram add_cyclic_slits(SlitDiagram d, const std::vector<PlanePoint>& anchors, const PlanePoint& vec,
                             const std::string& tag);

struct CompiledSurface {
  TranslationSurface surface;
  std::vector<MarkedCurve> curves;
};

// Cuts every parallelogram along its slits into trapezoids and applies the
// diagram's gluing.
CompiledSurface compile(const SlitDiagram& d);

struct RealizationCertificate {
  PeriodVector chi_original;
  GLPlus A;
  SpMatrix gamma;
  PeriodVector chi_prime;
  Partition partition;
  TranslationSurface surface;
  std::vector<MarkedCurve> marked_basis;
  std::optional<SlitDiagram> diagram;  // kept for rendering, not serialized
};

// Odd parts attach their tori to the base through a slit joining the two
// starfish centers of a pair of odd parts.
std::optional<SlitDiagram> plan_generic(const PeriodVector& chi_prime, const Partition& part);

RealizationCertificate build_generic(const PeriodVector& chi_prime, const Partition& part);
RealizationCertificate build_lattice_multi(const PeriodVector& chi_prime, const Partition& part);
RealizationCertificate build_lattice_minimal(const PeriodVector& chi_prime, int g);
RealizationCertificate build_genus2(const PeriodVector& chi_prime, const Partition& part);

// m_2..m_g for the lattice normal form used by realize.
std::vector<int> lattice_m_for(const Partition& part);

struct RealizeOptions {
  int max_steps = 20000;
  std::uint64_t seed = 1;
};

enum class RealizeStatus { certificate, not_realizable, heuristic_exhausted };
std::string to_string(RealizeStatus s);

struct RealizeOutcome {
  RealizeStatus status = RealizeStatus::not_realizable;
  std::optional<RealizationCertificate> certificate;
  Verdict verdict;
  std::string message;
};

RealizeOutcome realize(const PeriodVector& chi, const Partition& part, const RealizeOptions& opt = {});

// Parallelograms side by side with their slits; handle slits black, odd
// slits purple, cyclic rows blue.
std::string render_svg(const SlitDiagram& d);
// Polygons of a surface laid out on a grid, edges labelled by pairing.
std::string render_surface_svg(const TranslationSurface& s);

}  // namespace strata
