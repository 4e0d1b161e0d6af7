#pragma once

// Constructive Sp(2g, Z) machinery: transitivity on primitive vectors, the
// lattice normal form, the generic-form predicate and its search heuristic,
// plane lattice reduction, and the genus-2 reduction.

#include "strata/chi.hpp"
#include "strata/intmat.hpp"
#include "strata/linear.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

// An internal postcondition failed; indicates a bug, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class FormTag { lattice_form, generic_form, genus2_form };
std::string to_string(FormTag t);
FormTag form_tag_from_string(const std::string& s);

struct NormalFormResult {
  GLPlus A;
  SpMatrix gamma;
  PeriodVector chi_prime;
  FormTag form_tag = FormTag::lattice_form;

  // chi_prime == apply_gl(A, apply_sp(gamma, chi))
  bool recomputes(const PeriodVector& chi) const;
};

std::string format_normal_form(const NormalFormResult& r);
NormalFormResult parse_normal_form(const std::string& text, FieldContext ctx);
std::string format_sp_matrix(const SpMatrix& m);
SpMatrix parse_sp_matrix(const std::string& text);

// Returns M symplectic with M * u = e1. Throws PreconditionError unless u is
// primitive.
SpMatrix primitive_to_basis(const IntVector& u);
// M with M * u = v when gcd(u) == gcd(v); nullopt otherwise.
std::optional<SpMatrix> orbit_map(const IntVector& u, const IntVector& v);

enum class EuclidCoordinate { re, im, plane };
enum class EuclidZero { either, a, b };

struct SpStep {
  SpMatrix gamma;
  PeriodVector chi;
};

// Two-generator Euclidean algorithm inside handle i (0-based) on the chosen
// coordinate, until one of the two values vanishes (or the requested one).
SpStep handle_euclid(const PeriodVector& chi, int handle, EuclidCoordinate coord,
                     EuclidZero zero = EuclidZero::either, int max_iterations = 100000);

// m holds m_2..m_g (so g - 1 entries) with m_2 = 1 and each entry in {1, 2}.
NormalFormResult lattice_normal_form(const PeriodVector& chi, const std::vector<int>& m);

// Axis-aligned bounding box of {M a_i : i >= 2}.
struct Box {
  QuadElem xmin, xmax, ymin, ymax;
};
Box bounding_box(const std::vector<PlanePoint>& pts);
// A translation t such that t + box lies strictly inside the parallelogram
// spanned by u, v at the origin, if one exists.
std::optional<PlanePoint> fit_box_in_parallelogram(const Box& box, const PlanePoint& u, const PlanePoint& v);

bool generic_form_check(const PeriodVector& chi, const QuadElem& M);

struct HeuristicOptions {
  QuadElem M = 1;
  int max_steps = 20000;
  std::uint64_t seed = 1;
  // Extra acceptance test applied to candidates that pass generic_form_check.
  std::function<bool(const PeriodVector&)> accept;
};

std::optional<NormalFormResult> generic_normalize_heuristic(const PeriodVector& chi, const HeuristicOptions& opt);

struct Sl2Integer {
  Integer a = 1, b = 0, c = 0, d = 1;  // (v1', v2') = (a v1 + b v2, c v1 + d v2)
};

struct GaussResult {
  Sl2Integer u;
  PlanePoint v1;
  PlanePoint v2;
};

// Lagrange-Gauss reduction: the result has |v1'| <= |v2'| and
// |<v1', v2'>| <= |v1'|^2 / 2.
GaussResult gauss_reduce(const PlanePoint& v1, const PlanePoint& v2);

struct IntPair {
  Integer n;
  Integer m;
};
// (n, m) with lo < n*x0 + m*x1 < hi; requires Z x0 + Z x1 dense in R.
IntPair dense_interval_hit(const QuadElem& x0, const QuadElem& x1, const QuadElem& lo, const QuadElem& hi);

SpStep halve_handle(const PeriodVector& chi);
SpStep resolve_zero_det(const PeriodVector& chi);
NormalFormResult genus2_normalize(const PeriodVector& chi);

}  // namespace strata
