#pragma once

// Exact plane predicates shared by the polygon and slit code.

#include "strata/field.hpp"

namespace strata {

inline int orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) { return qsign(det2(b - a, c - a)); }

// Angular order of directions starting from the positive real axis.
inline int half_plane(const PlanePoint& v) {
  const int y = qsign(v.im);
  return (y > 0 || (y == 0 && qsign(v.re) > 0)) ? 0 : 1;
}

inline bool angle_less(const PlanePoint& u, const PlanePoint& w) {
  const int hu = half_plane(u);
  const int hw = half_plane(w);
  if (hu != hw) return hu < hw;
  return qsign(det2(u, w)) > 0;
}

// p lies on the closed segment [a, b].
inline bool on_segment(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  if (orient(a, b, p) != 0) return false;
  return qsign(dot(p - a, p - b)) <= 0;
}

enum class Contact { none, shared_endpoint, illegal };

// Classifies how closed segments [p1, p2] and [q1, q2] meet. Touching at a
// common endpoint with no other common point is a shared endpoint; anything
// else that meets is illegal.
inline Contact segment_contact(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& q1, const PlanePoint& q2) {
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return Contact::illegal;
  const bool q1_on = on_segment(q1, p1, p2);
  const bool q2_on = on_segment(q2, p1, p2);
  const bool p1_on = on_segment(p1, q1, q2);
  const bool p2_on = on_segment(p2, q1, q2);
  if (!q1_on && !q2_on && !p1_on && !p2_on) return Contact::none;
  const int shared = (p1 == q1) + (p1 == q2) + (p2 == q1) + (p2 == q2);
  if (shared != 1) return Contact::illegal;
  // Exactly one shared endpoint: collinear segments pointing the same way
  // from it overlap.
  PlanePoint s, u, v;
  if (p1 == q1) s = p1, u = p2, v = q2;
  if (p1 == q2) s = p1, u = p2, v = q1;
  if (p2 == q1) s = p2, u = p1, v = q2;
  if (p2 == q2) s = p2, u = p1, v = q1;
  if (orient(s, u, v) == 0 && qsign(dot(u - s, v - s)) > 0) return Contact::illegal;
  return Contact::shared_endpoint;
}

}  // namespace strata
