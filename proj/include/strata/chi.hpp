#pragma once

// Period characters as vectors of plane points indexed by a standard
// symplectic basis, their volume, and exact analysis of the image group.

#include "strata/field.hpp"
#include "strata/linear.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace strata {

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Entries ordered (a1, b1, a2, b2, ..., ag, bg).
class PeriodVector {
 public:
  PeriodVector() = default;
  explicit PeriodVector(std::vector<PlanePoint> entries);

  int genus() const { return static_cast<int>(entries_.size() / 2); }
  const std::vector<PlanePoint>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const PlanePoint& operator[](std::size_t j) const { return entries_[j]; }
  PlanePoint& operator[](std::size_t j) { return entries_[j]; }
  // 0-based handle index.
  const PlanePoint& a(int i) const { return entries_[2 * static_cast<std::size_t>(i)]; }
  const PlanePoint& b(int i) const { return entries_[2 * static_cast<std::size_t>(i) + 1]; }
  QuadElem handle_det(int i) const { return det2(a(i), b(i)); }

  friend bool operator==(const PeriodVector&, const PeriodVector&) = default;

 private:
  std::vector<PlanePoint> entries_;
};

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);  // sorts; throws unless sum is even and parts >= 1

  static Partition parse(const std::string& text);  // "n1,n2,..."
  static Partition principal(int g) { return Partition(std::vector<int>(2 * static_cast<std::size_t>(g) - 2, 1)); }

  const std::vector<int>& parts() const { return parts_; }
  int genus() const { return genus_; }
  int largest() const { return parts_.empty() ? 0 : parts_.back(); }
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int genus_ = 1;
};

enum class ImageClass { trivial, line_discrete, line_dense, lattice, plane_nondiscrete };
std::string to_string(ImageClass c);

struct ImageGroupReport {
  int rank = 0;
  ImageClass classification = ImageClass::trivial;
  std::optional<std::pair<PlanePoint, PlanePoint>> lattice_basis;  // Gauss-reduced, positively oriented
  std::optional<QuadElem> covolume;

  bool is_lattice() const { return classification == ImageClass::lattice; }
};

QuadElem volume(const PeriodVector& chi);
ImageGroupReport image_group(const PeriodVector& chi);
// Z-basis of the subgroup of the plane generated by the given points.
std::vector<PlanePoint> subgroup_basis(const std::vector<PlanePoint>& generators);

PeriodVector apply_sp(const SpMatrix& m, const PeriodVector& chi);
PeriodVector apply_gl(const GLPlus& a, const PeriodVector& chi);

enum class RejectReason { none, nonpositive_volume, lattice_bound };

struct Verdict {
  bool realizable = false;
  RejectReason reason = RejectReason::none;
  QuadElem volume;
  ImageGroupReport image;
  // Lattice case: (n_k + 1) * covolume - volume; positive exactly when rejected.
  std::optional<QuadElem> deficit;

  std::string describe() const;
};

Verdict decide(const PeriodVector& chi, const Partition& part);
Verdict haupt_decide(const PeriodVector& chi);

struct CoverData {
  Integer degree;
  Partition branch_orders;
  ImageGroupReport sublattice;
  bool degree_bound_ok = false;  // degree >= n_k + 1
};

// Throws ShapeError if the image is not a lattice or vol/covolume is not an
// integer.
CoverData cover_data(const PeriodVector& chi, const Partition& part);

// Text format: "genus <g>[ d=<d>]" then 2g lines "<re> <im>".
std::string format_period_vector(const PeriodVector& chi);
PeriodVector parse_period_vector(const std::string& text, FieldContext ctx);

}  // namespace strata
