#include "strata/chi.hpp"

#include "strata/intmat.hpp"
#include "strata/sp_action.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace strata {

PeriodVector::PeriodVector(std::vector<PlanePoint> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2 || entries_.size() % 2 != 0)
    throw ShapeError("period vector needs 2g entries, got " + std::to_string(entries_.size()));
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end());
  for (int n : parts_)
    if (n < 1) throw ShapeError("partition entries must be >= 1");
  const int sum = std::accumulate(parts_.begin(), parts_.end(), 0);
  if (sum % 2 != 0) throw ShapeError("partition sum must be even (2g - 2)");
  genus_ = sum / 2 + 1;
}

Partition Partition::parse(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad partition entry '" + item + "'", 0);
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw ParseError("bad partition entry '" + item + "'", 0);
    parts.push_back(v);
  }
  if (parts.empty()) throw ParseError("empty partition", 0);
  return Partition(std::move(parts));
}

std::string Partition::str() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
  return out;
}

std::string to_string(ImageClass c) {
  switch (c) {
    case ImageClass::trivial: return "trivial";
    case ImageClass::line_discrete: return "line_discrete";
    case ImageClass::line_dense: return "line_dense";
    case ImageClass::lattice: return "lattice";
    case ImageClass::plane_nondiscrete: return "plane_nondiscrete";
  }
  return "?";
}

QuadElem volume(const PeriodVector& chi) {
  QuadElem v;
  for (int i = 0; i < chi.genus(); ++i) v += chi.handle_det(i);
  return v;
}

std::vector<PlanePoint> subgroup_basis(const std::vector<PlanePoint>& generators) {
  std::int64_t d = 1;
  Integer lcm = 1;
  auto note = [&](const QuadElem& x) {
    if (!x.is_rational()) {
      if (d != 1 && d != x.d()) throw FieldError("mixed fields in period vector");
      d = x.d();
    }
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.rational_part().get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.sqrt_part().get_den_mpz_t());
  };
  for (const auto& p : generators) {
    note(p.re);
    note(p.im);
  }
  const Rational scale(lcm);
  std::vector<IntVector> rows;
  for (const auto& p : generators) {
    auto coord = [&](const Rational& r) {
      const Rational s = r * scale;
      return Integer(s.get_num());
    };
    rows.push_back({coord(p.re.rational_part()), coord(p.re.sqrt_part()), coord(p.im.rational_part()),
                    coord(p.im.sqrt_part())});
  }
  std::vector<PlanePoint> basis;
  for (const auto& row : hermite_basis(std::move(rows), 4)) {
    auto elem = [&](const Integer& x, const Integer& y) {
      return QuadElem(Rational(x, lcm), Rational(y, lcm), d);
    };
    basis.emplace_back(elem(row[0], row[1]), elem(row[2], row[3]));
  }
  return basis;
}

ImageGroupReport image_group(const PeriodVector& chi) {
  ImageGroupReport rep;
  const auto basis = subgroup_basis(chi.entries());
  rep.rank = static_cast<int>(basis.size());
  if (basis.empty()) return rep;
  bool collinear = true;
  for (std::size_t j = 1; j < basis.size(); ++j)
    if (qsign(det2(basis[0], basis[j])) != 0) collinear = false;
  if (collinear) {
    rep.classification = basis.size() == 1 ? ImageClass::line_discrete : ImageClass::line_dense;
    return rep;
  }
  if (basis.size() > 2) {
    rep.classification = ImageClass::plane_nondiscrete;
    return rep;
  }
  const GaussResult red = gauss_reduce(basis[0], basis[1]);
  PlanePoint v1 = red.v1;
  PlanePoint v2 = red.v2;
  if (qsign(det2(v1, v2)) < 0) v2 = -v2;
  rep.classification = ImageClass::lattice;
  rep.covolume = det2(v1, v2);
  rep.lattice_basis = std::make_pair(v1, v2);
  return rep;
}

PeriodVector apply_sp(const SpMatrix& m, const PeriodVector& chi) {
  if (m.genus() != chi.genus())
    throw ShapeError("symplectic matrix of genus " + std::to_string(m.genus()) + " applied to genus " +
                     std::to_string(chi.genus()) + " character");
  const auto n = chi.size();
  std::vector<PlanePoint> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    PlanePoint acc;
    for (std::size_t c = 0; c < n; ++c) {
      const Integer& k = m.matrix()(r, c);
      if (k == 0) continue;
      acc += QuadElem(Rational(k)) * chi[c];
    }
    out[r] = acc;
  }
  return PeriodVector(std::move(out));
}

PeriodVector apply_gl(const GLPlus& a, const PeriodVector& chi) {
  std::vector<PlanePoint> out;
  out.reserve(chi.size());
  for (const auto& p : chi.entries()) out.push_back(a.apply(p));
  return PeriodVector(std::move(out));
}

std::string Verdict::describe() const {
  if (realizable) return "REALIZABLE";
  switch (reason) {
    case RejectReason::nonpositive_volume: return "NOT_REALIZABLE reason=nonpositive_volume volume=" + volume.str();
    case RejectReason::lattice_bound:
      return "NOT_REALIZABLE reason=lattice_bound volume=" + volume.str() + " deficit=" + deficit->str();
    case RejectReason::none: break;
  }
  return "NOT_REALIZABLE";
}

namespace {

Verdict decide_with_bound(const PeriodVector& chi, int largest) {
  Verdict v;
  v.volume = volume(chi);
  v.image = image_group(chi);
  if (qsign(v.volume) <= 0) {
    v.reason = RejectReason::nonpositive_volume;
    return v;
  }
  if (v.image.is_lattice()) {
    v.deficit = QuadElem(largest + 1) * *v.image.covolume - v.volume;
    if (qsign(*v.deficit) > 0) {
      v.reason = RejectReason::lattice_bound;
      return v;
    }
  }
  v.realizable = true;
  return v;
}

}  // namespace

Verdict decide(const PeriodVector& chi, const Partition& part) {
  if (part.genus() != chi.genus())
    throw ShapeError("partition " + part.str() + " is for genus " + std::to_string(part.genus()) +
                     " but the character has genus " + std::to_string(chi.genus()));
  return decide_with_bound(chi, part.largest());
}

Verdict haupt_decide(const PeriodVector& chi) { return decide_with_bound(chi, 1); }

CoverData cover_data(const PeriodVector& chi, const Partition& part) {
  CoverData out;
  out.sublattice = image_group(chi);
  if (!out.sublattice.is_lattice()) throw ShapeError("cover data needs a lattice image");
  const QuadElem ratio = volume(chi) / *out.sublattice.covolume;
  if (!ratio.is_integer()) throw ShapeError("volume / covolume = " + ratio.str() + " is not an integer");
  out.degree = ratio.to_integer();
  out.branch_orders = part;
  out.degree_bound_ok = out.degree >= part.largest() + 1;
  return out;
}

std::string format_period_vector(const PeriodVector& chi) {
  std::int64_t d = 1;
  for (const auto& p : chi.entries()) {
    if (!p.re.is_rational()) d = p.re.d();
    if (!p.im.is_rational()) d = p.im.d();
  }
  std::ostringstream os;
  os << "genus " << chi.genus();
  if (d != 1) os << " d=" << d;
  os << '\n';
  for (const auto& p : chi.entries()) os << p << '\n';
  return os.str();
}

PeriodVector parse_period_vector(const std::string& text, FieldContext ctx) {
  std::istringstream is(text);
  std::string line;
  std::size_t offset = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      offset += line.size() + 1;
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing genus header", 0);
  std::istringstream header(line);
  std::string word;
  int g = 0;
  header >> word >> g;
  if (word != "genus" || g < 1) throw ParseError("expected 'genus <g>' header", offset - line.size() - 1);
  if (header >> word) {
    if (word.rfind("d=", 0) != 0) throw ParseError("expected d=<d> in header", offset - line.size() - 1);
    const FieldContext hdr(std::stoll(word.substr(2)));
    if (ctx.d() != 1 && hdr.d() != ctx.d())
      throw ParseError("header field d=" + std::to_string(hdr.d()) + " conflicts with d=" + std::to_string(ctx.d()), 0);
    ctx = hdr;
  }
  std::vector<PlanePoint> entries;
  for (int j = 0; j < 2 * g; ++j) {
    if (!next_line()) throw ParseError("expected " + std::to_string(2 * g) + " plane points", offset);
    try {
      entries.push_back(parse_point(line, ctx));
    } catch (const ParseError& e) {
      throw ParseError(std::string("line ") + std::to_string(j + 2) + ": " + e.what(), offset - line.size() - 1 + e.position);
    }
  }
  if (next_line()) throw ParseError("trailing content after period vector", offset - line.size() - 1);
  return PeriodVector(std::move(entries));
}

}  // namespace strata
