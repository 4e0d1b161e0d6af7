#include "strata/certificate.hpp"

#include "strata/sp_action.hpp"

#include <functional>
#include <sstream>

namespace strata {

bool VerificationReport::all_pass() const { return first_failure() == 0; }

int VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.id;
  return 0;
}

std::string VerificationReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "check " << c.id << ' ' << c.name << ' ' << (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) os << ' ' << c.detail;
    os << '\n';
  }
  os << "result " << (all_pass() ? "pass" : "FAIL") << '\n';
  return os.str();
}

namespace {

bool is_standard_j(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      int expect = 0;
      if (i % 2 == 0 && j == i + 1) expect = 1;
      if (j % 2 == 0 && i == j + 1) expect = -1;
      if (m(i, j) != expect) return false;
    }
  return true;
}

}  // namespace

VerificationReport verify_certificate(const RealizationCertificate& cert) {
  VerificationReport rep;
  auto run = [&rep](int id, const char* name, const std::function<std::string()>& body) {
    CheckResult r{id, name, false, {}};
    try {
      r.detail = body();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    rep.checks.push_back(std::move(r));
  };
  const int g = cert.chi_prime.genus();

  run(1, "matrices", [&]() -> std::string {
    if (cert.gamma.genus() != cert.chi_original.genus()) return "gamma has the wrong size";
    if (!cert.gamma.is_symplectic()) return "gamma is not symplectic";
    if (qsign(cert.A.det()) <= 0) return "det A is not positive";
    return {};
  });
  run(2, "recompute", [&]() -> std::string {
    if (!(apply_gl(cert.A, apply_sp(cert.gamma, cert.chi_original)) == cert.chi_prime))
      return "chi' differs from A . gamma . chi";
    return {};
  });
  run(3, "surface", [&]() -> std::string {
    const auto problems = validate(cert.surface);
    if (!problems.empty()) return problems.front();
    vertex_cycles(cert.surface);
    return {};
  });
  run(4, "genus", [&]() -> std::string {
    const int sg = euler_and_genus(cert.surface).genus;
    if (sg != g || cert.partition.genus() != g)
      return "surface genus " + std::to_string(sg) + ", chi' genus " + std::to_string(g) + ", partition genus " +
             std::to_string(cert.partition.genus());
    return {};
  });
  run(5, "stratum", [&]() -> std::string {
    const Partition s = stratum(cert.surface);
    if (!(s == cert.partition)) return "surface stratum " + s.str() + ", certificate says " + cert.partition.str();
    return {};
  });
  run(6, "intersection", [&]() -> std::string {
    if (static_cast<int>(cert.marked_basis.size()) != 2 * g) return "marked basis has the wrong size";
    for (const auto& c : cert.marked_basis)
      if (!is_closed(cert.surface, c)) return "a marked curve is not closed";
    if (!is_standard_j(intersection_matrix(cert.surface, cert.marked_basis))) return "intersection matrix is not J";
    return {};
  });
  run(7, "periods", [&]() -> std::string {
    if (static_cast<int>(cert.marked_basis.size()) != 2 * g) return "marked basis has the wrong size";
    for (int j = 0; j < 2 * g; ++j) {
      const PlanePoint p = period(cert.surface, cert.marked_basis[static_cast<std::size_t>(j)]);
      if (!(p == cert.chi_prime.entries()[static_cast<std::size_t>(j)]))
        return "curve " + std::to_string(j) + " has period " + p.str();
    }
    return {};
  });
  run(8, "volume", [&]() -> std::string {
    QuadElem area;
    for (int j = 0; j < g; ++j)
      area += det2(period(cert.surface, cert.marked_basis.at(static_cast<std::size_t>(2 * j))),
                   period(cert.surface, cert.marked_basis.at(static_cast<std::size_t>(2 * j + 1))));
    const QuadElem v = volume(cert.chi_prime);
    if (!(area == v)) return "marked periods give area " + area.str() + ", vol chi' = " + v.str();
    if (!(v == cert.A.det() * volume(cert.chi_original))) return "vol chi' != det A . vol chi";
    return {};
  });
  run(9, "cover", [&]() -> std::string {
    if (!image_group(cert.chi_prime).is_lattice()) return {};
    const CoverData c = cover_data(cert.chi_prime, cert.partition);
    if (!c.degree_bound_ok) return "degree " + c.degree.get_str() + " below n_k + 1";
    return {};
  });
  return rep;
}

CoverData cover_data(const RealizationCertificate& cert) { return cover_data(cert.chi_prime, cert.partition); }

namespace {

std::int64_t field_of(const RealizationCertificate& cert) {
  std::int64_t d = 1;
  auto note = [&d](const QuadElem& x) {
    if (!x.is_rational()) d = x.d();
  };
  for (const auto* chi : {&cert.chi_original, &cert.chi_prime})
    for (const auto& p : chi->entries()) {
      note(p.re);
      note(p.im);
    }
  for (int i = 0; i < 4; ++i) note(cert.A(i / 2, i % 2));
  for (int p = 0; p < cert.surface.polygon_count(); ++p)
    for (const auto& e : cert.surface.polygon(p)) {
      note(e.re);
      note(e.im);
    }
  return d;
}

const char* const kSections[] = {"[partition]", "[chi]", "[A]", "[gamma]", "[chi_prime]", "[surface]"};

}  // namespace

std::string format_certificate(const RealizationCertificate& cert) {
  std::ostringstream os;
  os << "CERTIFICATE 1 d=" << field_of(cert) << '\n';
  os << kSections[0] << '\n' << cert.partition.str() << '\n';
  os << kSections[1] << '\n' << format_period_vector(cert.chi_original);
  os << kSections[2] << '\n' << cert.A;
  os << kSections[3] << '\n' << format_sp_matrix(cert.gamma);
  os << kSections[4] << '\n' << format_period_vector(cert.chi_prime);
  os << kSections[5] << '\n' << format_tsurf(cert.surface, cert.marked_basis);
  return os.str();
}

RealizationCertificate parse_certificate(const std::string& text, FieldContext ctx) {
  if (text.rfind("CERTIFICATE 1 d=", 0) != 0) throw ParseError("expected 'CERTIFICATE 1 d=<d>' header", 0);
  const auto eol = text.find('\n');
  if (eol == std::string::npos) throw ParseError("certificate truncated", 0);
  try {
    const FieldContext hdr(std::stoll(text.substr(16, eol - 16)));
    if (ctx.d() != 1 && hdr.d() != 1 && ctx.d() != hdr.d()) throw ParseError("certificate field conflicts with --field-d", 0);
    if (hdr.d() != 1) ctx = hdr;
  } catch (const std::logic_error&) {
    throw ParseError("bad field in certificate header", 0);
  }
  std::vector<std::size_t> pos;
  std::size_t from = eol;
  for (const char* s : kSections) {
    const auto p = text.find(std::string("\n") + s + "\n", from);
    if (p == std::string::npos) throw ParseError(std::string("missing section ") + s, from);
    pos.push_back(p);
    from = p + 1;
  }
  auto body = [&](std::size_t k) {
    const std::size_t start = pos[k] + std::string(kSections[k]).size() + 2;
    const std::size_t end = k + 1 < pos.size() ? pos[k + 1] + 1 : text.size();
    return text.substr(start, end - start);
  };
  RealizationCertificate cert;
  std::string part = body(0);
  while (!part.empty() && (part.back() == '\n' || part.back() == '\r' || part.back() == ' ')) part.pop_back();
  try {
    cert.partition = Partition::parse(part);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad partition: ") + e.what(), pos[0]);
  }
  cert.chi_original = parse_period_vector(body(1), ctx);
  {
    std::istringstream as(body(2));
    std::string e[4];
    for (auto& s : e)
      if (!(as >> s)) throw ParseError("GL2+ block truncated", pos[2]);
    try {
      cert.A = GLPlus(parse_quad(e[0], ctx), parse_quad(e[1], ctx), parse_quad(e[2], ctx), parse_quad(e[3], ctx));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), pos[2]);
    }
  }
  cert.gamma = parse_sp_matrix(body(3));
  cert.chi_prime = parse_period_vector(body(4), ctx);
  auto [s, curves] = parse_tsurf(body(5), ctx);
  cert.surface = std::move(s);
  cert.marked_basis = std::move(curves);
  return cert;
}

}  // namespace strata
