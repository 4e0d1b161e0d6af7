#pragma once

// Realization certificates: text serialization and independent
// verification from scratch.

#include "strata/builder.hpp"

#include <string>
#include <vector>

namespace strata {

// Check ids: 1 matrices, 2 recompute, 3 surface, 4 genus, 5 stratum,
// 6 intersection, 7 periods, 8 volume, 9 cover.
struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  // Id of the first failing check, 0 if none.
  int first_failure() const;
  std::string str() const;
};

VerificationReport verify_certificate(const RealizationCertificate& cert);

// Lattice certificates only; throws ShapeError otherwise.
CoverData cover_data(const RealizationCertificate& cert);

// Sections [partition] [chi] [A] [gamma] [chi_prime] [surface], the last one
// a TSURF document whose curves are the marked basis.
std::string format_certificate(const RealizationCertificate& cert);
RealizationCertificate parse_certificate(const std::string& text, FieldContext ctx);

}  // namespace strata
