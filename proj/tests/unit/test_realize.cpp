#include "strata/certificate.hpp"
#include "strata/sp_action.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace strata;
using namespace strata::test;

namespace {

void partitions_of(int n, int max, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(n, max); k >= 1; --k) {
    cur.push_back(k);
    partitions_of(n - k, k, cur, out);
    cur.pop_back();
  }
}

PeriodVector lattice_chi(int g, int p) {
  std::vector<PlanePoint> e{P(std::to_string(p).c_str()), P("0", "1")};
  for (int j = 1; j < g; ++j) {
    e.push_back(P(j == 1 ? "1" : "0"));
    e.push_back(P("0"));
  }
  return PeriodVector(e);
}

void require_verified(const RealizeOutcome& out) {
  REQUIRE(out.status == RealizeStatus::certificate);
  const auto rep = verify_certificate(*out.certificate);
  INFO(rep.str());
  CHECK(rep.all_pass());
}

}  // namespace

TEST_CASE("lattice realization for every partition up to genus 4") {
  for (int g = 2; g <= 4; ++g) {
    std::vector<Partition> parts;
    std::vector<int> cur;
    partitions_of(2 * g - 2, 2 * g - 2, cur, parts);
    for (const auto& part : parts)
      for (int extra : {1, 3}) {
        const int p = part.largest() + extra;
        INFO("partition " << part.str() << " p " << p);
        require_verified(realize(lattice_chi(g, p), part));
      }
  }
}

TEST_CASE("lattice bound edge") {
  const auto out = realize(lattice_chi(2, 2), Partition({2}));
  CHECK(out.status == RealizeStatus::not_realizable);
  const auto out2 = realize(V({P("1"), P("0", "1"), P("0"), P("0")}), Partition({2}));
  CHECK(out2.status == RealizeStatus::not_realizable);
}

TEST_CASE("H(3,5,5,5) lattice realization") {
  require_verified(realize(lattice_chi(10, 6), Partition({3, 5, 5, 5})));
}

TEST_CASE("genus 2 non-lattice realization") {
  const auto chi = V({P("1"), P("0", "1"), P("1/8*sqrt(2)", "1/8*sqrt(2)"), P("0", "1/8")});
  require_verified(realize(chi, Partition({1, 1})));
  require_verified(realize(chi, Partition({2})));
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 10) {
    std::vector<PlanePoint> e;
    for (int k = 0; k < 4; ++k) e.push_back(random_point(rng, 2, 4));
    const PeriodVector c(e);
    if (qsign(volume(c)) <= 0 || image_group(c).is_lattice()) continue;
    ++done;
    require_verified(realize(c, Partition({2})));
    require_verified(realize(c, Partition({1, 1})));
  }
}

TEST_CASE("generic builder examples") {
  const auto chi = V({P("10"), P("0", "10"), P("1"), P("0", "1")});
  auto c2 = build_generic(chi, Partition({2}));
  CHECK(verify_certificate(c2).all_pass());
  auto c11 = build_generic(chi, Partition({1, 1}));
  CHECK(verify_certificate(c11).all_pass());
  const auto chi4 = V({P("1"), P("0", "1"), P("1/10"), P("0", "1/10"), P("1/20", "1/30"), P("-1/40", "1/11"),
                       P("1/13", "-1/50"), P("1/60", "1/9")});
  for (const char* p : {"6", "3,3", "1,5", "2,4", "2,2,2", "1,1,4", "1,1,2,2", "1,1,1,3", "1,1,1,1,1,1"}) {
    INFO(p);
    CHECK(verify_certificate(build_generic(chi4, Partition::parse(p))).all_pass());
  }
}

TEST_CASE("certificate round trip") {
  const auto out = realize(lattice_chi(3, 5), Partition({1, 3}));
  REQUIRE(out.certificate);
  const std::string text = format_certificate(*out.certificate);
  const auto back = parse_certificate(text, FieldContext(1));
  CHECK(format_certificate(back) == text);
  CHECK(verify_certificate(back).all_pass());
}

TEST_CASE("generic realization through the heuristic") {
  std::mt19937_64 rng(11);
  int done = 0, certified = 0;
  while (done < 3) {
    std::vector<PlanePoint> e;
    for (int k = 0; k < 6; ++k) e.push_back(random_point(rng, 2, 3));
    const PeriodVector c(e);
    if (qsign(volume(c)) <= 0 || image_group(c).is_lattice()) continue;
    ++done;
    for (const char* p : {"4", "2,2", "1,3", "1,1,2", "1,1,1,1"}) {
      RealizeOptions opt;
      opt.max_steps = 4000;
      const auto out = realize(c, Partition::parse(p), opt);
      CHECK(out.status != RealizeStatus::not_realizable);
      if (out.status == RealizeStatus::certificate) {
        ++certified;
        CHECK(verify_certificate(*out.certificate).all_pass());
      }
    }
  }
  MESSAGE("certified " << certified << " of 15");
}

TEST_CASE("certificate mutations trip their checks") {
  const auto out = realize(lattice_chi(2, 4), Partition({1, 1}));
  REQUIRE(out.certificate);
  auto scaled = *out.certificate;
  for (std::size_t j = 0; j < 4; ++j) scaled.gamma.matrix()(1, j) *= 2;
  CHECK(verify_certificate(scaled).first_failure() == 1);
  auto wrong = *out.certificate;
  wrong.partition = Partition({2});
  CHECK(verify_certificate(wrong).first_failure() == 5);
  auto moved = *out.certificate;
  moved.surface.set_edge_vector({0, 0}, moved.surface.edge_vector({0, 0}) + P("1/3"));
  CHECK(verify_certificate(moved).first_failure() == 3);
}
