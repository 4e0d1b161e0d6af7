#pragma once

#include "strata/chi.hpp"
#include "strata/field.hpp"

#include <initializer_list>
#include <random>

namespace strata::test {

inline QuadElem Q(const char* s, std::int64_t d = 2) { return parse_quad(s, FieldContext(d)); }

inline PlanePoint P(const char* re, const char* im = "0", std::int64_t d = 2) { return {Q(re, d), Q(im, d)}; }

inline PeriodVector V(std::initializer_list<PlanePoint> pts) { return PeriodVector(std::vector<PlanePoint>(pts)); }

// Random element p + q sqrt(d) with small numerators and denominators.
inline QuadElem random_quad(std::mt19937_64& rng, std::int64_t d, int range = 9) {
  auto r = [&] {
    const long num = static_cast<long>(rng() % (2 * range + 1)) - range;
    const long den = static_cast<long>(rng() % 4) + 1;
    return Rational(num, den);
  };
  const Rational p = r();
  const Rational q = d == 1 ? Rational(0) : r();
  return {p, q, d == 1 ? 2 : d};
}

inline PlanePoint random_point(std::mt19937_64& rng, std::int64_t d, int range = 9) {
  return {random_quad(rng, d, range), random_quad(rng, d, range)};
}

}  // namespace strata::test
