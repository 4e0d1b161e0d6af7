#include "strata/sp_action.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace strata {

namespace {

struct Candidate {
  SpMatrix gamma;
  PeriodVector chi;
  double score = 0;
};

// Lower is better; 0 means every condition of the generic form holds with
// some slack in floating point (the exact check decides).
double score_of(const PeriodVector& chi, const QuadElem& M) {
  const int g = chi.genus();
  const double big = 1e6;
  const double d1 = chi.handle_det(0).to_double();
  if (!(d1 > 0)) return 10 * big;
  const GLPlus a = GLPlus::to_unit_square(chi.a(0), chi.b(0));
  double s = 0;
  for (int i = 1; i < g; ++i)
    if (qsign(chi.handle_det(i)) <= 0) s += big;
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i < g; ++i) {
    const PlanePoint p = a.apply(M * chi.a(i));
    pts.emplace_back(p.re.to_double(), p.im.to_double());
  }
  for (int i = 1; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      if (qsign(det2(chi.a(i), chi.a(j))) == 0 && qsign(dot(chi.a(i), chi.a(j))) > 0) s += 1e3;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0, xsum = 0;
  for (const auto& [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    xsum += std::abs(x);
  }
  s += std::max(0.0, xmax - xmin - 0.9) + std::max(0.0, ymax - ymin - 0.9);
  s += 0.01 * std::max(0.0, xsum - 0.9);
  return s;
}

}  // namespace

std::optional<NormalFormResult> generic_normalize_heuristic(const PeriodVector& chi, const HeuristicOptions& opt) {
  const int g = chi.genus();
  auto accepted = [&](const PeriodVector& c) -> std::optional<NormalFormResult> {
    if (qsign(c.handle_det(0)) <= 0) return std::nullopt;
    const GLPlus a = GLPlus::to_unit_square(c.a(0), c.b(0));
    const PeriodVector normal = apply_gl(a, c);
    if (!generic_form_check(normal, opt.M)) return std::nullopt;
    if (opt.accept && !opt.accept(normal)) return std::nullopt;
    NormalFormResult r;
    r.A = a;
    r.chi_prime = normal;
    r.form_tag = FormTag::generic_form;
    return r;
  };
  // Already conforming inputs are returned without any change of basis.
  if (generic_form_check(chi, opt.M) && (!opt.accept || opt.accept(chi))) {
    NormalFormResult r;
    r.gamma = SpMatrix(g);
    r.chi_prime = chi;
    r.form_tag = FormTag::generic_form;
    return r;
  }
  if (opt.max_steps <= 0) return std::nullopt;

  std::mt19937_64 rng(opt.seed);
  auto pick = [&rng](std::uint64_t n) { return static_cast<int>(rng() % n); };
  auto random_move = [&]() -> SpMatrix {
    const Integer k = (rng() & 1U) ? 1 : -1;
    switch (pick(4)) {
      case 0: {
        const int h = pick(static_cast<std::uint64_t>(g));
        return (rng() & 1U) ? SpMatrix::handle_sl2(g, h, 1, k, 0, 1) : SpMatrix::handle_sl2(g, h, 1, 0, k, 1);
      }
      case 1: {
        const int h = 1 + pick(static_cast<std::uint64_t>(g - 1));
        return SpMatrix::handle_swap(g, 0, h);
      }
      default: {
        const int t = pick(2 * static_cast<std::uint64_t>(g));
        int s = pick(2 * static_cast<std::uint64_t>(g));
        while (s / 2 == t / 2) s = pick(2 * static_cast<std::uint64_t>(g));
        return SpMatrix::elementary(g, t, s, k);
      }
    }
  };
  // Shortens a_i in every handle i >= 2 with nonzero determinant.
  auto polish = [&](Candidate& c) {
    for (int h = 1; h < g; ++h) {
      if (qsign(c.chi.handle_det(h)) == 0) continue;
      const GaussResult red = gauss_reduce(c.chi.a(h), c.chi.b(h));
      const SpMatrix e = SpMatrix::handle_sl2(g, h, red.u.a, red.u.b, red.u.c, red.u.d);
      c.gamma = e * c.gamma;
      c.chi = apply_sp(e, c.chi);
    }
  };

  Candidate cur{SpMatrix(g), chi, 0};
  cur.score = score_of(cur.chi, opt.M);
  Candidate best = cur;
  int since_improvement = 0;
  for (int step = 0; step < opt.max_steps; ++step) {
    Candidate next = cur;
    const SpMatrix e = random_move();
    next.gamma = e * next.gamma;
    next.chi = apply_sp(e, next.chi);
    polish(next);
    next.score = score_of(next.chi, opt.M);
    if (auto r = accepted(next.chi)) {
      r->gamma = next.gamma;
      if (!r->recomputes(chi)) throw InternalError("heuristic produced an inconsistent result");
      return r;
    }
    if (next.score <= cur.score || pick(50) == 0) cur = std::move(next);
    if (cur.score < best.score) {
      best = cur;
      since_improvement = 0;
    } else if (++since_improvement > 200) {
      cur = best;
      since_improvement = 0;
    }
  }
  return std::nullopt;
}

}  // namespace strata
