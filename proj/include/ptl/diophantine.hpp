// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// Equation-level machinery: shape splitting of R*S = p^2*C^3 by gcd,
// reduction of u^2 +- u + 1 = k*v^3 to Mordell form y^2 = x^3 + K through an
// explicit invertible substitution chain, bounded enumeration of integer
// points on Mordell curves, and the cube-difference equations.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptl/arith.hpp"

namespace ptl {

// R*S is not of the form p^2 * (cube) for the supplied p.
struct NotAnInstanceError : std::domain_error {
  using std::domain_error::domain_error;
};

// gcd(R, S) is neither 1 nor prime.
struct OutsideHypothesesError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class SplitTag { CUBE_AND_P2CUBE, G_CUBE_BOTH, G_CUBE_AND_G2P2CUBE, GP2_CUBE_AND_G2CUBE };

inline const char* to_string(SplitTag t) {
  switch (t) {
    case SplitTag::CUBE_AND_P2CUBE: return "CUBE_AND_P2CUBE";
    case SplitTag::G_CUBE_BOTH: return "G_CUBE_BOTH";
    case SplitTag::G_CUBE_AND_G2P2CUBE: return "G_CUBE_AND_G2P2CUBE";
    case SplitTag::GP2_CUBE_AND_G2CUBE: return "GP2_CUBE_AND_G2CUBE";
  }
  return "?";
}

// One realized shape assignment. Each family lists two factor shapes
// (scale1*C1^3, scale2*C2^3); r_takes_first records whether R matched the
// first of the pair.
struct SplitMatch {
  SplitTag tag;
  bool r_takes_first;
  i128 c1;
  i128 c2;
};

struct SplitShape {
  SplitTag tag;
  bool r_takes_first;
  i128 c1, c2;     // witnesses of the primary match
  i128 r, s, p, g;
  std::vector<SplitMatch> all_matches;  // every family that fits, tie-break order
};

namespace detail {

inline std::optional<i128> exact_cube_quotient(i128 value, i128 scale) {
  if (value % scale != 0) return std::nullopt;
  return is_perfect_cube(value / scale);
}

}  // namespace detail

// Split (R, S) with R*S = p^2*C^3 into the shape families determined by
// g = gcd(R, S). g = 1 gives a cube and p^2 times a cube; prime g gives one
// of three families. When several match, the earliest family in declaration
// order (and R-first within a family) is primary; all matches are retained.
inline SplitShape split_shapes(i128 big_r, i128 big_s, i128 p) {
  if (big_r == 0 || big_s == 0) throw std::domain_error("split_shapes: R and S must be nonzero");
  if (!is_prime(p)) throw std::domain_error("split_shapes: p must be prime");
  const i128 n = big_r * big_s;
  if (n % (p * p) != 0 || !is_perfect_cube(n / (p * p)))
    throw NotAnInstanceError("split_shapes: R*S != p^2 * cube for the supplied p");
  const i128 g = gcd(big_r, big_s);
  if (g != 1 && !is_prime(g)) throw OutsideHypothesesError("split_shapes: gcd(R,S) is composite");

  std::vector<SplitMatch> matches;
  auto try_family = [&](SplitTag tag, i128 scale1, i128 scale2, bool symmetric) {
    if (auto c1 = detail::exact_cube_quotient(big_r, scale1)) {
      if (auto c2 = detail::exact_cube_quotient(big_s, scale2))
        matches.push_back({tag, true, *c1, *c2});
    }
    if (symmetric) return;  // swapped order only relabels C1/C2
    if (auto c1 = detail::exact_cube_quotient(big_s, scale1)) {
      if (auto c2 = detail::exact_cube_quotient(big_r, scale2))
        matches.push_back({tag, false, *c1, *c2});
    }
  };

  if (g == 1) {
    try_family(SplitTag::CUBE_AND_P2CUBE, 1, p * p, false);
  } else {
    // g = p is checked first: there both cofactors are cubes.
    try_family(SplitTag::G_CUBE_BOTH, g, g, true);
    try_family(SplitTag::G_CUBE_AND_G2P2CUBE, g, g * g * p * p, false);
    try_family(SplitTag::GP2_CUBE_AND_G2CUBE, g * p * p, g * g, false);
  }
  if (matches.empty())
    throw std::logic_error("split_shapes: no shape family matched a valid instance");

  const SplitMatch& m = matches.front();
  SplitShape out{m.tag, m.r_takes_first, m.c1, m.c2, big_r, big_s, p, g, matches};

  // the witnesses must reproduce (R, S) exactly
  i128 scale1 = 1, scale2 = 1;
  switch (m.tag) {
    case SplitTag::CUBE_AND_P2CUBE: scale1 = 1; scale2 = p * p; break;
    case SplitTag::G_CUBE_BOTH: scale1 = g; scale2 = g; break;
    case SplitTag::G_CUBE_AND_G2P2CUBE: scale1 = g; scale2 = g * g * p * p; break;
    case SplitTag::GP2_CUBE_AND_G2CUBE: scale1 = g * p * p; scale2 = g * g; break;
  }
  i128 first = scale1 * m.c1 * m.c1 * m.c1;
  i128 second = scale2 * m.c2 * m.c2 * m.c2;
  i128 want_r = m.r_takes_first ? first : second;
  i128 want_s = m.r_takes_first ? second : first;
  if (want_r != big_r || want_s != big_s)
    throw std::logic_error("split_shapes: witnesses do not reconstruct (R, S)");
  return out;
}

struct MordellCurve {
  i128 k;  // y^2 = x^3 + k
};

struct MordellPoint {
  i128 x;
  i128 y;
  friend bool operator==(const MordellPoint&, const MordellPoint&) = default;
};

// One linear substitution: u' = u_mul*u + u_add, v' = v_mul*v.
struct SubstitutionStep {
  i128 u_mul;
  i128 u_add;
  i128 v_mul;
  std::string note;
};

// Invertible substitution chain carrying u^2 + s*u + 1 = k*v^3 onto a
// Mordell curve. The final u-coordinate is y, the final v-coordinate is x.
struct AffineMap {
  int s;
  i128 k;
  std::vector<SubstitutionStep> steps;
  MordellCurve target;

  MordellPoint forward(i128 u, i128 v) const {
    for (const auto& st : steps) {
      u = st.u_mul * u + st.u_add;
      v = st.v_mul * v;
    }
    return {v, u};
  }

  std::optional<std::pair<i128, i128>> inverse(const MordellPoint& pt) const {
    i128 u = pt.y, v = pt.x;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      i128 du = u - it->u_add;
      if (du % it->u_mul != 0 || v % it->v_mul != 0) return std::nullopt;
      u = du / it->u_mul;
      v = v / it->v_mul;
    }
    return std::make_pair(u, v);
  }
};

// Build the substitution chain for u^2 + s*u + 1 = k*v^3 (s = +-1, k in
// {1, 3}). The chain is derived step by step; the curve constant is whatever
// falls out of the algebra, not a stored value. The s = +1 equation is
// handled by a leading u -> -u, matching the s = -1 chain thereafter.
inline std::pair<MordellCurve, AffineMap> to_mordell(int s, int k) {
  if (s != 1 && s != -1) throw std::domain_error("to_mordell: s must be +1 or -1");
  if (k != 1 && k != 3) throw std::domain_error("to_mordell: k must be 1 or 3");
  AffineMap map;
  map.s = s;
  map.k = k;
  int s_eff = s;
  if (s == 1) {
    map.steps.push_back({-1, 0, 1, "negate u"});
    s_eff = -1;
  }
  // track the working equation u^2 + A*u + B = C*v^3
  i128 a = s_eff, b = 1, c = k;
  if (k != 1) {
    // multiply by k^2, substitute u -> k*u, v -> k*v
    map.steps.push_back({k, 0, k, "scale by k: u -> k*u, v -> k*v"});
    a *= k;
    b *= static_cast<i128>(k) * k;
    c = 1;
  }
  if (c != 1) throw std::logic_error("to_mordell: v^3 coefficient not normalized");
  // multiply by 4 and complete the square: u -> 2*u + A
  map.steps.push_back({2, a, 1, "complete the square: u -> 2*u + A"});
  b = 4 * b - a * a;
  a = 0;
  // now u^2 + B = 4*v^3; multiply by 16: y = 4*u, x = 4*v
  map.steps.push_back({4, 0, 4, "scale by 16: y = 4*u, x = 4*v"});
  map.target = MordellCurve{-16 * b};

  // the chain must transport a solution onto the curve it just produced
  const i128 kk = k, ss = s;
  i128 probe_u = 0, probe_v = 0;
  bool have_probe = false;
  for (i128 u = -3; u <= 3 && !have_probe; ++u) {
    i128 rhs = u * u + ss * u + 1;
    if (rhs % kk == 0 && is_perfect_cube(rhs / kk)) {
      probe_u = u;
      probe_v = *is_perfect_cube(rhs / kk);
      have_probe = true;
    }
  }
  if (have_probe) {
    MordellPoint pt = map.forward(probe_u, probe_v);
    if (pt.y * pt.y != pt.x * pt.x * pt.x + map.target.k)
      throw std::logic_error("to_mordell: derived chain is inconsistent");
  }
  return {map.target, map};
}

// All integer points with |x| <= x_bound, by x-major enumeration and exact
// square testing. Sorted by x, then y (negative branch first). Completeness
// beyond x_bound is not claimed.
inline std::vector<MordellPoint> mordell_points(MordellCurve curve, i128 x_bound) {
  if (curve.k == 0) throw std::domain_error("mordell_points: k must be nonzero");
  if (x_bound < 1) throw std::domain_error("mordell_points: x_bound must be >= 1");
  const i128 abs_k = curve.k < 0 ? -curve.k : curve.k;
  const i128 max_bound = icbrt(kI128Max - abs_k);
  if (x_bound > max_bound)
    throw std::domain_error("mordell_points: x_bound exceeds the integer width; maximum is " +
                            to_string(max_bound));
  std::vector<MordellPoint> pts;
  for (i128 x = -x_bound; x <= x_bound; ++x) {
    i128 t = x * x * x + curve.k;
    if (t < 0) continue;
    if (auto y = is_perfect_square(t)) {
      if (*y > 0) pts.push_back({x, -*y});
      pts.push_back({x, *y});
    }
  }
  return pts;
}

// Solutions of u^2 + s*u + 1 = k*v^3 with |u| <= search_bound, plus the flag
// recording whether the set is asserted complete (a literature assumption
// the caller must opt into; enumeration alone never sets it).
struct QuadCubicSolutionSet {
  int s;
  i128 k;
  std::vector<std::pair<i128, i128>> solutions;  // ascending u
  i128 search_bound;
  bool complete;
};

inline QuadCubicSolutionSet solve_quad_cubic(int s, int k, i128 u_bound,
                                             bool assume_literature_complete = false) {
  if (s != 1 && s != -1) throw std::domain_error("solve_quad_cubic: s must be +1 or -1");
  if (k != 1 && k != 3) throw std::domain_error("solve_quad_cubic: k must be 1 or 3");
  if (u_bound < 1) throw std::domain_error("solve_quad_cubic: u_bound must be >= 1");
  // the cross-check squares y = 4k(2u + s), so 64 k^2 (u_bound + 1)^2 must fit
  const i128 max_bound = isqrt(kI128Max / (64 * static_cast<i128>(k) * k)) - 2;
  if (u_bound > max_bound)
    throw std::domain_error("solve_quad_cubic: u_bound exceeds the integer width; maximum is " +
                            to_string(max_bound));
  QuadCubicSolutionSet out{s, k, {}, u_bound, assume_literature_complete};
  for (i128 u = -u_bound; u <= u_bound; ++u) {
    i128 rhs = u * u + s * u + 1;  // always positive
    if (rhs % k != 0) continue;
    if (auto v = is_perfect_cube(rhs / k)) out.solutions.emplace_back(u, *v);
  }

  // Cross-check through the affine map: every solution must land on the
  // target curve, and every curve point in range must pull back to a
  // solution or fail a divisibility condition of the chain.
  auto [curve, map] = to_mordell(s, k);
  i128 v_max = icbrt((u_bound * u_bound + u_bound + 1) / k) + 1;
  i128 x_bound = 4 * k * v_max;
  auto points = mordell_points(curve, x_bound);
  for (const auto& [u, v] : out.solutions) {
    MordellPoint pt = map.forward(u, v);
    if (pt.y * pt.y != pt.x * pt.x * pt.x + curve.k)
      throw std::logic_error("solve_quad_cubic: forward image off the target curve");
  }
  size_t transported = 0;
  for (const auto& pt : points) {
    auto back = map.inverse(pt);
    if (!back) continue;
    auto [u, v] = *back;
    if (u * u + s * u + 1 != k * v * v * v)
      throw std::logic_error("solve_quad_cubic: inverse image violates the source equation");
    if (magnitude(u) <= static_cast<u128>(u_bound)) ++transported;
  }
  if (transported != out.solutions.size())
    throw std::logic_error("solve_quad_cubic: curve-point count disagrees with enumeration");
  return out;
}

// Complete solution sets of u^3 - v^3 = d for d in {1, 2}, by the finite
// divisor-pair analysis: u - v > 0 divides d, and each pair yields a
// quadratic in v.
inline std::vector<std::pair<i128, i128>> cube_diff_solutions(int d) {
  if (d != 1 && d != 2) throw std::domain_error("cube_diff_solutions: only d = 1 and d = 2 are supported");
  std::vector<std::pair<i128, i128>> out;
  for (i128 d1 = 1; d1 <= d; ++d1) {
    if (d % d1 != 0) continue;
    i128 d2 = d / d1;
    // u = v + d1 and u^2 + u*v + v^2 = d2  =>  3v^2 + 3*d1*v + d1^2 - d2 = 0
    i128 disc = 12 * d2 - 3 * d1 * d1;
    if (disc < 0) continue;
    auto root = is_perfect_square(disc);
    if (!root) continue;
    for (i128 sgn : {static_cast<i128>(-1), static_cast<i128>(1)}) {
      i128 num = -3 * d1 + sgn * *root;
      if (num % 6 != 0) continue;
      i128 v = num / 6;
      i128 u = v + d1;
      if (u * u * u - v * v * v == d) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ptl
