// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// Executable form checks around the cube triplet (x^3 - 1, x^3, x^3 + 1):
// classifiers for m = p^2*a^3 and m = p^2*q^2*a^3, the gcd pair
// (gcd(x-1, x^2+x+1), gcd(x+1, x^2-x+1)), 3-adic constraints, per-x case
// traces, and parallel range scans for counterexamples.

#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/arith.hpp"
#include "ptl/diophantine.hpp"
#include "ptl/parallel.hpp"
#include "ptl/version.hpp"

namespace ptl {

enum class Reject {
  WRONG_EXPONENT_PATTERN,
  NO_PRIME_SLOT,
  CONGRUENCE_FILTERED,
  CUBE_DIFF_CONTRADICTION,
  DEGENERATE,
};

inline const char* to_string(Reject r) {
  switch (r) {
    case Reject::WRONG_EXPONENT_PATTERN: return "WRONG_EXPONENT_PATTERN";
    case Reject::NO_PRIME_SLOT: return "NO_PRIME_SLOT";
    case Reject::CONGRUENCE_FILTERED: return "CONGRUENCE_FILTERED";
    case Reject::CUBE_DIFF_CONTRADICTION: return "CUBE_DIFF_CONTRADICTION";
    case Reject::DEGENERATE: return "DEGENERATE";
  }
  return "?";
}

// Witness that m = p^2 * a^3 (one prime) or m = p^2 * q^2 * a^3 (two primes,
// p <= q; p = q is the single-prime exponent >= 4 pattern).
struct FormWitness {
  i128 m;
  std::vector<i128> primes;
  i128 a;
};

struct ClassifyOutcome {
  std::optional<FormWitness> witness;
  Reject reason = Reject::WRONG_EXPONENT_PATTERN;  // meaningful when no witness
  i128 offender_prime = 0;                         // pattern offender, 0 if none
  int offender_exp = 0;
};

namespace detail {

inline i128 ipow(i128 base, int e) {
  i128 v = 1;
  while (e-- > 0) v *= base;
  return v;
}

// Largest |x| with |x|^3 + 1 representable.
inline i128 theorem_max_x() { return static_cast<i128>(icbrt_u(static_cast<u128>(kI128Max) - 1)); }

// Largest |x| with (2|x|)^6 representable.
inline i128 corollary_max_x_impl() {
  return static_cast<i128>(nth_root_u(static_cast<u128>(kI128Max), 6) / 2);
}

// Exponent-pattern tracker for p^2 * a^3: at most one prime with exponent
// == 2 (mod 3), everything else == 0 (mod 3).
struct P2A3Tracker {
  i128 a = 1;
  i128 slot_prime = 0;
  int slot_exp = 0;
  bool dead = false;
  i128 offender = 0;
  int offender_exp = 0;

  bool feed(i128 p, int e) {
    int r = e % 3;
    if (r == 1) {
      dead = true;
      offender = p;
      offender_exp = e;
      return false;
    }
    if (r == 2) {
      if (slot_prime != 0) {
        dead = true;
        offender = p;
        offender_exp = e;
        return false;
      }
      slot_prime = p;
      slot_exp = e;
      a *= ipow(p, (e - 2) / 3);
      return true;
    }
    a *= ipow(p, e / 3);
    return true;
  }

  ClassifyOutcome finish(i128 m, int sign) const {
    ClassifyOutcome out;
    if (dead) {
      out.reason = Reject::WRONG_EXPONENT_PATTERN;
      out.offender_prime = offender;
      out.offender_exp = offender_exp;
      return out;
    }
    if (slot_prime == 0) {
      out.reason = Reject::NO_PRIME_SLOT;
      return out;
    }
    i128 aa = sign < 0 ? -a : a;
    out.witness = FormWitness{m, {slot_prime}, aa};
    if (slot_prime * slot_prime * aa * aa * aa != m)
      throw std::logic_error("classify_p2a3: witness does not reconstruct m");
    return out;
  }
};

// Tracker for p^2 * q^2 * a^3: either exactly two primes with exponent == 2
// (mod 3), or a single prime with exponent == 1 (mod 3) and >= 4 (p = q).
struct P2Q2A3Tracker {
  i128 a = 1;
  i128 sq_slot[2] = {0, 0};  // exponent == 2 (mod 3)
  int sq_count = 0;
  i128 quartic_slot = 0;     // exponent == 1 (mod 3), >= 4
  bool dead = false;
  i128 offender = 0;
  int offender_exp = 0;

  bool kill(i128 p, int e) {
    dead = true;
    offender = p;
    offender_exp = e;
    return false;
  }

  bool feed(i128 p, int e) {
    int r = e % 3;
    if (r == 1) {
      if (e == 1 || quartic_slot != 0 || sq_count > 0) return kill(p, e);
      quartic_slot = p;
      a *= ipow(p, (e - 4) / 3);
      return true;
    }
    if (r == 2) {
      if (sq_count == 2 || quartic_slot != 0) return kill(p, e);
      sq_slot[sq_count++] = p;
      a *= ipow(p, (e - 2) / 3);
      return true;
    }
    a *= ipow(p, e / 3);
    return true;
  }

  ClassifyOutcome finish(i128 m, int sign) const {
    ClassifyOutcome out;
    if (dead) {
      out.reason = Reject::WRONG_EXPONENT_PATTERN;
      out.offender_prime = offender;
      out.offender_exp = offender_exp;
      return out;
    }
    i128 aa = sign < 0 ? -a : a;
    if (quartic_slot != 0) {
      out.witness = FormWitness{m, {quartic_slot, quartic_slot}, aa};
    } else if (sq_count == 2) {
      out.witness = FormWitness{m, {std::min(sq_slot[0], sq_slot[1]), std::max(sq_slot[0], sq_slot[1])}, aa};
    } else if (sq_count == 1) {
      out.reason = Reject::WRONG_EXPONENT_PATTERN;
      out.offender_prime = sq_slot[0];
      return out;
    } else {
      out.reason = Reject::NO_PRIME_SLOT;
      return out;
    }
    const auto& pr = out.witness->primes;
    if (pr[0] * pr[0] * pr[1] * pr[1] * aa * aa * aa != m)
      throw std::logic_error("classify_p2q2a3: witness does not reconstruct m");
    return out;
  }
};

// Stream the factorization of `mag` into a tracker: trial division with
// early abort on a dead pattern, then full resolution of the cofactor.
template <class U, class Tracker>
bool stream_factors(U mag, Tracker& t) {
  for (uint32_t p : trial_primes()) {
    if (static_cast<U>(p) * p > mag) break;
    if (mag % p == 0) {
      int e = 0;
      do {
        mag /= p;
        ++e;
      } while (mag % p == 0);
      if (!t.feed(static_cast<i128>(p), e)) return false;
    }
  }
  if (mag > 1) {
    if (mag < static_cast<U>(kTrialBound + 3) * (kTrialBound + 3))
      return t.feed(static_cast<i128>(mag), 1);
    std::vector<PrimePower> rest;
    factor_cofactor(mag, 1, rest);
    std::sort(rest.begin(), rest.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      int e = 0;
      while (j < rest.size() && rest[j].prime == rest[i].prime) e += rest[j++].exponent;
      if (!t.feed(rest[i].prime, e)) return false;
      i = j;
    }
  }
  return true;
}

template <class Tracker>
ClassifyOutcome classify_with(i128 m) {
  if (m == 0) throw std::domain_error("classify: m must be nonzero");
  int sign = m < 0 ? -1 : 1;
  u128 mag = magnitude(m);
  Tracker t;
  if (mag <= std::numeric_limits<uint64_t>::max())
    stream_factors<uint64_t>(static_cast<uint64_t>(mag), t);
  else
    stream_factors<u128>(mag, t);
  return t.finish(m, sign);
}

}  // namespace detail

// Full classification with the rejection reason exposed.
inline ClassifyOutcome classify_p2a3_full(i128 m) {
  return detail::classify_with<detail::P2A3Tracker>(m);
}

inline ClassifyOutcome classify_p2q2a3_full(i128 m) {
  return detail::classify_with<detail::P2Q2A3Tracker>(m);
}

// Witness iff m = p^2 * a^3 for a prime p and nonzero integer a.
inline std::optional<FormWitness> classify_p2a3(i128 m) { return classify_p2a3_full(m).witness; }

// Witness iff m = p^2 * q^2 * a^3 for primes p, q (p = q allowed).
inline std::optional<FormWitness> classify_p2q2a3(i128 m) {
  return classify_p2q2a3_full(m).witness;
}

// g_minus = gcd(x-1, x^2+x+1), g_plus = gcd(x+1, x^2-x+1). Both are always
// 1 or 3, and never both 3.
struct GcdPair {
  i128 x;
  int g_minus;
  int g_plus;
};

inline GcdPair gcd_pair(i128 x) {
  i128 gm = gcd(x - 1, x * x + x + 1);
  i128 gp = gcd(x + 1, x * x - x + 1);
  GcdPair out{x, static_cast<int>(gm), static_cast<int>(gp)};
  bool m3 = floor_mod(x, 3) == 1, p3 = floor_mod(x, 3) == 2;
  if ((gm != 1 && gm != 3) || (gp != 1 && gp != 3) || (gm == 3) != m3 || (gp == 3) != p3)
    throw std::logic_error("gcd_pair: invariant violated");
  return out;
}

// 3-adic bookkeeping for x == 2 (mod 3): v3(x^2 - x + 1) = 1 and
// v3(x^3 + 1) = v3(x + 1) + 1 (the exponent-lifting identity at p = 3).
struct LteCheck {
  int v3_xp1;
  int v3_x2mxp1;
  bool identity_holds;
};

inline LteCheck lte_v3_check(i128 x) {
  if (floor_mod(x, 3) != 2) throw std::domain_error("lte_v3_check: requires x == 2 (mod 3)");
  if (x == -1) throw std::domain_error("lte_v3_check: x = -1 makes x^3 + 1 vanish");
  int v1 = valuation(3, x + 1);
  int v2 = valuation(3, x * x - x + 1);
  int v3 = valuation(3, x * x * x + 1);
  return LteCheck{v1, v2, v3 == v1 + v2 && v2 == 1};
}

// True iff x == -1 (mod 9); the surviving residue class for the plus side
// when its prime is not 3.
inline bool xmod9_filter(i128 x) { return floor_mod(x, 9) == 8; }

enum class CaseLabel { CASE1, CASE2, CASE3 };

inline const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::CASE1: return "CASE1";
    case CaseLabel::CASE2: return "CASE2";
    case CaseLabel::CASE3: return "CASE3";
  }
  return "?";
}

enum class SideStatus { WITNESS, REJECTED, SKIPPED };

inline const char* to_string(SideStatus s) {
  switch (s) {
    case SideStatus::WITNESS: return "WITNESS";
    case SideStatus::REJECTED: return "REJECTED";
    case SideStatus::SKIPPED: return "SKIPPED";
  }
  return "?";
}

struct SideReport {
  SideStatus status = SideStatus::SKIPPED;
  i128 m = 0;
  std::optional<FormWitness> witness;
  std::optional<Reject> reason;
  i128 offender_prime = 0;
  int offender_exp = 0;
  std::optional<SplitShape> split;  // shape of (x -+ 1, x^2 +- x + 1) when a witness exists
};

// Cube observations feeding the g = 1 subcase table.
struct CubeFacts {
  bool x_minus_1_cube;
  bool x_plus_1_cube;
  bool quad_plus_cube;   // x^2 + x + 1
  bool quad_minus_cube;  // x^2 - x + 1
};

struct CaseTrace {
  i128 x;
  GcdPair gp{0, 1, 1};
  CaseLabel label = CaseLabel::CASE1;
  bool mirrored = false;  // CASE3 runs the CASE2 logic on -x
  int x_mod_3 = 0;
  int x_mod_9 = 0;
  std::optional<LteCheck> lte;       // on the == 2 (mod 3) representative
  std::optional<bool> mod9_pass;     // representative == -1 (mod 9)
  std::optional<bool> q3_escape;     // representative == 2: the k = 3 solver's small solution
  std::optional<CubeFacts> cubes;    // CASE1 only
  SideReport minus_side;
  SideReport plus_side;
  bool counterexample = false;
  std::optional<Reject> verdict_reason;  // set when not a counterexample
  std::string verdict_side;              // "minus" or "plus"
};

namespace detail {

inline SideReport classify_side(i128 x, int side_sign) {
  SideReport rep;
  rep.m = x * x * x + side_sign;
  ClassifyOutcome out = classify_p2a3_full(rep.m);
  if (out.witness) {
    rep.status = SideStatus::WITNESS;
    rep.witness = out.witness;
    // realized shape of (x -+ 1) * (x^2 +- x + 1) = p^2 * a^3
    i128 lin = x + side_sign;
    i128 quad = x * x - side_sign * x + 1;
    i128 g = gcd(lin, quad);
    if (g == 1 || is_prime(g))
      rep.split = split_shapes(lin, quad, out.witness->primes[0]);
  } else {
    rep.status = SideStatus::REJECTED;
    rep.reason = out.reason;
    rep.offender_prime = out.offender_prime;
    rep.offender_exp = out.offender_exp;
  }
  return rep;
}

}  // namespace detail

// Trace x through the casework. Order of scrutiny: the (mod 9) congruence
// filter where it applies, then the minus side, then the plus side; the
// verdict is the first reason x fails. Both sides are always classified so
// the trace stays informative. CASE3 mirrors CASE2 with x replaced by -x,
// which swaps the roles of the two sides.
inline CaseTrace trace_case(i128 x) {
  if (x >= -1 && x <= 1)
    throw std::domain_error("trace_case: x in {-1, 0, 1} is degenerate (x^3 -+ 1 vanishes or is a unit)");
  i128 mx = detail::theorem_max_x();
  if (x < -mx || x > mx)
    throw std::domain_error("trace_case: |x| exceeds the integer width; maximum |x| is " +
                            to_string(mx));
  CaseTrace tr;
  tr.x = x;
  tr.gp = gcd_pair(x);
  tr.x_mod_3 = static_cast<int>(floor_mod(x, 3));
  tr.x_mod_9 = static_cast<int>(floor_mod(x, 9));
  tr.label = tr.x_mod_3 == 0   ? CaseLabel::CASE1
             : tr.x_mod_3 == 2 ? CaseLabel::CASE2
                               : CaseLabel::CASE3;
  tr.mirrored = tr.label == CaseLabel::CASE3;

  tr.minus_side = detail::classify_side(x, -1);
  tr.plus_side = detail::classify_side(x, +1);

  bool filtered = false;
  std::string filtered_side;
  if (tr.label != CaseLabel::CASE1) {
    // representative y == 2 (mod 3); for CASE3 this is -x and the filtered
    // side of x is the minus side (x^3 - 1 = -((-x)^3 + 1))
    i128 y = tr.mirrored ? -x : x;
    tr.lte = lte_v3_check(y);
    tr.mod9_pass = xmod9_filter(y);
    tr.q3_escape = (y == 2);
    if (!*tr.mod9_pass && !*tr.q3_escape) {
      // y^3 + 1 = q^2*b^3 needs q = 3 (forcing y in {-1, 2} through the
      // k = 3 quadratic-cubic solutions) or y == -1 (mod 9); neither holds
      filtered = true;
      filtered_side = tr.mirrored ? "minus" : "plus";
      const SideReport& s = tr.mirrored ? tr.minus_side : tr.plus_side;
      if (s.status == SideStatus::WITNESS)
        throw std::logic_error("trace_case: congruence filter contradicts a classified witness");
    }
  } else {
    tr.cubes = CubeFacts{is_perfect_cube(x - 1).has_value(), is_perfect_cube(x + 1).has_value(),
                         is_perfect_cube(x * x + x + 1).has_value(),
                         is_perfect_cube(x * x - x + 1).has_value()};
    if (tr.cubes->x_minus_1_cube && tr.cubes->x_plus_1_cube)
      throw std::logic_error("trace_case: x -+ 1 both cubes contradicts the cube-difference sets");
  }

  if (filtered) {
    tr.verdict_reason = Reject::CONGRUENCE_FILTERED;
    tr.verdict_side = filtered_side;
  } else if (tr.minus_side.status == SideStatus::REJECTED) {
    tr.verdict_reason = tr.minus_side.reason;
    tr.verdict_side = "minus";
  } else if (tr.plus_side.status == SideStatus::REJECTED) {
    tr.verdict_reason = tr.plus_side.reason;
    tr.verdict_side = "plus";
  } else {
    tr.counterexample = true;
  }
  return tr;
}

// Aggregated rejection statistics of a scan.
struct ScanStats {
  i128 examined = 0;
  i128 degenerate = 0;
  i128 minus_witnesses = 0;
  i128 cube_halves = 0;  // corollary scan: halves that are perfect cubes (expected 0)
  std::map<Reject, i128> minus_rejections;
  std::map<Reject, i128> plus_rejections;

  void merge(const ScanStats& o) {
    examined += o.examined;
    degenerate += o.degenerate;
    minus_witnesses += o.minus_witnesses;
    cube_halves += o.cube_halves;
    for (const auto& [k, v] : o.minus_rejections) minus_rejections[k] += v;
    for (const auto& [k, v] : o.plus_rejections) plus_rejections[k] += v;
  }
};

struct CorollaryHit {
  i128 x;
  FormWitness witness;
};

struct SearchReport {
  std::string kind;  // "theorem", "corollary", "runs"
  i128 lo = 0;
  i128 hi = 0;
  std::vector<CaseTrace> counterexamples;   // theorem scan
  std::vector<CorollaryHit> corollary_hits; // corollary scan
  ScanStats stats;
  std::string version = kVersion;
  double elapsed_ms = 0;  // excluded from the canonical result body
  int jobs = 1;
};

namespace detail {

struct ScanPartial {
  ScanStats stats;
  std::vector<CaseTrace> counterexamples;
  std::vector<CorollaryHit> hits;
};

template <class U>
void theorem_scan_one(i128 x, ScanPartial& part) {
  U mag_minus = static_cast<U>(magnitude(x * x * x - 1));
  int sign_minus = x >= 1 ? 1 : -1;
  P2A3Tracker tm;
  stream_factors<U>(mag_minus, tm);
  ClassifyOutcome minus =
      tm.finish(sign_minus < 0 ? -static_cast<i128>(mag_minus) : static_cast<i128>(mag_minus),
                sign_minus);
  if (!minus.witness) {
    ++part.stats.minus_rejections[minus.reason];
    return;
  }
  ++part.stats.minus_witnesses;
  U mag_plus = static_cast<U>(magnitude(x * x * x + 1));
  int sign_plus = x >= -1 ? 1 : -1;
  P2A3Tracker tp;
  stream_factors<U>(mag_plus, tp);
  ClassifyOutcome plus =
      tp.finish(sign_plus < 0 ? -static_cast<i128>(mag_plus) : static_cast<i128>(mag_plus),
                sign_plus);
  if (!plus.witness) {
    ++part.stats.plus_rejections[plus.reason];
    return;
  }
  part.counterexamples.push_back(trace_case(x));
}

}  // namespace detail

// Scan x in [x_lo, x_hi] for x^3 - 1 = p^2*a^3 and x^3 + 1 = q^2*b^3 holding
// simultaneously. x in {-1, 0, 1} is degenerate. The minus side is
// classified first and the plus side only on a minus witness.
inline SearchReport theorem_scan(i128 x_lo, i128 x_hi, int jobs = 0,
                                 const std::function<void(long, long)>& progress = {}) {
  if (x_lo > x_hi) throw std::domain_error("theorem_scan: empty range");
  i128 mx = detail::theorem_max_x();
  if (x_lo < -mx || x_hi > mx)
    throw std::domain_error("theorem_scan: |x| exceeds the integer width; maximum |x| is " +
                            to_string(mx));
  auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.kind = "theorem";
  rep.lo = x_lo;
  rep.hi = x_hi;
  rep.jobs = resolve_jobs(jobs);

  // |x| up to 2097151 keeps |x^3| + 1 inside uint64
  const i128 kU64SafeX = 2097151;
  i128 block = 8192;
  // keep the per-block bookkeeping bounded for very wide ranges
  if ((x_hi - x_lo) / block > 65536) block = (x_hi - x_lo) / 65536 + 1;
  auto parts = map_blocks<detail::ScanPartial>(
      x_lo, x_hi, block, rep.jobs,
      [&](i128 blo, i128 bhi) {
        detail::ScanPartial part;
        for (i128 x = blo; x <= bhi; ++x) {
          ++part.stats.examined;
          if (x >= -1 && x <= 1) {
            ++part.stats.degenerate;
            continue;
          }
          if (x >= -kU64SafeX && x <= kU64SafeX)
            detail::theorem_scan_one<uint64_t>(x, part);
          else
            detail::theorem_scan_one<u128>(x, part);
        }
        return part;
      },
      progress);
  for (const auto& p : parts) {
    rep.stats.merge(p.stats);
    rep.counterexamples.insert(rep.counterexamples.end(), p.counterexamples.begin(),
                               p.counterexamples.end());
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline i128 corollary_max_x() { return detail::corollary_max_x_impl(); }

// Scan x in [x_lo, x_hi] for (2x)^6 - 1 = p^2*q^2*a^3. The two coprime
// halves (2x)^3 -+ 1 are factored separately and fed into one pattern
// tracker; the gcd and cube-freeness of the halves are checked along the way.
inline SearchReport corollary_scan(i128 x_lo, i128 x_hi, int jobs = 0,
                                   const std::function<void(long, long)>& progress = {}) {
  if (x_lo > x_hi) throw std::domain_error("corollary_scan: empty range");
  i128 mx = corollary_max_x();
  if (x_lo < -mx || x_hi > mx)
    throw std::domain_error("corollary_scan: |2x|^6 exceeds the integer width; maximum |x| is " +
                            to_string(mx));
  auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.kind = "corollary";
  rep.lo = x_lo;
  rep.hi = x_hi;
  rep.jobs = resolve_jobs(jobs);

  i128 block = 2048;
  if ((x_hi - x_lo) / block > 65536) block = (x_hi - x_lo) / 65536 + 1;
  auto parts = map_blocks<detail::ScanPartial>(
      x_lo, x_hi, block, rep.jobs,
      [&](i128 blo, i128 bhi) {
        detail::ScanPartial part;
        for (i128 x = blo; x <= bhi; ++x) {
          ++part.stats.examined;
          if (x == 0) {
            ++part.stats.degenerate;
            continue;
          }
          i128 t = 2 * x;
          i128 cube = t * t * t;
          i128 lo_half = cube - 1, hi_half = cube + 1;
          if (gcd(lo_half, hi_half) != 1)
            throw std::logic_error("corollary_scan: consecutive odd halves share a factor");
          if (is_perfect_cube(lo_half) || is_perfect_cube(hi_half)) ++part.stats.cube_halves;
          detail::P2Q2A3Tracker tracker;
          bool alive = true;
          for (i128 half : {lo_half, hi_half}) {
            Factorization f = factor(half);
            for (const auto& pp : f.factors) {
              if (!tracker.feed(pp.prime, pp.exponent)) {
                alive = false;
                break;
              }
            }
            if (!alive) break;
          }
          i128 m = lo_half * hi_half;
          ClassifyOutcome out = tracker.finish(m, m < 0 ? -1 : 1);
          if (out.witness)
            part.hits.push_back({x, *out.witness});
          else
            ++part.stats.minus_rejections[out.reason];
        }
        return part;
      },
      progress);
  for (const auto& p : parts) {
    rep.stats.merge(p.stats);
    rep.corollary_hits.insert(rep.corollary_hits.end(), p.hits.begin(), p.hits.end());
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ptl
