// Form classifiers, gcd pairs, 3-adic checks, case traces, and the range
// scans. Brute-force classifier oracles live here, independent of the
// pattern-tracker implementation.

#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "ptl/theorem.hpp"
#include "test_util.hpp"

using ptl::CaseLabel;
using ptl::i128;
using ptl::Reject;
using ptl::SideStatus;

namespace {

// oracle: m = p^2 * a^3 by direct search over p <= sqrt(|m|), |a| <= cbrt(|m|)
bool p2a3_by_brute_force(i128 m) {
  i128 mag = m < 0 ? -m : m;
  for (i128 p = 2; p * p <= mag; ++p) {
    if (!ptl::is_prime(p) || mag % (p * p) != 0) continue;
    if (ptl::is_perfect_cube(m / (p * p))) return true;
  }
  return false;
}

bool p2q2a3_by_brute_force(i128 m) {
  i128 mag = m < 0 ? -m : m;
  for (i128 p = 2; p * p * p * p <= mag; ++p) {
    if (!ptl::is_prime(p)) continue;
    for (i128 q = p; p * p * q * q <= mag; ++q) {
      if (!ptl::is_prime(q) || mag % (p * p * q * q) != 0) continue;
      if (ptl::is_perfect_cube(m / (p * p * q * q))) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("classify_p2a3 examples") {
  auto w = ptl::classify_p2a3(200);
  REQUIRE(w.has_value());
  CHECK(w->primes == std::vector<i128>{5});
  CHECK(w->a == 2);

  CHECK_FALSE(ptl::classify_p2a3(7).has_value());

  auto n = ptl::classify_p2a3(-108);
  REQUIRE(n.has_value());
  CHECK(n->primes == std::vector<i128>{2});
  CHECK(n->a == -3);

  CHECK_THROWS_AS(ptl::classify_p2a3(0), std::domain_error);

  // p | a is fine: 2^5 = 2^2 * 2^3
  auto p5 = ptl::classify_p2a3(32);
  REQUIRE(p5.has_value());
  CHECK(p5->primes == std::vector<i128>{2});
  CHECK(p5->a == 2);

  // cubes have no prime-square slot
  auto cube = ptl::classify_p2a3_full(1728);
  CHECK_FALSE(cube.witness.has_value());
  CHECK(cube.reason == Reject::NO_PRIME_SLOT);
}

TEST_CASE("classify_p2q2a3 examples") {
  auto w = ptl::classify_p2q2a3(1800);  // 2^3 * 3^2 * 5^2
  REQUIRE(w.has_value());
  CHECK(w->primes == std::vector<i128>{3, 5});
  CHECK(w->a == 2);

  CHECK_FALSE(ptl::classify_p2q2a3(63).has_value());  // (2*1)^6 - 1

  auto pq = ptl::classify_p2q2a3(16);  // p = q = 2
  REQUIRE(pq.has_value());
  CHECK(pq->primes == std::vector<i128>{2, 2});
  CHECK(pq->a == 1);

  CHECK_THROWS_AS(ptl::classify_p2q2a3(0), std::domain_error);
}

TEST_CASE("classifiers agree with brute force up to 2*10^4") {
  for (i128 m = 2; m <= 20000; ++m) {
    bool brute1 = p2a3_by_brute_force(m);
    auto got1 = ptl::classify_p2a3(m);
    if (brute1 != got1.has_value()) {
      CAPTURE(m);
      REQUIRE(brute1 == got1.has_value());
    }
    if (got1) {
      i128 p = got1->primes[0];
      CHECK(p * p * got1->a * got1->a * got1->a == m);
      CHECK(ptl::is_prime(p));
    }
    bool brute2 = p2q2a3_by_brute_force(m);
    auto got2 = ptl::classify_p2q2a3(m);
    if (brute2 != got2.has_value()) {
      CAPTURE(m);
      REQUIRE(brute2 == got2.has_value());
    }
    if (got2) {
      i128 p = got2->primes[0], q = got2->primes[1];
      CHECK(p <= q);
      CHECK(p * p * q * q * got2->a * got2->a * got2->a == m);
    }
  }
}

TEST_CASE("classifiers accept every constructed instance, wide inputs included") {
  // m built as p^2 * a^3 (or p^2 * q^2 * a^3) must always classify; the
  // tracker verifies witness reconstruction on every return
  const std::vector<i128> some_primes = {2,     3,      5,      13,        97,       9973,
                                         10007, 104729, 999983, 999999937, 1000000007};
  std::mt19937_64 rng(0x5eed0007);
  int built = 0;
  while (built < 200) {
    i128 p = some_primes[rng() % some_primes.size()];
    i128 q = some_primes[rng() % some_primes.size()];
    // keep p^2 * q^2 * |a|^3 inside the signed 128-bit width
    i128 a_cap = ptl::icbrt(ptl::kI128Max / (p * p * q * q));
    if (a_cap < 2) continue;
    i128 a = static_cast<i128>(rng() % static_cast<uint64_t>(std::min<i128>(a_cap - 1, 20000))) + 2;
    if (rng() & 1) a = -a;
    i128 m1 = p * p * a * a * a;
    auto w1 = ptl::classify_p2a3(m1);
    REQUIRE(w1.has_value());
    CHECK(w1->primes[0] * w1->primes[0] * w1->a * w1->a * w1->a == m1);

    i128 m2 = p * p * q * q * a * a * a;  // beyond 64 bits whenever p, q are large
    auto w2 = ptl::classify_p2q2a3(m2);
    REQUIRE(w2.has_value());
    CHECK(w2->primes[0] * w2->primes[0] * w2->primes[1] * w2->primes[1] * w2->a * w2->a * w2->a ==
          m2);
    ++built;
  }
}

TEST_CASE("classifier sign symmetry: witnesses flip the sign of a") {
  for (i128 x = 2; x <= 1000; ++x) {
    i128 m = x * x * x - 1;
    auto pos = ptl::classify_p2a3(m);
    auto neg = ptl::classify_p2a3(-m);  // (-x)^3 + 1
    CHECK(pos.has_value() == neg.has_value());
    if (pos) {
      CHECK(pos->primes == neg->primes);
      CHECK(pos->a == -neg->a);
    }
  }
}

TEST_CASE("gcd_pair examples and case table") {
  auto a = ptl::gcd_pair(4);
  CHECK(a.g_minus == 3);
  CHECK(a.g_plus == 1);
  auto b = ptl::gcd_pair(5);
  CHECK(b.g_minus == 1);
  CHECK(b.g_plus == 3);
  auto c = ptl::gcd_pair(6);
  CHECK(c.g_minus == 1);
  CHECK(c.g_plus == 1);

  // the identities and the impossibility of (3,3), asserted inside gcd_pair
  for (i128 x = -10000; x <= 10000; ++x) {
    auto gp = ptl::gcd_pair(x);
    CHECK(ptl::gcd(x - 1, x * x + x + 1) == ptl::gcd(x - 1, 3));
    CHECK(ptl::gcd(x + 1, x * x - x + 1) == ptl::gcd(x + 1, 3));
    CHECK_FALSE((gp.g_minus == 3 && gp.g_plus == 3));
  }
}

TEST_CASE("lte_v3_check") {
  auto a = ptl::lte_v3_check(2);
  CHECK(a.v3_xp1 == 1);
  CHECK(a.v3_x2mxp1 == 1);
  CHECK(a.identity_holds);

  auto b = ptl::lte_v3_check(8);  // 9 = 3^2, 57 = 3*19, 513 = 3^3*19
  CHECK(b.v3_xp1 == 2);
  CHECK(b.v3_x2mxp1 == 1);
  CHECK(b.identity_holds);

  auto c = ptl::lte_v3_check(26);
  CHECK(c.v3_xp1 == 3);
  CHECK(c.v3_x2mxp1 == 1);
  CHECK(c.identity_holds);

  CHECK_THROWS_AS(ptl::lte_v3_check(3), std::domain_error);
  CHECK_THROWS_AS(ptl::lte_v3_check(-1), std::domain_error);

  // the identity is a theorem: assert it across the whole window
  for (i128 x = -10000; x <= 10000; ++x) {
    if (ptl::floor_mod(x, 3) != 2 || x == -1) continue;
    auto r = ptl::lte_v3_check(x);
    CHECK(r.identity_holds);
    CHECK(r.v3_x2mxp1 == 1);
  }
}

TEST_CASE("xmod9_filter") {
  CHECK(ptl::xmod9_filter(8));
  CHECK(ptl::xmod9_filter(17));
  CHECK_FALSE(ptl::xmod9_filter(2));
  CHECK(ptl::xmod9_filter(-1));
  CHECK(ptl::xmod9_filter(-10));
}

TEST_CASE("trace_case: x = 3 lands in CASE1 and dies on the minus side") {
  auto tr = ptl::trace_case(3);
  CHECK(tr.label == CaseLabel::CASE1);
  CHECK_FALSE(tr.mirrored);
  CHECK(tr.minus_side.m == 26);
  CHECK(tr.minus_side.status == SideStatus::REJECTED);
  CHECK(tr.minus_side.offender_prime == 2);  // 26 = 2 * 13
  CHECK(tr.verdict_reason == Reject::WRONG_EXPONENT_PATTERN);
  CHECK(tr.verdict_side == "minus");
  REQUIRE(tr.cubes.has_value());
  CHECK_FALSE(tr.cubes->x_minus_1_cube);
}

TEST_CASE("trace_case: x = 8 passes the mod-9 filter, minus side rejects") {
  auto tr = ptl::trace_case(8);
  CHECK(tr.label == CaseLabel::CASE2);
  REQUIRE(tr.mod9_pass.has_value());
  CHECK(*tr.mod9_pass);
  CHECK(tr.minus_side.m == 511);  // 7 * 73
  CHECK(tr.minus_side.status == SideStatus::REJECTED);
  CHECK(tr.minus_side.offender_prime == 7);
  CHECK(tr.verdict_reason == Reject::WRONG_EXPONENT_PATTERN);
  CHECK(tr.verdict_side == "minus");
}

TEST_CASE("trace_case: x = 5 is congruence-filtered before anything else") {
  auto tr = ptl::trace_case(5);
  CHECK(tr.label == CaseLabel::CASE2);
  CHECK(tr.x_mod_9 == 5);
  CHECK_FALSE(*tr.mod9_pass);
  CHECK_FALSE(*tr.q3_escape);
  CHECK(tr.verdict_reason == Reject::CONGRUENCE_FILTERED);
  CHECK(tr.verdict_side == "plus");
  // sides are still classified for the record
  CHECK(tr.minus_side.status == SideStatus::REJECTED);
  CHECK(tr.plus_side.status == SideStatus::REJECTED);
}

TEST_CASE("trace_case: x = 2 escapes the filter; plus side is a witness") {
  auto tr = ptl::trace_case(2);
  CHECK(tr.label == CaseLabel::CASE2);
  CHECK(*tr.q3_escape);
  CHECK(tr.minus_side.status == SideStatus::REJECTED);  // 7
  CHECK(tr.plus_side.status == SideStatus::WITNESS);    // 9 = 3^2 * 1^3
  CHECK(tr.plus_side.witness->primes == std::vector<i128>{3});
  CHECK(tr.plus_side.witness->a == 1);
  CHECK(tr.verdict_side == "minus");
  CHECK_FALSE(tr.counterexample);
}

TEST_CASE("trace_case: x = -2 has a minus-side witness with its split shape") {
  auto tr = ptl::trace_case(-2);
  CHECK(tr.label == CaseLabel::CASE3);
  CHECK(tr.mirrored);
  CHECK(*tr.q3_escape);  // representative -x = 2
  CHECK(tr.minus_side.status == SideStatus::WITNESS);
  CHECK(tr.minus_side.witness->primes == std::vector<i128>{3});
  CHECK(tr.minus_side.witness->a == -1);  // -9 = 3^2 * (-1)^3
  REQUIRE(tr.minus_side.split.has_value());
  CHECK(tr.minus_side.split->tag == ptl::SplitTag::G_CUBE_BOTH);  // g = p = 3
  CHECK(tr.plus_side.status == SideStatus::REJECTED);             // -7
  CHECK(tr.verdict_side == "plus");
}

TEST_CASE("trace_case: x = 4 mirrors the case-2 logic of x = -4") {
  auto tr = ptl::trace_case(4);
  auto mr = ptl::trace_case(-4);
  CHECK(tr.label == CaseLabel::CASE3);
  CHECK(tr.mirrored);
  CHECK(mr.label == CaseLabel::CASE2);
  CHECK_FALSE(mr.mirrored);
  // the mirrored filter gates the minus side of x, the plus side of -x
  CHECK(tr.verdict_reason == Reject::CONGRUENCE_FILTERED);
  CHECK(tr.verdict_side == "minus");
  CHECK(mr.verdict_reason == Reject::CONGRUENCE_FILTERED);
  CHECK(mr.verdict_side == "plus");
  // sides swap with a sign flip: x^3 - 1 = -((-x)^3 + 1)
  CHECK(tr.minus_side.m == -mr.plus_side.m);
  CHECK(tr.plus_side.m == -mr.minus_side.m);
  // the 3-adic record is taken on the same representative
  CHECK(tr.lte->v3_xp1 == mr.lte->v3_xp1);
}

TEST_CASE("trace_case rejects degenerate and out-of-width x") {
  CHECK_THROWS_AS(ptl::trace_case(0), std::domain_error);
  CHECK_THROWS_AS(ptl::trace_case(1), std::domain_error);
  CHECK_THROWS_AS(ptl::trace_case(-1), std::domain_error);
  i128 wide = static_cast<i128>(9000000000000000000ll);  // cube would overflow
  CHECK_THROWS_AS(ptl::trace_case(wide), std::domain_error);
  CHECK_THROWS_AS(ptl::trace_case(-wide), std::domain_error);
}

TEST_CASE("theorem_scan: no counterexamples and faithful statistics") {
  auto rep = ptl::theorem_scan(2, 100);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.stats.examined == 99);
  CHECK(rep.stats.degenerate == 0);

  auto neg = ptl::theorem_scan(-100, -2);
  CHECK(neg.counterexamples.empty());
  CHECK(neg.stats.minus_witnesses >= 1);  // x = -2: -9 = 3^2 * (-1)^3

  // statistics must match naive per-x classification
  auto full = ptl::theorem_scan(-100, 100);
  CHECK(full.counterexamples.empty());
  i128 deg = 0, minus_w = 0;
  std::map<Reject, i128> minus_rej, plus_rej;
  for (i128 x = -100; x <= 100; ++x) {
    if (x >= -1 && x <= 1) {
      ++deg;
      continue;
    }
    auto m = ptl::classify_p2a3_full(x * x * x - 1);
    if (!m.witness) {
      ++minus_rej[m.reason];
      continue;
    }
    ++minus_w;
    auto p = ptl::classify_p2a3_full(x * x * x + 1);
    if (!p.witness) ++plus_rej[p.reason];
  }
  CHECK(full.stats.degenerate == deg);
  CHECK(full.stats.minus_witnesses == minus_w);
  CHECK(full.stats.minus_rejections == minus_rej);
  CHECK(full.stats.plus_rejections == plus_rej);
}

TEST_CASE("theorem_scan: x = 2 short-circuits the plus side") {
  auto rep = ptl::theorem_scan(2, 2);
  CHECK(rep.stats.minus_rejections[Reject::WRONG_EXPONENT_PATTERN] == 1);
  CHECK(rep.stats.plus_rejections.empty());
  CHECK(rep.stats.minus_witnesses == 0);
}

TEST_CASE("theorem_scan: degenerate-only range") {
  auto rep = ptl::theorem_scan(0, 0);
  CHECK(rep.stats.examined == 1);
  CHECK(rep.stats.degenerate == 1);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.stats.minus_rejections.empty());
}

TEST_CASE("theorem_scan: worker count does not change the result") {
  auto one = ptl::theorem_scan(-3000, 3000, 1);
  auto four = ptl::theorem_scan(-3000, 3000, 4);
  CHECK(one.stats.examined == four.stats.examined);
  CHECK(one.stats.minus_witnesses == four.stats.minus_witnesses);
  CHECK(one.stats.minus_rejections == four.stats.minus_rejections);
  CHECK(one.stats.plus_rejections == four.stats.plus_rejections);
  CHECK(one.counterexamples.size() == four.counterexamples.size());
}

TEST_CASE("theorem_scan: range errors") {
  CHECK_THROWS_AS(ptl::theorem_scan(5, 2), std::domain_error);
  i128 huge = static_cast<i128>(1) << 60;
  CHECK_THROWS_AS(ptl::theorem_scan(huge * huge, huge * huge), std::domain_error);
}

TEST_CASE("theorem_scan: identical results across the word-size boundary") {
  // x = 2097151 is the last value handled in 64-bit arithmetic; the wider
  // engine takes over right after and must agree with direct classification
  const i128 lo = 2097140, hi = 2097170;
  auto rep = ptl::theorem_scan(lo, hi);
  std::map<Reject, i128> minus_rej;
  i128 minus_w = 0;
  for (i128 x = lo; x <= hi; ++x) {
    auto m = ptl::classify_p2a3_full(x * x * x - 1);
    if (m.witness)
      ++minus_w;
    else
      ++minus_rej[m.reason];
  }
  CHECK(rep.stats.minus_rejections == minus_rej);
  CHECK(rep.stats.minus_witnesses == minus_w);
  CHECK(rep.counterexamples.empty());

  auto negside = ptl::theorem_scan(-hi, -lo);
  CHECK(negside.counterexamples.empty());
  CHECK(negside.stats.examined == hi - lo + 1);
}

TEST_CASE("corollary_scan: clean at the width limit") {
  i128 mx = ptl::corollary_max_x();
  auto rep = ptl::corollary_scan(mx - 2, mx);
  CHECK(rep.corollary_hits.empty());
  CHECK(rep.stats.examined == 3);
  CHECK(rep.stats.cube_halves == 0);
}

TEST_CASE("corollary_scan: no hits, coprime halves, statistics") {
  auto rep = ptl::corollary_scan(1, 100);
  CHECK(rep.corollary_hits.empty());
  CHECK(rep.stats.examined == 100);
  CHECK(rep.stats.cube_halves == 0);
  i128 total = 0;
  for (auto& [r, c] : rep.stats.minus_rejections) total += c;
  CHECK(total == 100);

  // x = 0 is degenerate, negative x run through the same classification
  auto sym = ptl::corollary_scan(-5, 5);
  CHECK(sym.stats.examined == 11);
  CHECK(sym.stats.degenerate == 1);
  CHECK(sym.corollary_hits.empty());
}

TEST_CASE("corollary gcd fact at x = 3") {
  CHECK(ptl::gcd(215, 217) == 1);  // 6^3 -+ 1
}

TEST_CASE("corollary_scan: width guard names the maximum |x|") {
  i128 mx = ptl::corollary_max_x();
  CHECK(mx > 1000000);
  try {
    ptl::corollary_scan(mx + 1, mx + 1);
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find(ptl::to_string(mx)) != std::string::npos);
  }
}
