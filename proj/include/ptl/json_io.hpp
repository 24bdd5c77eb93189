// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// Canonical JSON rendering of every report type, plus the stable digest the
// run manifest carries. Keys serialize in sorted order and the digest covers
// exactly the result body, so identical computations give identical bytes.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "ptl/diophantine.hpp"
#include "ptl/powerful.hpp"
#include "ptl/theorem.hpp"
#include "ptl/version.hpp"

namespace ptl {

using json = nlohmann::json;

// Numbers stay JSON numbers while they fit int64; wider values render as
// decimal strings.
inline json j_int(i128 v) {
  if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
    return static_cast<int64_t>(v);
  return to_string(v);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline std::string canonical_dump(const json& j) { return j.dump(2); }

inline std::string result_digest(const json& result) { return hex64(fnv1a64(canonical_dump(result))); }

inline json to_json(const FormWitness& w) {
  json primes = json::array();
  for (i128 p : w.primes) primes.push_back(j_int(p));
  return json{{"m", j_int(w.m)}, {"primes", primes}, {"a", j_int(w.a)}};
}

inline json to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& pp : f.factors)
    factors.push_back(json{{"prime", j_int(pp.prime)}, {"exponent", pp.exponent}});
  return json{{"sign", f.sign}, {"factors", factors}};
}

inline json to_json(const SplitMatch& m) {
  return json{{"family", to_string(m.tag)},
              {"r_takes_first", m.r_takes_first},
              {"c1", j_int(m.c1)},
              {"c2", j_int(m.c2)}};
}

inline json to_json(const SplitShape& s) {
  json matches = json::array();
  for (const auto& m : s.all_matches) matches.push_back(to_json(m));
  return json{{"family", to_string(s.tag)}, {"r_takes_first", s.r_takes_first},
              {"c1", j_int(s.c1)},          {"c2", j_int(s.c2)},
              {"r", j_int(s.r)},            {"s", j_int(s.s)},
              {"p", j_int(s.p)},            {"g", j_int(s.g)},
              {"all_matches", matches}};
}

inline json to_json(const MordellPoint& p) { return json{{"x", j_int(p.x)}, {"y", j_int(p.y)}}; }

inline json to_json(const AffineMap& m) {
  json steps = json::array();
  for (const auto& st : m.steps)
    steps.push_back(json{{"u_mul", j_int(st.u_mul)},
                         {"u_add", j_int(st.u_add)},
                         {"v_mul", j_int(st.v_mul)},
                         {"note", st.note}});
  return json{{"s", m.s}, {"k", j_int(m.k)}, {"steps", steps}, {"curve_k", j_int(m.target.k)}};
}

inline json to_json(const QuadCubicSolutionSet& q) {
  json sols = json::array();
  for (const auto& [u, v] : q.solutions) sols.push_back(json{{"u", j_int(u)}, {"v", j_int(v)}});
  return json{{"s", q.s},
              {"k", j_int(q.k)},
              {"solutions", sols},
              {"search_bound", j_int(q.search_bound)},
              {"complete", q.complete}};
}

inline json to_json(const LteCheck& l) {
  return json{{"v3_xp1", l.v3_xp1}, {"v3_x2mxp1", l.v3_x2mxp1}, {"identity_holds", l.identity_holds}};
}

inline json to_json(const SideReport& s) {
  json j{{"status", to_string(s.status)}, {"m", j_int(s.m)}};
  if (s.witness) j["witness"] = to_json(*s.witness);
  if (s.reason) {
    j["reason"] = to_string(*s.reason);
    if (s.offender_prime != 0) {
      j["offender_prime"] = j_int(s.offender_prime);
      j["offender_exponent"] = s.offender_exp;
    }
  }
  if (s.split) j["split"] = to_json(*s.split);
  return j;
}

inline json to_json(const CaseTrace& t) {
  json j{{"x", j_int(t.x)},
         {"g_minus", t.gp.g_minus},
         {"g_plus", t.gp.g_plus},
         {"case", to_string(t.label)},
         {"mirrored", t.mirrored},
         {"x_mod_3", t.x_mod_3},
         {"x_mod_9", t.x_mod_9},
         {"minus_side", to_json(t.minus_side)},
         {"plus_side", to_json(t.plus_side)}};
  if (t.lte) j["lte"] = to_json(*t.lte);
  if (t.mod9_pass) j["mod9_pass"] = *t.mod9_pass;
  if (t.q3_escape) j["q3_escape"] = *t.q3_escape;
  if (t.cubes)
    j["cubes"] = json{{"x_minus_1_cube", t.cubes->x_minus_1_cube},
                      {"x_plus_1_cube", t.cubes->x_plus_1_cube},
                      {"quad_plus_cube", t.cubes->quad_plus_cube},
                      {"quad_minus_cube", t.cubes->quad_minus_cube}};
  json verdict;
  if (t.counterexample) {
    verdict["result"] = "COUNTEREXAMPLE";
  } else {
    verdict["result"] = "REJECTED";
    verdict["reason"] = to_string(*t.verdict_reason);
    verdict["side"] = t.verdict_side;
  }
  j["verdict"] = verdict;
  return j;
}

inline json rejections_json(const std::map<Reject, i128>& m) {
  json j = json::object();
  for (const auto& [r, c] : m) j[to_string(r)] = j_int(c);
  return j;
}

// The digest-covered body of a scan report. Timing and worker count live in
// the manifest envelope only.
inline json to_json(const SearchReport& r) {
  json j{{"kind", r.kind}, {"from", j_int(r.lo)}, {"to", j_int(r.hi)}, {"version", r.version}};
  json stats{{"examined", j_int(r.stats.examined)}, {"degenerate", j_int(r.stats.degenerate)}};
  if (r.kind == "theorem") {
    stats["minus_witnesses"] = j_int(r.stats.minus_witnesses);
    stats["minus_rejections"] = rejections_json(r.stats.minus_rejections);
    stats["plus_rejections"] = rejections_json(r.stats.plus_rejections);
    json cx = json::array();
    for (const auto& t : r.counterexamples) cx.push_back(to_json(t));
    j["counterexamples"] = cx;
  } else {
    stats["cube_halves"] = j_int(r.stats.cube_halves);
    stats["rejections"] = rejections_json(r.stats.minus_rejections);
    json cx = json::array();
    for (const auto& h : r.corollary_hits)
      cx.push_back(json{{"x", j_int(h.x)}, {"witness", to_json(h.witness)}});
    j["counterexamples"] = cx;
  }
  j["statistics"] = stats;
  return j;
}

}  // namespace ptl
