// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// ptl: command-line front end. Every subcommand prints one report to stdout
// as {"manifest": ..., "result": ...}; the manifest carries timing and a
// stable digest of the result body, so identical runs are byte-comparable.
// Progress for long scans goes to stderr only.
//
// Exit codes: 0 clean, 1 failed verification suite, 2 mathematical
// counterexample found, 64 usage error, 65 domain or range error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ptl/json_io.hpp"
#include "ptl/powerful.hpp"
#include "ptl/theorem.hpp"
#include "ptl/verify.hpp"
#include "ptl/version.hpp"

namespace {

using ptl::i128;
using ptl::json;

std::string utc_stamp(std::chrono::system_clock::time_point tp) {
  std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_scalar_to_csv(const json& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  return v.dump();
}

// record-like results flatten to field,value rows via JSON pointers
std::string csv_flatten(const json& result) {
  std::string out = "field,value\n";
  const json flat = result.flatten();
  for (const auto& [key, value] : flat.items())
    out += csv_escape(key) + "," + json_scalar_to_csv(value) + "\n";
  return out;
}

struct Emission {
  json result;
  std::string csv;
  int exit_code = 0;
};

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write the report to FILE atomically instead of stdout");
}

void write_atomic(const std::string& path, const std::string& payload) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << payload;
    f.flush();
    if (!f) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

int emit(const Emission& em, const OutputOptions& opts, const std::string& command_line,
         const json& parameters, std::chrono::system_clock::time_point started, int jobs = 0) {
  auto finished = std::chrono::system_clock::now();
  json manifest{
      {"command", command_line},
      {"parameters", parameters},
      {"version", ptl::kVersion},
      {"integer_width", ptl::kIntegerWidth},
      {"started_utc", utc_stamp(started)},
      {"finished_utc", utc_stamp(finished)},
      {"elapsed_ms", std::chrono::duration<double, std::milli>(finished - started).count()},
      {"result_digest", ptl::result_digest(em.result)},
  };
  if (jobs > 0) manifest["jobs"] = jobs;
  std::string payload;
  if (opts.format == "json") {
    json envelope{{"manifest", manifest}, {"result", em.result}};
    payload = ptl::canonical_dump(envelope) + "\n";
  } else {
    payload = em.csv;
  }
  if (opts.out_path.empty())
    std::fwrite(payload.data(), 1, payload.size(), stdout);
  else
    write_atomic(opts.out_path, payload);
  return em.exit_code;
}

std::function<void(long, long)> progress_printer(i128 range_size) {
  if (range_size < 200000) return {};
  return [](long done, long total) {
    long step = total >= 20 ? total / 20 : 1;
    if (done % step == 0 || done == total)
      std::fprintf(stderr, "progress: %ld/%ld blocks\n", done, total);
  };
}

// ---- subcommand bodies ----

Emission run_powerful(i128 limit, int run_len) {
  Emission em;
  if (run_len == 0) {
    auto values = ptl::powerful_up_to(limit);
    json arr = json::array();
    std::string csv = "n\n";
    for (i128 v : values) {
      arr.push_back(ptl::j_int(v));
      csv += ptl::to_string(v) + "\n";
    }
    em.result = json{{"kind", "powerful"},
                     {"limit", ptl::j_int(limit)},
                     {"count", values.size()},
                     {"values", arr}};
    em.csv = csv;
  } else {
    auto starts = ptl::consecutive_runs(limit, run_len);
    json arr = json::array();
    std::string csv = "start\n";
    for (i128 v : starts) {
      arr.push_back(ptl::j_int(v));
      csv += ptl::to_string(v) + "\n";
    }
    em.result = json{{"kind", "runs"},
                     {"limit", ptl::j_int(limit)},
                     {"run_len", run_len},
                     {"count", starts.size()},
                     {"powerful_count", ptl::powerful_up_to(limit).size()},
                     {"starts", arr}};
    em.csv = csv;
    // a run of three or more consecutive powerful numbers would be a
    // conjecture counterexample
    if (run_len >= 3 && !starts.empty()) em.exit_code = 2;
  }
  return em;
}

Emission run_scan(const std::string& kind, i128 from, i128 to, int jobs) {
  ptl::SearchReport rep;
  auto progress = progress_printer(to - from + 1);
  if (kind == "theorem")
    rep = ptl::theorem_scan(from, to, jobs, progress);
  else
    rep = ptl::corollary_scan(from, to, jobs, progress);
  Emission em;
  em.result = ptl::to_json(rep);
  em.csv = csv_flatten(em.result);
  bool found = !rep.counterexamples.empty() || !rep.corollary_hits.empty();
  em.exit_code = found ? 2 : 0;
  return em;
}

Emission run_solve_quadcubic(bool have_s, int s, int k, i128 bound, bool assume_complete) {
  Emission em;
  json sets = json::array();
  std::string csv = "s,k,u,v\n";
  std::vector<int> signs = have_s ? std::vector<int>{s} : std::vector<int>{+1, -1};
  for (int sv : signs) {
    auto set = ptl::solve_quad_cubic(sv, k, bound, assume_complete);
    auto [curve, map] = ptl::to_mordell(sv, k);
    json jset = ptl::to_json(set);
    jset["map"] = ptl::to_json(map);
    sets.push_back(jset);
    for (auto& [u, v] : set.solutions)
      csv += std::to_string(sv) + "," + std::to_string(k) + "," + ptl::to_string(u) + "," +
             ptl::to_string(v) + "\n";
  }
  em.result = json{{"kind", "quadcubic"}, {"k", k}, {"u_bound", ptl::j_int(bound)}, {"sets", sets}};
  em.csv = csv;
  return em;
}

Emission run_solve_mordell(i128 k, i128 bound) {
  auto points = ptl::mordell_points({k}, bound);
  Emission em;
  json arr = json::array();
  std::string csv = "x,y\n";
  for (const auto& pt : points) {
    arr.push_back(ptl::to_json(pt));
    csv += ptl::to_string(pt.x) + "," + ptl::to_string(pt.y) + "\n";
  }
  em.result = json{{"kind", "mordell"},
                   {"k", ptl::j_int(k)},
                   {"x_bound", ptl::j_int(bound)},
                   {"count", points.size()},
                   {"points", arr}};
  em.csv = csv;
  return em;
}

Emission run_solve_cubediff(int d) {
  auto sols = ptl::cube_diff_solutions(d);
  Emission em;
  json arr = json::array();
  std::string csv = "u,v\n";
  for (auto& [u, v] : sols) {
    arr.push_back(json{{"u", ptl::j_int(u)}, {"v", ptl::j_int(v)}});
    csv += ptl::to_string(u) + "," + ptl::to_string(v) + "\n";
  }
  em.result = json{{"kind", "cubediff"}, {"d", d}, {"solutions", arr}};
  em.csv = csv;
  return em;
}

Emission run_trace(i128 x) {
  auto tr = ptl::trace_case(x);
  Emission em;
  em.result = json{{"kind", "trace"}, {"trace", ptl::to_json(tr)}};
  em.csv = csv_flatten(em.result);
  return em;
}

Emission run_verify(i128 x_bound) {
  auto suites = ptl::run_lemma_suites(x_bound);
  Emission em;
  json arr = json::array();
  std::string csv = "suite,pass,detail\n";
  bool all = true;
  for (const auto& s : suites) {
    arr.push_back(json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    csv += csv_escape(s.name) + "," + (s.pass ? "true" : "false") + "," + csv_escape(s.detail) + "\n";
    all = all && s.pass;
    std::fprintf(stderr, "%s %s: %s\n", s.pass ? "ok" : "FAIL", s.name.c_str(), s.detail.c_str());
  }
  em.result =
      json{{"kind", "verify"}, {"x_bound", ptl::j_int(x_bound)}, {"all_pass", all}, {"suites", arr}};
  em.csv = csv;
  em.exit_code = all ? 0 : 1;
  return em;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }
  auto started = std::chrono::system_clock::now();

  CLI::App app{"ptl: exact-integer toolkit for powerful numbers, quadratic-cubic equations,\n"
               "Mordell curves, and scans for consecutive powerful values around cubes"};
  app.set_version_flag("--version", ptl::kVersion);
  app.require_subcommand(1);

  // powerful
  long long pw_limit = 0;
  int pw_run = 0;
  OutputOptions pw_out;
  auto* pw = app.add_subcommand("powerful", "List powerful numbers up to a limit, or runs of them");
  pw->add_option("--limit", pw_limit, "Upper bound (inclusive)")->required()->check(CLI::PositiveNumber);
  pw->add_option("--run", pw_run, "Report starts of runs of this many consecutive powerful numbers")
      ->check(CLI::Range(2, 1000000));
  add_output_options(pw, pw_out);

  // scan theorem | corollary
  long long sc_from = 0, sc_to = 0;
  int sc_jobs = 0;
  OutputOptions sc_out_theorem, sc_out_corollary;
  auto* scan = app.add_subcommand("scan", "Range scans for counterexamples");
  scan->require_subcommand(1);
  auto* sc_t = scan->add_subcommand("theorem", "Scan x for x^3 -+ 1 both of the form p^2*a^3");
  auto* sc_c = scan->add_subcommand("corollary", "Scan x for (2x)^6 - 1 of the form p^2*q^2*a^3");
  for (auto* sub : {sc_t, sc_c}) {
    sub->add_option("--from", sc_from, "First x (inclusive)")->required();
    sub->add_option("--to", sc_to, "Last x (inclusive)")->required();
    sub->add_option("--jobs", sc_jobs, "Worker count (default: hardware parallelism)")
        ->envname("PTL_JOBS")
        ->check(CLI::PositiveNumber);
  }
  add_output_options(sc_t, sc_out_theorem);
  add_output_options(sc_c, sc_out_corollary);

  // solve quadcubic | mordell | cubediff
  auto* solve = app.add_subcommand("solve", "Enumerate solution sets of the fixed equations");
  solve->require_subcommand(1);
  int qc_s = 0, qc_k = 0;
  long long qc_bound = 0;
  bool qc_complete = false;
  OutputOptions qc_out;
  auto* qc = solve->add_subcommand("quadcubic", "u^2 + s*u + 1 = k*v^3 by bounded enumeration");
  auto* qc_s_opt = qc->add_option("--s", qc_s, "Sign of the linear term (+1 or -1; both if omitted)")
                       ->check(CLI::IsMember({1, -1}));
  qc->add_option("--k", qc_k, "Cubic coefficient")->required()->check(CLI::IsMember({1, 3}));
  qc->add_option("--bound", qc_bound, "Enumerate |u| up to this bound")
      ->required()
      ->check(CLI::PositiveNumber);
  qc->add_flag("--assume-complete", qc_complete,
               "Mark the set complete per the cited catalogues (recorded, not verified)");
  add_output_options(qc, qc_out);

  long long mo_k = 0, mo_bound = 0;
  OutputOptions mo_out;
  auto* mo = solve->add_subcommand("mordell", "Integer points on y^2 = x^3 + k with |x| bounded");
  mo->add_option("--k", mo_k, "Curve constant (nonzero)")->required();
  mo->add_option("--bound", mo_bound, "Enumerate |x| up to this bound")
      ->required()
      ->check(CLI::PositiveNumber);
  add_output_options(mo, mo_out);

  int cd_d = 0;
  OutputOptions cd_out;
  auto* cd = solve->add_subcommand("cubediff", "u^3 - v^3 = d by divisor-pair analysis");
  cd->add_option("--d", cd_d, "Right-hand side")->required()->check(CLI::IsMember({1, 2}));
  add_output_options(cd, cd_out);

  // trace
  long long tr_x = 0;
  OutputOptions tr_out;
  auto* tr = app.add_subcommand("trace", "Full casework trace for one x");
  tr->add_option("x", tr_x, "The x to trace")->required();
  add_output_options(tr, tr_out);

  // verify-lemmas
  long long vf_bound = 100000;
  OutputOptions vf_out;
  auto* vf = app.add_subcommand("verify-lemmas", "Run every invariant suite and report pass/fail");
  vf->add_option("--x-bound", vf_bound, "Window for the gcd and 3-adic sweeps")
      ->check(CLI::Range(10ll, 100000000ll))
      ->capture_default_str();
  add_output_options(vf, vf_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (pw->parsed()) {
      json params{{"limit", pw_limit}};
      if (pw_run) params["run"] = pw_run;
      return emit(run_powerful(pw_limit, pw_run), pw_out, command_line, params, started);
    }
    if (sc_t->parsed() || sc_c->parsed()) {
      const bool theorem = sc_t->parsed();
      int jobs = ptl::resolve_jobs(sc_jobs);
      json params{{"from", sc_from}, {"to", sc_to}};
      Emission em = run_scan(theorem ? "theorem" : "corollary", sc_from, sc_to, jobs);
      return emit(em, theorem ? sc_out_theorem : sc_out_corollary, command_line, params, started,
                  jobs);
    }
    if (qc->parsed()) {
      json params{{"k", qc_k}, {"bound", qc_bound}, {"assume_complete", qc_complete}};
      if (!qc_s_opt->empty()) params["s"] = qc_s;
      return emit(run_solve_quadcubic(!qc_s_opt->empty(), qc_s, qc_k, qc_bound, qc_complete),
                  qc_out, command_line, params, started);
    }
    if (mo->parsed()) {
      json params{{"k", mo_k}, {"bound", mo_bound}};
      return emit(run_solve_mordell(mo_k, mo_bound), mo_out, command_line, params, started);
    }
    if (cd->parsed()) {
      json params{{"d", cd_d}};
      return emit(run_solve_cubediff(cd_d), cd_out, command_line, params, started);
    }
    if (tr->parsed()) {
      json params{{"x", tr_x}};
      return emit(run_trace(tr_x), tr_out, command_line, params, started);
    }
    if (vf->parsed()) {
      json params{{"x_bound", vf_bound}};
      return emit(run_verify(vf_bound), vf_out, command_line, params, started);
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 65;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 70;
  }
  return 64;
}
