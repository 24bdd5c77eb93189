// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// Powerful numbers: detection, the unique a^2 * b^3 decomposition with b
// squarefree, generation up to a bound, and consecutive-run search.

#pragma once

#include <stdexcept>
#include <vector>

#include "ptl/arith.hpp"

namespace ptl {

// The unique (a, b) with n = a^2 * b^3, |b| squarefree, a >= 0, and b
// carrying the sign of n.
struct PowerfulDecomposition {
  i128 a;
  i128 b;
  i128 n;
};

// A positive integer is powerful when every prime factor appears with
// exponent >= 2. 1 is powerful; 0 and negatives are not.
inline bool is_powerful(i128 n) {
  if (n < 1) return false;
  if (n == 1) return true;
  for (const auto& f : factor(n).factors)
    if (f.exponent < 2) return false;
  return true;
}

// Decompose n = a^2 * b^3. Negative n is accepted when |n| is powerful; the
// sign lands on b (the odd power).
inline PowerfulDecomposition decompose_powerful(i128 n) {
  if (n == 0) throw std::domain_error("decompose_powerful: n must be nonzero");
  Factorization f = factor(n < 0 ? -n : n);
  i128 a = 1, b = 1;
  for (const auto& pp : f.factors) {
    if (pp.exponent < 2)
      throw std::domain_error("decompose_powerful: |n| is not powerful");
    // beta = e mod 2 is the unique choice keeping |b| squarefree
    int beta = pp.exponent & 1;
    int alpha = (pp.exponent - 3 * beta) / 2;
    for (int i = 0; i < alpha; ++i) a *= pp.prime;
    if (beta) b *= pp.prime;
  }
  if (n < 0) b = -b;
  PowerfulDecomposition d{a, b, n};
  if (d.a * d.a * d.b * d.b * d.b != n)
    throw std::logic_error("decompose_powerful: reconstruction mismatch");
  return d;
}

// All powerful numbers in [1, limit], ascending. Generated by enumerating
// a^2 * b^3 over squarefree b rather than factoring every integer.
inline std::vector<i128> powerful_up_to(i128 limit) {
  if (limit < 1) throw std::domain_error("powerful_up_to: limit must be >= 1");
  std::vector<i128> out;
  for (i128 b = 1; b * b * b <= limit; ++b) {
    if (!is_squarefree(b)) continue;
    i128 cube = b * b * b;
    i128 amax = isqrt(limit / cube);
    for (i128 a = 1; a <= amax; ++a) out.push_back(a * a * cube);
  }
  std::sort(out.begin(), out.end());
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw std::logic_error("powerful_up_to: duplicate value; decomposition uniqueness violated");
  return out;
}

// Starting points n <= limit - run_len + 1 such that n, ..., n + run_len - 1
// are all powerful.
inline std::vector<i128> consecutive_runs(i128 limit, int run_len) {
  if (run_len < 2) throw std::domain_error("consecutive_runs: run_len must be >= 2");
  if (limit < run_len) throw std::domain_error("consecutive_runs: limit must be >= run_len");
  std::vector<i128> list = powerful_up_to(limit);
  std::vector<i128> starts;
  size_t len = static_cast<size_t>(run_len);
  if (list.size() < len) return starts;
  for (size_t i = 0; i + len - 1 < list.size(); ++i) {
    // list is strictly increasing, so a span of run_len-1 means all present
    if (list[i + len - 1] - list[i] == run_len - 1) starts.push_back(list[i]);
  }
  return starts;
}

}  // namespace ptl
