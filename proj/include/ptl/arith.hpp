// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

// Exact integer primitives on signed 128-bit values: integer roots,
// perfect-power tests, gcd, p-adic valuation, deterministic primality,
// and complete factorization (trial division + Brent's rho).

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptl/int128.hpp"

namespace ptl {

struct PrimePower {
  i128 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Complete factorization of a nonzero integer: sign * prod(prime^exponent),
// primes strictly increasing, every exponent >= 1.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  i128 value() const {
    i128 v = sign;
    for (const auto& f : factors)
      for (int i = 0; i < f.exponent; ++i) v *= f.prime;
    return v;
  }
};

namespace detail {

// Trial division strips everything below this bound; the cofactor machinery
// (perfect powers, rho) handles the rest.
inline constexpr uint32_t kTrialBound = 10000;

inline const std::vector<uint32_t>& trial_primes() {
  static const std::vector<uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (uint64_t j = uint64_t(i) * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

// a*b mod m for m < 2^127. Uses the native 128-bit product when the modulus
// fits a machine word, shift-and-add otherwise.
inline u128 mulmod(u128 a, u128 b, u128 m) {
  if (m <= std::numeric_limits<uint64_t>::max()) {
    return static_cast<u128>(static_cast<uint64_t>(a % m)) * static_cast<uint64_t>(b % m) % m;
  }
  a %= m;
  b %= m;
  if (a < b) std::swap(a, b);
  u128 r = 0;
  while (b > 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

inline u128 powmod(u128 base, u128 exp, u128 m) {
  u128 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline u128 gcd_u(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  auto ctz = [](u128 v) {
    uint64_t lo = static_cast<uint64_t>(v);
    return lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<uint64_t>(v >> 64));
  };
  int shift = ctz(a | b);
  a >>= ctz(a);
  while (b != 0) {
    b >>= ctz(b);
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

inline int bit_length(u128 v) {
  uint64_t hi = static_cast<uint64_t>(v >> 64);
  if (hi != 0) return 128 - __builtin_clzll(hi);
  uint64_t lo = static_cast<uint64_t>(v);
  return lo != 0 ? 64 - __builtin_clzll(lo) : 0;
}

// floor(sqrt(n)): Newton's method from a power-of-two overshoot, exact fix at
// the end. No floating point, so the result is identical on every platform.
inline u128 isqrt_u(u128 n) {
  if (n == 0) return 0;
  constexpr u128 kRootCap = std::numeric_limits<uint64_t>::max();
  u128 r = static_cast<u128>(1) << ((bit_length(n) + 1) / 2);
  for (int i = 0; i < 10; ++i) r = (r + n / r) >> 1;
  if (r > kRootCap) r = kRootCap;
  if (r == 0) r = 1;
  while (r > n / r) --r;  // division form avoids r*r overflow
  while (r < kRootCap && (r + 1) <= n / (r + 1)) ++r;
  return r;
}

// floor(cbrt(n)) for n >= 0, same scheme.
inline u128 icbrt_u(u128 n) {
  if (n == 0) return 0;
  constexpr u128 kRootCap = 6981463658331ull;  // floor(cbrt(2^128 - 1))
  u128 r = static_cast<u128>(1) << ((bit_length(n) + 2) / 3);
  for (int i = 0; i < 12; ++i) {
    if (r > kRootCap + 1) r = kRootCap + 1;
    r = (2 * r + n / (r * r)) / 3;
  }
  if (r > kRootCap) r = kRootCap;
  if (r == 0) r = 1;
  while (r > 1 && r * r > n / r) --r;
  while (r < kRootCap && (r + 1) * (r + 1) <= n / (r + 1)) ++r;
  return r;
}

// r^k, capped: returns kU128Max if the power exceeds `cap`.
inline u128 pow_capped(u128 r, int k, u128 cap) {
  u128 v = 1;
  for (int i = 0; i < k; ++i) {
    if (r != 0 && v > cap / r) return kU128Max;
    v *= r;
  }
  return v;
}

// floor(n^(1/k)) for k >= 2 by binary search.
inline u128 nth_root_u(u128 n, int k) {
  if (n == 0) return 0;
  if (k == 2) return isqrt_u(n);
  if (k == 3) return icbrt_u(n);
  u128 lo = 1, hi = (static_cast<u128>(1) << (128 / k + 1));
  while (lo < hi) {
    u128 mid = lo + (hi - lo + 1) / 2;
    if (pow_capped(mid, k, n) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Strong probable-prime test to the given bases; n must be odd, >= 3.
inline bool miller_rabin(u128 n, const uint64_t* bases, int count) {
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (int i = 0; i < count; ++i) {
    u128 a = bases[i] % n;
    if (a == 0) continue;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline int jacobi(i128 a, u128 n) {
  // n odd, positive
  int result = 1;
  u128 ua;
  if (a < 0) {
    ua = magnitude(a) % n;
    if (ua != 0) ua = n - ua;
  } else {
    ua = static_cast<u128>(a) % n;
  }
  u128 un = n;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      u128 r = un & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(ua, un);
    if ((ua & 3) == 3 && (un & 3) == 3) result = -result;
    ua %= un;
  }
  return un == 1 ? result : 0;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice.
// Caller guarantees n odd, n >= 3, n not a perfect square.
inline bool strong_lucas(u128 n) {
  i128 d_param = 5;
  while (true) {
    int j = jacobi(d_param, n);
    if (j == 0) return magnitude(d_param) == n;  // shares a factor otherwise
    if (j == -1) break;
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
  }
  // P = 1, Q = (1 - D) / 4
  i128 q_param = (1 - d_param) / 4;
  u128 qmod = (q_param >= 0 ? static_cast<u128>(q_param) % n : (n - magnitude(q_param) % n) % n);
  u128 dmod = (d_param >= 0 ? static_cast<u128>(d_param) % n : (n - magnitude(d_param) % n) % n);

  u128 dd = n + 1;
  int s = 0;
  while ((dd & 1) == 0) {
    dd >>= 1;
    ++s;
  }

  // Compute U_dd, V_dd, Q^dd mod n by the binary chain.
  u128 u = 1, v = 1, qk = qmod;  // U_1, V_1, Q^1
  int bits = 0;
  for (u128 t = dd; t > 1; t >>= 1) ++bits;
  // exact halving mod odd n: if the residue is odd, add n first
  auto halve = [&](u128 x) -> u128 {
    if (x & 1) return ((x + n) >> 1) % n;
    return x >> 1;
  };
  for (int i = bits - 1; i >= 0; --i) {
    // double:  U_2k = U V,  V_2k = V^2 - 2 Q^k
    u = mulmod(u, v, n);
    v = mulmod(v, v, n);
    v = (v + n - mulmod(2, qk, n) % n) % n;
    qk = mulmod(qk, qk, n);
    if ((dd >> i) & 1) {
      // increment: U_{k+1} = (P U + V)/2,  V_{k+1} = (D U + P V)/2, P = 1
      u128 nu = halve((u + v) % n);
      u128 nv = halve((mulmod(dmod, u, n) + v) % n);
      u = nu;
      v = nv;
      qk = mulmod(qk, qmod, n);
    }
  }

  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = mulmod(v, v, n);
    v = (v + n - mulmod(2, qk, n) % n) % n;
    qk = mulmod(qk, qk, n);
    if (v == 0) return true;
  }
  return false;
}

// Bases proven to make Miller-Rabin deterministic below 2^64.
inline constexpr uint64_t kBases64[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
// The first thirteen primes certify every n below this bound.
inline constexpr uint64_t kBases13[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
inline const u128 kMr13Bound = static_cast<u128>(3317044064679887ull) * 1000000000ull + 385961981ull;

}  // namespace detail

// floor(sqrt(n)); domain error for negative input.
inline i128 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  return static_cast<i128>(detail::isqrt_u(static_cast<u128>(n)));
}

// Integer cube root rounded toward zero; sign follows n.
inline i128 icbrt(i128 n) {
  i128 r = static_cast<i128>(detail::icbrt_u(magnitude(n)));
  return n < 0 ? -r : r;
}

inline std::optional<i128> is_perfect_square(i128 n) {
  if (n < 0) return std::nullopt;
  i128 r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

inline std::optional<i128> is_perfect_cube(i128 n) {
  i128 r = icbrt(n);
  if (r * r * r == n) return r;
  return std::nullopt;
}

// Nonnegative gcd; gcd(0, 0) = 0.
inline i128 gcd(i128 a, i128 b) {
  return static_cast<i128>(detail::gcd_u(magnitude(a), magnitude(b)));
}

// Largest e with p^e | n. Requires p >= 2 (callers pass primes) and n != 0.
inline int valuation(i128 p, i128 n) {
  if (p < 2) throw std::domain_error("valuation: p must be a prime >= 2");
  if (n == 0) throw std::domain_error("valuation: undefined for n = 0");
  u128 m = magnitude(n);
  u128 up = static_cast<u128>(p);
  int e = 0;
  while (m % up == 0) {
    m /= up;
    ++e;
  }
  return e;
}

// Deterministic primality for the full 128-bit width: fixed-base
// Miller-Rabin (proven below ~3.3e24) plus a strong Lucas stage above that.
inline bool is_prime(i128 n) {
  if (n < 2) return false;
  u128 m = static_cast<u128>(n);
  for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u,
                     53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u, 89u, 97u}) {
    if (m % p == 0) return m == p;
  }
  if (m < 101 * 101) return true;
  if (m <= std::numeric_limits<uint64_t>::max())
    return detail::miller_rabin(m, detail::kBases64, 7);
  if (!detail::miller_rabin(m, detail::kBases13, 13)) return false;
  if (m <= detail::kMr13Bound) return true;
  if (detail::isqrt_u(m) * detail::isqrt_u(m) == m) return false;
  return detail::strong_lucas(m);
}

namespace detail {

template <class U>
U pollard_brent(U n);

// Full factorization of a cofactor whose prime factors all exceed the trial
// bound. Splits perfect powers before rho so rho never sees one.
template <class U>
void factor_cofactor(U c, int mult, std::vector<PrimePower>& out) {
  if (c == 1) return;
  if (is_prime(static_cast<i128>(c))) {
    out.push_back({static_cast<i128>(c), mult});
    return;
  }
  for (int k : {2, 3, 5, 7}) {
    U r = static_cast<U>(nth_root_u(c, k));
    if (pow_capped(r, k, c) == c) {
      factor_cofactor(r, mult * k, out);
      return;
    }
  }
  U d = pollard_brent(c);
  factor_cofactor(d, mult, out);
  factor_cofactor(c / d, mult, out);
}

// Brent's variant of Pollard's rho with batched gcds. The polynomial
// parameter advances deterministically, so output never depends on a seed.
template <class U>
U pollard_brent(U n) {
  for (u128 c = 1;; ++c) {
    const U cc = static_cast<U>(c % n);
    auto f = [&](U x) { return static_cast<U>((mulmod(x, x, n) + cc) % n); };
    U x = 2, y = 2, d = 1, ys = y, q = 1;
    uint64_t r = 1;
    const uint64_t batch = 128;
    while (d == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      for (uint64_t k = 0; k < r && d == 1; k += batch) {
        ys = y;
        uint64_t lim = std::min(batch, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = static_cast<U>(mulmod(q, x > y ? x - y : y - x, n));
        }
        d = static_cast<U>(gcd_u(q, n));
      }
      r <<= 1;
    }
    if (d == n) {
      d = 1;
      y = ys;
      while (d == 1) {
        y = f(y);
        d = static_cast<U>(gcd_u(x > y ? x - y : y - x, n));
      }
    }
    if (d != n) return d;
  }
}

template <class U>
std::vector<PrimePower> factor_magnitude(U m) {
  std::vector<PrimePower> out;
  for (uint32_t p : trial_primes()) {
    if (static_cast<U>(p) * p > m) break;
    if (m % p == 0) {
      int e = 0;
      do {
        m /= p;
        ++e;
      } while (m % p == 0);
      out.push_back({static_cast<i128>(p), e});
    }
  }
  if (m > 1) {
    if (m < static_cast<U>(kTrialBound + 3) * (kTrialBound + 3)) {
      out.push_back({static_cast<i128>(m), 1});  // below trial-bound squared: prime
    } else {
      std::vector<PrimePower> rest;
      factor_cofactor(m, 1, rest);
      // rho may emit the same prime from both branches of a split
      std::sort(rest.begin(), rest.end(),
                [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
      for (const auto& f : rest) {
        if (!out.empty() && out.back().prime == f.prime)
          out.back().exponent += f.exponent;
        else
          out.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace detail

// Complete factorization of a nonzero integer, deterministic ordering.
inline Factorization factor(i128 n) {
  if (n == 0) throw std::domain_error("factor: undefined for n = 0");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  u128 m = magnitude(n);
  if (m <= std::numeric_limits<uint64_t>::max())
    f.factors = detail::factor_magnitude<uint64_t>(static_cast<uint64_t>(m));
  else
    f.factors = detail::factor_magnitude<u128>(m);
  if (f.value() != n) throw std::logic_error("factor: reconstruction mismatch");
  return f;
}

// True iff no exponent in factor(|n|) exceeds 1 (true for n = +-1).
inline bool is_squarefree(i128 n) {
  if (n == 0) throw std::domain_error("is_squarefree: undefined for n = 0");
  for (const auto& f : factor(n).factors)
    if (f.exponent > 1) return false;
  return true;
}

}  // namespace ptl
