// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <cstdint>
#include <string>

namespace ptl {

// All arithmetic in this library runs on signed 128-bit integers. The widest
// values the toolkit produces are (2x)^6 - 1 for |x| around 10^6, which is
// comfortably below 2^127.
using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);
inline constexpr i128 kI128Max = static_cast<i128>(kU128Max >> 1);

// Magnitude of an i128 as u128; well-defined even for the minimum value.
inline constexpr u128 magnitude(i128 v) {
  return v < 0 ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  char buf[64];
  int pos = 64;
  while (v > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
    v /= 10;
  }
  return std::string(buf + pos, 64 - pos);
}

inline std::string to_string(i128 v) {
  std::string s = to_string(magnitude(v));
  return v < 0 ? "-" + s : s;
}

// Nonnegative residue of v modulo m (m > 0). C++ `%` keeps the dividend's
// sign, which is never what the congruence arguments here want.
inline constexpr i128 floor_mod(i128 v, i128 m) {
  i128 r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace ptl
