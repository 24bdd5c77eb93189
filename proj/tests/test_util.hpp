#pragma once

#include <doctest.h>

#include <string>

#include "ptl/int128.hpp"

namespace doctest {

template <>
struct StringMaker<__int128> {
  static String convert(const __int128& v) { return ptl::to_string(v).c_str(); }
};

template <>
struct StringMaker<unsigned __int128> {
  static String convert(const unsigned __int128& v) { return ptl::to_string(v).c_str(); }
};

}  // namespace doctest
