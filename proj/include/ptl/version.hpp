// Copyright (c) 2026 the ptl authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

namespace ptl {

inline constexpr const char* kVersion = "0.1.0";

// Width of the integer type every operation is defined over.
inline constexpr const char* kIntegerWidth = "int128";

}  // namespace ptl
