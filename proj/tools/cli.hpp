// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace synthvid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `synthvid` invocation. Usage errors print help to `err` and
/// return 2; operation errors print the message to `err` and return 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace synthvid::cli
