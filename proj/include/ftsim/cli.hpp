// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ftsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // parse or validation failure
inline constexpr int kExitIo = 3;

/// Entry point of the `ftsim` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace ftsim::cli
