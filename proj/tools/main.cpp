// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/cli.hpp"

int main(int argc, char** argv) { return ftsim::cli::run(argc, argv); }
