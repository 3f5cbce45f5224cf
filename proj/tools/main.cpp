//===- main.cpp - hwsim tool entry -------------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/cli.hpp"

int main(int argc, char **argv) { return hwsim::cliMain(argc, argv); }
