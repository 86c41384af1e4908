// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/cli.hpp"

int main(int argc, char** argv) { return cauchyrician::run_cli(argc, argv); }
