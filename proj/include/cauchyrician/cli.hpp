// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace cauchyrician {

/// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
/// non-convergence.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace cauchyrician
