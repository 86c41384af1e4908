// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cauchyrician {

/// Malformed, missing, or out-of-domain input data (files, records, values).
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure exhausted its budget before reaching
/// the requested tolerance.
class NonConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace cauchyrician
