// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lazyk {

/// Invalid input data (corpus files, rule set files): distinguished from
/// programming errors so the CLI can map it to its own exit code.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lazyk
