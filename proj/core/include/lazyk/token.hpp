// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace lazyk {

/// One input token. joins_previous marks sub-tokens produced by splitting a
/// longer string (e.g. "56.000" -> "56" "." "000"); span text reconstruction
/// concatenates such tokens without a space.
struct Token {
  std::string text;
  bool joins_previous = false;

  friend bool operator==(const Token&, const Token&) = default;
};

}  // namespace lazyk
