#pragma once

#include <cstdint>

struct FuzzResult {
  int checked = 0;
  int violations = 0;
};

/// Random operand pairs over +, -, *, /, sqr, pow and sqrt.
FuzzResult interval_fuzz(std::uint64_t seed, int cases);
