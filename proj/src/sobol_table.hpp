#pragma once

#include <array>
#include <cstdint>

namespace ccbc::detail {

struct SobolPoly {
  int degree;
  std::uint32_t a;
  std::array<std::uint32_t, 9> m;
};

inline constexpr int kSobolTableDims = 63;
extern const std::array<SobolPoly, kSobolTableDims> kSobolTable;

}  // namespace ccbc::detail
