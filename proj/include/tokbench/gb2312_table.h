#pragma once

#include <cstddef>
#include <cstdint>

namespace tokbench::detail {

struct Gb2312Entry {
  char32_t code_point;
  std::uint16_t gb;  // high byte = zone + 0xA0, low byte = position + 0xA0
};

// Sorted by code point.
extern const Gb2312Entry kGb2312Table[];
extern const std::size_t kGb2312TableSize;

}  // namespace tokbench::detail
