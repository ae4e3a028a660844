#pragma once

#include <algorithm>
#include <cstdint>
#include <span>

namespace iosc::detail {

/// Splits the enumeration of [0, base)^n into slices keyed by the first one
/// or two coordinates. The split is a pure function of (base, n, cap).
struct Slicing {
  std::size_t lead = 0;
  std::size_t count = 1;
};

inline Slicing make_slicing(std::uint64_t base, std::size_t n, std::uint64_t cap = 1u << 16) {
  Slicing s;
  if (n == 0 || base > cap) return s;
  s.lead = 1;
  s.count = static_cast<std::size_t>(base);
  if (n >= 3 && base < 64 && base * base <= cap) {
    s.lead = 2;
    s.count = static_cast<std::size_t>(base * base);
  }
  return s;
}

inline void slice_start(const Slicing& s, std::size_t index, std::uint64_t base,
                        std::span<std::uint64_t> x) {
  std::fill(x.begin(), x.end(), 0);
  if (s.lead == 1) {
    x[0] = index;
  } else if (s.lead == 2) {
    x[0] = index / base;
    x[1] = index % base;
  }
}

}  // namespace iosc::detail
