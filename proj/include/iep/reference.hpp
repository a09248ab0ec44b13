#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "iep/repr.hpp"

namespace iep {

// Published values that the reproduction command checks against. These are
// the only hard-coded expected results in the code base; each carries the
// sentence it was taken from.

struct ReferenceHeight {
  Triple triple;
  std::int64_t height;
  std::string_view quote;
};

inline constexpr ReferenceHeight kReferenceHeights[] = {
    {{5, 7, 3}, 2, "for s=3,4 this is verified computationally, e.g., A(5,7,3)=2"},
    {{11, 13, 4}, 3, "e.g., A(5,7,3)=2 and A(11,13,4)=3"},
    {{3, 5, 17}, 2, "also has solutions for s=2,3, for instance A(3,5,17)=2"},
    {{7, 16, 115}, 3, "for instance A(3,5,17)=2 and A(7,16,7*16+3)=3"},
    {{7, 11, 5}, 3, "the explicitly computed A(7,11,5)=3=M(5)"},
    {{13, 43, 564}, 4, "and A(13,43,13*43+5)=4"},
};

struct ReferenceFlat {
  Triple triple;
  std::string_view quote;
};

// r = pq + 1 and r = pq - 1.
inline constexpr ReferenceFlat kReferenceFlat[] = {
    {{3, 5, 16}, "Q is flat if r = +-1 (mod pq)"},
    {{3, 5, 14}, "Q is flat if r = +-1 (mod pq)"},
    {{7, 11, 78}, "Q is flat if r = +-1 (mod pq)"},
    {{7, 11, 76}, "Q is flat if r = +-1 (mod pq)"},
};

struct ReferenceIdentity {
  Triple triple;
  std::string_view quote;
};

inline constexpr ReferenceIdentity kReferenceIdentity[] = {
    {{3, 5, 1}, "Q_{p,q,1}(z) = 1"},
};

struct ReferenceM {
  std::int64_t s;
  std::int64_t value;
  std::string_view quote;
};

inline constexpr ReferenceM kReferenceM[] = {
    {1, 0, "M(s) = s - 1, for s <= 4"},
    {2, 1, "M(s) = s - 1, for s <= 4"},
    {3, 2, "M(s) = s - 1, for s <= 4"},
    {4, 3, "M(s) = s - 1, for s <= 4"},
    {5, 3, "A(7,11,5)=3=M(5)"},
};

inline std::optional<std::int64_t> known_M(std::int64_t s) {
  for (const auto& e : kReferenceM) {
    if (e.s == s) return e.value;
  }
  return std::nullopt;
}

}  // namespace iep
