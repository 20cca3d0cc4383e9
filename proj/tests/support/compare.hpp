#pragma once

#include "qbisim/vcat.hpp"

namespace qbisim::testing {

// Same base, extents and homs in the same object order; names ignored.
inline bool same_content(const VCategory& a, const VCategory& b) {
  if (a.base() != b.base() || a.size() != b.size() || a.extents() != b.extents()) return false;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (a.hom(x, y) != b.hom(x, y)) return false;
    }
  }
  return true;
}

inline bool same_content(const VFunctor& f, const VFunctor& g) {
  return same_content(*f.source, *g.source) && same_content(*f.target, *g.target) && f.map == g.map;
}

}  // namespace qbisim::testing
