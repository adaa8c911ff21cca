#pragma once

#include "garment/structures.hpp"

namespace garment::detail {

// Generic closed-region membership. `side(a, b)` must return the orientation
// sign of the probe against the directed line through pts[a] -> pts[b]; the
// probe itself never appears, so the same logic serves integer points,
// rational points and arrangement sign vectors.
template <class SideFn>
bool region_contains_impl(const StructureInstance& inst, std::span<const Point> pts,
                          SideFn&& side) {
  const auto& ix = inst.idx;
  auto pt = [&](int i) -> const Point& { return pts[static_cast<size_t>(i)]; };

  auto tri = [&](int a, int b, int c, Containment mode) {
    const int s = orient(pt(a), pt(b), pt(c));
    const int s1 = side(a, b);
    const int s2 = side(b, c);
    const int s3 = side(c, a);
    if (mode == Containment::Open) return s1 == s && s2 == s && s3 == s;
    return (s1 == s || s1 == 0) && (s2 == s || s2 == 0) && (s3 == s || s3 == 0);
  };

  switch (inst.kind) {
    case StructureKind::Cravat: {
      for (int e = 0; e < 4; ++e) {
        const int sv = side(ix[static_cast<size_t>(e)], ix[static_cast<size_t>((e + 1) % 4)]);
        if (sv < 0) return false;
      }
      return true;
    }
    case StructureKind::Necklace: {
      const int e = inst.variant;
      const int a = ix[static_cast<size_t>(e)];
      const int b = ix[static_cast<size_t>((e + 1) % 4)];
      const int c = ix[static_cast<size_t>((e + 2) % 4)];
      const int d = ix[static_cast<size_t>((e + 3) % 4)];
      return tri(a, b, c, Containment::Closed) || tri(a, b, d, Containment::Closed);
    }
    case StructureKind::Bowtie: {
      // Wings rest on two opposite hull edges; each wing is the triangle cut
      // off by the diagonals, expressed through its three support lines.
      auto wing = [&](int e) {
        const int p = ix[static_cast<size_t>(e)];
        const int q = ix[static_cast<size_t>((e + 1) % 4)];
        const int r = ix[static_cast<size_t>((e + 2) % 4)];
        const int s = ix[static_cast<size_t>((e + 3) % 4)];
        const int s1 = side(p, q);  // hull edge; crossing point lies inside
        if (s1 < 0) return false;
        const int s2 = side(q, s);  // diagonal through q
        if (s2 != 0 && s2 != orient(pt(q), pt(s), pt(p))) return false;
        const int s3 = side(p, r);  // diagonal through p
        if (s3 != 0 && s3 != orient(pt(p), pt(r), pt(q))) return false;
        return true;
      };
      return inst.variant == 0 ? (wing(1) || wing(3)) : (wing(0) || wing(2));
    }
    case StructureKind::Skirt:
      return tri(ix[0], ix[1], ix[2], Containment::Closed);
    case StructureKind::Pant: {
      if (!tri(ix[0], ix[1], ix[2], Containment::Closed)) return false;
      const int e = inst.variant;
      const int u = ix[static_cast<size_t>(e)];
      const int w = ix[static_cast<size_t>((e + 1) % 3)];
      return !tri(u, w, ix[3], Containment::Open);
    }
  }
  return false;
}

}  // namespace garment::detail
