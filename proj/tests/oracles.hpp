#pragma once

// Independent membership oracles for cross-validation. These deliberately
// avoid the sign-based production code paths: the bowtie oracle constructs
// the rational crossing point, the skirt/pant oracles use parity ray casting.

#include <algorithm>
#include <array>
#include <span>

#include "garment/rational.hpp"
#include "garment/structures.hpp"

namespace gtest_oracles {

using garment::BigInt;
using garment::Containment;
using garment::Point;
using garment::RatPoint;
using garment::StructureInstance;
using garment::StructureKind;

// Exact intersection of segments (a,b) and (c,d), assumed to properly cross.
inline RatPoint segment_crossing(const Point& a, const Point& b, const Point& c,
                                 const Point& d) {
  // a + t (b - a) with t = cross(c - a, d - c) / cross(b - a, d - c)
  const BigInt bax = b.x - a.x, bay = b.y - a.y;
  const BigInt dcx = d.x - c.x, dcy = d.y - c.y;
  const BigInt cax = c.x - a.x, cay = c.y - a.y;
  const BigInt denom = bax * dcy - bay * dcx;
  const BigInt tnum = cax * dcy - cay * dcx;
  return RatPoint(BigInt(a.x) * denom + tnum * bax, BigInt(a.y) * denom + tnum * bay, denom);
}

inline bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (garment::orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Parity ray cast with the half-open vertex rule; exact integer arithmetic.
inline bool ray_cast_interior(std::span<const Point> poly, const Point& p) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if ((a.y > p.y) == (b.y > p.y)) continue;
    // x of the edge at height p.y compared against p.x, cross-multiplied.
    const __int128 lhs =
        static_cast<__int128>(b.x - a.x) * (p.y - a.y) -
        static_cast<__int128>(b.y - a.y) * (p.x - a.x);
    const bool right = (b.y - a.y) > 0 ? (lhs > 0) : (lhs < 0);
    if (right) inside = !inside;
  }
  return inside;
}

inline bool poly_contains(std::span<const Point> poly, const Point& p, Containment mode) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (on_segment(poly[i], poly[(i + 1) % n], p)) return mode == Containment::Closed;
  }
  return ray_cast_interior(poly, p);
}

// Skirt/pant region membership by ray casting over the defining triangles.
inline bool skirt_pant_oracle(const StructureInstance& inst, std::span<const Point> pts,
                              const Point& probe) {
  auto pt = [&](int i) -> const Point& { return pts[static_cast<size_t>(i)]; };
  const std::array<Point, 3> hull = {pt(inst.idx[0]), pt(inst.idx[1]), pt(inst.idx[2])};
  if (!poly_contains(hull, probe, Containment::Closed)) return false;
  if (inst.kind == StructureKind::Skirt) return true;
  const int e = inst.variant;
  const std::array<Point, 3> notch = {pt(inst.idx[static_cast<size_t>(e)]),
                                      pt(inst.idx[static_cast<size_t>((e + 1) % 3)]),
                                      pt(inst.idx[3])};
  return !poly_contains(notch, probe, Containment::Open);
}

// Bowtie membership through the explicit rational crossing point.
inline bool bowtie_oracle(const StructureInstance& inst, std::span<const Point> pts,
                          const Point& probe) {
  auto pt = [&](int i) -> const Point& { return pts[static_cast<size_t>(i)]; };
  const Point& h0 = pt(inst.idx[0]);
  const Point& h1 = pt(inst.idx[1]);
  const Point& h2 = pt(inst.idx[2]);
  const Point& h3 = pt(inst.idx[3]);
  const RatPoint x = segment_crossing(h0, h2, h1, h3);
  const RatPoint rp{probe};
  auto wing = [&](const Point& a, const Point& b) {
    return garment::in_triangle_rat(rp, RatPoint(a), RatPoint(b), x, Containment::Closed);
  };
  return inst.variant == 0 ? (wing(h1, h2) || wing(h3, h0)) : (wing(h0, h1) || wing(h2, h3));
}

}  // namespace gtest_oracles
