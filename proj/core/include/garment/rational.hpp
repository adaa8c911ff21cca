#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "garment/geom.hpp"

namespace garment {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational point with a shared positive denominator. Arrangement
// vertices and cell representatives live here; integer points embed with
// den = 1.
struct RatPoint {
  BigInt xn = 0;
  BigInt yn = 0;
  BigInt den = 1;

  RatPoint() = default;
  RatPoint(BigInt x, BigInt y, BigInt d) : xn(std::move(x)), yn(std::move(y)), den(std::move(d)) {
    normalize();
  }
  explicit RatPoint(const Point& p) : xn(p.x), yn(p.y), den(1) {}

  void normalize() {
    if (den < 0) {
      den = -den;
      xn = -xn;
      yn = -yn;
    }
    BigInt g = gcd(gcd(abs(xn), abs(yn)), den);
    if (g > 1) {
      xn /= g;
      yn /= g;
      den /= g;
    }
  }

  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.xn * b.den == b.xn * a.den && a.yn * b.den == b.yn * a.den;
  }
};

inline int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Orientation of (a, b, p) with integer a, b and rational p.
inline int orient_rat(const Point& a, const Point& b, const RatPoint& p) {
  const BigInt abx = b.x - a.x;
  const BigInt aby = b.y - a.y;
  const BigInt apx = p.xn - BigInt(a.x) * p.den;
  const BigInt apy = p.yn - BigInt(a.y) * p.den;
  return sign_of(abx * apy - aby * apx);
}

// Fully rational orientation; exact for any mixture of embedded integers and
// arrangement vertices.
inline int orient_rat(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
  const BigInt qx = b.xn * a.den - a.xn * b.den;
  const BigInt qy = b.yn * a.den - a.yn * b.den;
  const BigInt rx = c.xn * a.den - a.xn * c.den;
  const BigInt ry = c.yn * a.den - a.yn * c.den;
  // Common positive factors (b.den, c.den, a.den^2) cannot change the sign.
  return sign_of(qx * ry - qy * rx);
}

inline bool in_triangle_rat(const RatPoint& p, const RatPoint& a, const RatPoint& b,
                            const RatPoint& c, Containment mode) {
  const int s = orient_rat(a, b, c);
  if (s == 0) throw DegenerateTriangle("rational triangle has zero area");
  const int s1 = orient_rat(a, b, p);
  const int s2 = orient_rat(b, c, p);
  const int s3 = orient_rat(c, a, p);
  if (mode == Containment::Open) return s1 == s && s2 == s && s3 == s;
  return (s1 == s || s1 == 0) && (s2 == s || s2 == 0) && (s3 == s || s3 == 0);
}

}  // namespace garment
