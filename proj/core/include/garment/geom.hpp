#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace garment {

// All coordinates are integers with |x|, |y| <= kCoordCap so that every
// orientation determinant fits in a signed 128-bit intermediate.
inline constexpr std::int64_t kCoordCap = std::int64_t{1} << 30;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Lexicographic (x, then y) order; the hull and canonical labelings key off it.
inline bool lex_less(const Point& a, const Point& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CollinearInput : Error {
  using Error::Error;
};
struct DegenerateTriangle : Error {
  using Error::Error;
};
struct DuplicatePoint : Error {
  using Error::Error;
};
struct CoordOutOfRange : Error {
  using Error::Error;
};
struct TooFewPoints : Error {
  using Error::Error;
};
struct WrongSize : Error {
  using Error::Error;
};

// Sign of the cross product (q - p) x (r - p): +1 when p,q,r make a left turn,
// -1 for a right turn, 0 when collinear. Exact for capped coordinates.
int orient(const Point& p, const Point& q, const Point& r);

enum class Containment { Closed, Open };

// Membership of p in triangle (a, b, c); throws DegenerateTriangle when the
// triangle has zero area.
bool in_triangle(const Point& p, const Point& a, const Point& b, const Point& c,
                 Containment mode);

// Indices of the convex hull in counterclockwise order, starting at the
// lexicographically smallest point. Throws CollinearInput if a collinear
// triple is met while walking the boundary, DuplicatePoint on duplicates.
std::vector<int> convex_hull(std::span<const Point> pts);

bool point_in_convex_hull(std::span<const Point> pts, std::span<const int> hull,
                          const Point& p, Containment mode);

enum class ValidationMode {
  Auto,     // full scan up to 64 points, sampled beyond
  Full,     // all triples
  Sampled,  // deterministic sample of triples
};

void check_coord_cap(std::span<const Point> pts);

// First general-position violation found, if any. Duplicates report two
// indices (idx[2] = -1), collinear triples three; file loaders map these to
// line numbers.
struct GeneralPositionIssue {
  bool duplicate = false;
  std::array<int, 3> idx = {-1, -1, -1};
};
std::optional<GeneralPositionIssue> find_general_position_issue(
    std::span<const Point> pts, ValidationMode mode = ValidationMode::Auto);

// Throws DuplicatePoint / CollinearInput on violations.
void validate_general_position(std::span<const Point> pts,
                               ValidationMode mode = ValidationMode::Auto);

// A bicolored point set in general position (pairwise distinct, no three
// collinear). Validation runs at construction.
class ColoredPointSet {
 public:
  ColoredPointSet(std::vector<Point> pts, std::vector<Color> colors,
                  ValidationMode mode = ValidationMode::Auto);

  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<Point>& points() const { return pts_; }
  const std::vector<Color>& colors() const { return colors_; }
  const Point& point(int i) const { return pts_[static_cast<size_t>(i)]; }
  Color color(int i) const { return colors_[static_cast<size_t>(i)]; }
  int count(Color c) const;
  std::vector<int> indices_of(Color c) const;

 private:
  std::vector<Point> pts_;
  std::vector<Color> colors_;
};

// Canonical order-type fingerprint. Two sets of at most 12 points receive
// equal fingerprints iff one maps to the other by a relabeling, possibly
// composed with a reflection. Above 12 points the fingerprint degrades to a
// 64-bit hash of the same canonical string (collisions possible, suitable for
// dedup only). The point count is encoded, so sizes never collide.
struct Chirotope {
  std::string bytes;
  friend bool operator==(const Chirotope&, const Chirotope&) = default;
  friend bool operator<(const Chirotope& a, const Chirotope& b) { return a.bytes < b.bytes; }
};

Chirotope chirotope_fingerprint(std::span<const Point> pts);

}  // namespace garment

template <>
struct std::hash<garment::Chirotope> {
  size_t operator()(const garment::Chirotope& c) const noexcept {
    return std::hash<std::string>{}(c.bytes);
  }
};
