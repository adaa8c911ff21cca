#include "garment/geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace garment {

namespace {

using I128 = __int128;

int sign_of(I128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

I128 cross(const Point& p, const Point& q, const Point& r) {
  const I128 qx = q.x - p.x, qy = q.y - p.y;
  const I128 rx = r.x - p.x, ry = r.y - p.y;
  return qx * ry - qy * rx;
}

std::string describe(const Point& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace

int orient(const Point& p, const Point& q, const Point& r) {
  return sign_of(cross(p, q, r));
}

bool in_triangle(const Point& p, const Point& a, const Point& b, const Point& c,
                 Containment mode) {
  const int s = orient(a, b, c);
  if (s == 0) {
    throw DegenerateTriangle("triangle " + describe(a) + describe(b) + describe(c) +
                             " has zero area");
  }
  const int s1 = orient(a, b, p);
  const int s2 = orient(b, c, p);
  const int s3 = orient(c, a, p);
  if (mode == Containment::Open) {
    return s1 == s && s2 == s && s3 == s;
  }
  return (s1 == s || s1 == 0) && (s2 == s || s2 == 0) && (s3 == s || s3 == 0);
}

std::vector<int> convex_hull(std::span<const Point> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw TooFewPoints("convex hull needs at least 3 points");
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]); });
  for (int i = 0; i + 1 < n; ++i) {
    if (pts[static_cast<size_t>(order[static_cast<size_t>(i)])] ==
        pts[static_cast<size_t>(order[static_cast<size_t>(i + 1)])]) {
      throw DuplicatePoint("duplicate point " +
                           describe(pts[static_cast<size_t>(order[static_cast<size_t>(i)])]));
    }
  }

  // Andrew's monotone chain. With no three collinear points every boundary
  // turn is strict; a zero cross on the chain exposes a collinear triple.
  auto build = [&](bool upper) {
    std::vector<int> chain;
    for (int ii = 0; ii < n; ++ii) {
      const int idx = order[static_cast<size_t>(upper ? n - 1 - ii : ii)];
      while (chain.size() >= 2) {
        const Point& a = pts[static_cast<size_t>(chain[chain.size() - 2])];
        const Point& b = pts[static_cast<size_t>(chain.back())];
        const int s = orient(a, b, pts[static_cast<size_t>(idx)]);
        if (s == 0) {
          throw CollinearInput("collinear points on hull boundary near " + describe(b));
        }
        if (s < 0) {
          chain.pop_back();
        } else {
          break;
        }
      }
      chain.push_back(idx);
    }
    return chain;
  };

  std::vector<int> lower = build(false);
  std::vector<int> upper = build(true);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;  // ccw, starts at the lexicographic minimum
}

bool point_in_convex_hull(std::span<const Point> pts, std::span<const int> hull,
                          const Point& p, Containment mode) {
  const int h = static_cast<int>(hull.size());
  for (int i = 0; i < h; ++i) {
    const Point& a = pts[static_cast<size_t>(hull[static_cast<size_t>(i)])];
    const Point& b = pts[static_cast<size_t>(hull[static_cast<size_t>((i + 1) % h)])];
    const int s = orient(a, b, p);
    if (s < 0) return false;
    if (s == 0 && mode == Containment::Open) return false;
  }
  return true;
}

void check_coord_cap(std::span<const Point> pts) {
  for (const Point& p : pts) {
    if (std::llabs(p.x) > kCoordCap || std::llabs(p.y) > kCoordCap) {
      throw CoordOutOfRange("coordinate exceeds cap at " + describe(p));
    }
  }
}

std::optional<GeneralPositionIssue> find_general_position_issue(std::span<const Point> pts,
                                                                ValidationMode mode) {
  const int n = static_cast<int>(pts.size());
  check_coord_cap(pts);
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]); });
  for (int i = 0; i + 1 < n; ++i) {
    const int a = order[static_cast<size_t>(i)];
    const int b = order[static_cast<size_t>(i + 1)];
    if (pts[static_cast<size_t>(a)] == pts[static_cast<size_t>(b)]) {
      return GeneralPositionIssue{true, {std::min(a, b), std::max(a, b), -1}};
    }
  }
  if (n < 3) return std::nullopt;

  std::optional<GeneralPositionIssue> found;
  auto check = [&](int i, int j, int k) {
    if (found) return;
    if (orient(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)],
               pts[static_cast<size_t>(k)]) == 0) {
      std::array<int, 3> t = {i, j, k};
      std::sort(t.begin(), t.end());
      found = GeneralPositionIssue{false, t};
    }
  };
  const bool full = mode == ValidationMode::Full ||
                    (mode == ValidationMode::Auto && n <= 64);
  if (full) {
    for (int i = 0; i < n && !found; ++i)
      for (int j = i + 1; j < n && !found; ++j)
        for (int k = j + 1; k < n && !found; ++k) check(i, j, k);
    return found;
  }
  // Sampled: all consecutive triples in lex order plus a deterministic stream
  // of pseudo-random ones. Catches gross degeneracies, not a proof.
  for (int i = 0; i + 2 < n && !found; ++i) {
    check(order[static_cast<size_t>(i)], order[static_cast<size_t>(i + 1)],
          order[static_cast<size_t>(i + 2)]);
  }
  std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n);
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  const std::int64_t samples = std::int64_t{64} * n;
  for (std::int64_t t = 0; t < samples && !found; ++t) {
    const int i = static_cast<int>(next() % static_cast<std::uint64_t>(n));
    const int j = static_cast<int>(next() % static_cast<std::uint64_t>(n));
    const int k = static_cast<int>(next() % static_cast<std::uint64_t>(n));
    if (i != j && j != k && i != k) check(i, j, k);
  }
  return found;
}

void validate_general_position(std::span<const Point> pts, ValidationMode mode) {
  const auto issue = find_general_position_issue(pts, mode);
  if (!issue) return;
  if (issue->duplicate) {
    throw DuplicatePoint("duplicate point " +
                         describe(pts[static_cast<size_t>(issue->idx[0])]) + " at indices " +
                         std::to_string(issue->idx[0]) + ", " + std::to_string(issue->idx[1]));
  }
  throw CollinearInput("points " + std::to_string(issue->idx[0]) + ", " +
                       std::to_string(issue->idx[1]) + ", " + std::to_string(issue->idx[2]) +
                       " are collinear");
}

ColoredPointSet::ColoredPointSet(std::vector<Point> pts, std::vector<Color> colors,
                                 ValidationMode mode)
    : pts_(std::move(pts)), colors_(std::move(colors)) {
  if (pts_.size() != colors_.size()) {
    throw WrongSize("point and color counts differ");
  }
  validate_general_position(pts_, mode);
}

int ColoredPointSet::count(Color c) const {
  int k = 0;
  for (Color x : colors_) k += (x == c) ? 1 : 0;
  return k;
}

std::vector<int> ColoredPointSet::indices_of(Color c) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (colors_[static_cast<size_t>(i)] == c) out.push_back(i);
  }
  return out;
}

namespace {

// Candidate labeling for the canonical fingerprint: a hull vertex first, the
// rest in ccw angular order around it. At a hull vertex all other points span
// an angular wedge below pi, so orientation alone is a total order.
std::string sign_string(std::span<const Point> pts, const std::vector<int>& label) {
  const int n = static_cast<int>(label.size());
  std::string s;
  s.reserve(static_cast<size_t>(n) * static_cast<size_t>(n - 1) * static_cast<size_t>(n - 2) / 6);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int o = orient(pts[static_cast<size_t>(label[static_cast<size_t>(i)])],
                             pts[static_cast<size_t>(label[static_cast<size_t>(j)])],
                             pts[static_cast<size_t>(label[static_cast<size_t>(k)])]);
        s.push_back(o > 0 ? '+' : '-');
      }
  return s;
}

std::string minimal_sign_string(std::span<const Point> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> hull = convex_hull(pts);
  std::string best;
  for (int v : hull) {
    std::vector<int> label;
    label.push_back(v);
    for (int i = 0; i < n; ++i)
      if (i != v) label.push_back(i);
    const Point& origin = pts[static_cast<size_t>(v)];
    std::sort(label.begin() + 1, label.end(), [&](int a, int b) {
      return orient(origin, pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)]) > 0;
    });
    std::string s = sign_string(pts, label);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Chirotope chirotope_fingerprint(std::span<const Point> pts) {
  const int n = static_cast<int>(pts.size());
  validate_general_position(pts, ValidationMode::Auto);
  std::string head = "n" + std::to_string(n) + ":";
  if (n < 3) return Chirotope{head};

  std::string direct = minimal_sign_string(pts);
  std::vector<Point> mirrored(pts.begin(), pts.end());
  for (Point& p : mirrored) p.x = -p.x;
  std::string reflected = minimal_sign_string(mirrored);
  std::string canon = std::min(direct, reflected);

  if (n <= 12) return Chirotope{head + canon};
  const std::uint64_t h = fnv1a(canon);
  std::string enc;
  for (int b = 0; b < 8; ++b) {
    enc.push_back(static_cast<char>((h >> (8 * b)) & 0xff));
  }
  return Chirotope{head + "#" + enc};
}

}  // namespace garment
