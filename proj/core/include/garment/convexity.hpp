#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "garment/geom.hpp"
#include "garment/structures.hpp"

namespace garment {

struct No9Gon : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};

// Some k indices in convex position (ccw from the lexicographic minimum), or
// nullopt iff no such subset exists. Deterministic: small subsamples are
// searched first, the full longest-convex-chain dynamic program is the
// certified fallback.
std::optional<std::vector<int>> find_convex_kgon(std::span<const Point> pts, int k);

struct KgonCounts {
  std::uint64_t gons = 0;
  std::uint64_t holes = 0;
  friend bool operator==(const KgonCounts&, const KgonCounts&) = default;
};

// Number of k-subsets in convex position, and how many of those are k-holes
// (no ambient point strictly inside the hull). Subset scan up to n = 14, the
// radial chain dynamic program beyond; both paths sit in detail for
// cross-validation. Throws OutOfRange if a count leaves 64 bits.
KgonCounts count_kgons_kholes(std::span<const Point> pts, int k);

struct SixIslandResult {
  enum class Kind { Has6Gon, HasNonEmpty5Gon, Fails };
  Kind kind = Kind::Fails;
  std::vector<int> witness;  // the 6-gon, or the 5-gon
  int inside = -1;           // a point inside the 5-gon when applicable
};

// Classification of an 11-point set: a convex 6-gon, else a convex 5-gon
// with some point inside, else Fails. Throws WrongSize unless n == 11.
SixIslandResult six_island_check(std::span<const Point> pts);

struct Island {
  std::vector<int> members;  // ascending
  std::vector<int> hull;     // ccw hull of the members (member indices)
  int red = 0;
  int blue = 0;
  int imbalance() const { return red > blue ? red - blue : blue - red; }
};

// Smallest island containing the seed: every ambient point inside the hull
// of the members joins; one pass reaches the fixpoint because additions are
// interior and leave the hull unchanged.
Island island_close(const ColoredPointSet& cps, std::span<const int> seed);

// Island with |red - blue| >= threshold: close a convex (2*threshold-1)-gon
// to an island, then drop hull vertices (removing hull vertices of either
// color keeps the island an island) until the imbalance is reached. Throws
// No9Gon when no such gon exists.
Island unbalanced_island(const ColoredPointSet& cps, int threshold = 5);

struct HoleFamily {
  std::vector<std::array<int, 4>> holes;  // each ccw from its lexicographic minimum
};

// At least floor((m-3)/2) pairwise interior-disjoint convex 4-holes (holes
// may share vertices). Left-to-right window greedy with a backtracking
// fallback; emptiness and disjointness are re-verified before returning.
HoleFamily disjoint_4holes(std::span<const Point> pts);

// The closed-form bound C(2k-5, k-2) - C(2k-8, k-3) + 2; k >= 6.
std::uint64_t es_upper_bound(int k);

// An empty monochromatic necklace of the majority color, produced by the
// unbalanced-island pipeline: island -> majority 4-hole family -> a hole with
// at most one minority point inside -> the necklace variant avoiding it.
// nullopt when the pipeline cannot complete (possible only on small inputs).
std::optional<StructureInstance> blue_necklace_certificate(const ColoredPointSet& cps);

// Two facing convex chains on an integer grid. The 5+5 instance carries no
// convex 6-gon and no non-empty convex 5-gon, with a hull of size 4.
std::vector<Point> double_chain(int top, int bottom);

namespace detail {
KgonCounts count_by_subsets(std::span<const Point> pts, int k);
KgonCounts count_by_chain_dp(std::span<const Point> pts, int k);
std::optional<std::vector<int>> find_kgon_full_dp(std::span<const Point> pts, int k);
}  // namespace detail

}  // namespace garment
