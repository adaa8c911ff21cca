#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "garment/geom.hpp"
#include "garment/rational.hpp"
#include "garment/structures.hpp"

namespace garment {

struct SourceUnavailable : Error {
  using Error::Error;
};
struct KindsNotCovered : Error {
  using Error::Error;
};

// One open 2-D cell of the arrangement of all lines through red point pairs,
// named by its sign vector (one sign per line, lines in pair-lex order) and
// witnessed by an exact rational representative strictly inside the cell.
struct BlockingCell {
  RatPoint rep;
  std::vector<std::int8_t> signs;
};

// Every open cell inside the red hull, one representative each, deduplicated
// by sign vector. Representatives never lie on any pair line, so they are in
// general position with the red set. |red| >= 3.
std::vector<BlockingCell> candidate_cells(std::span<const Point> red);

// The discretized blocking instance: targets are all monochromatic-red,
// same-color-clean instances of the kinds; membership of a cell in a target
// region is decided at the representative (region boundaries lie on pair
// lines, so membership is constant per cell).
struct BlockingProblem {
  std::vector<Point> red;
  KindSet kinds;
  std::vector<StructureInstance> targets;
  std::vector<BlockingCell> cells;
  // covers[c] holds the target indices whose region contains cell c.
  std::vector<std::vector<int>> covers;
};

BlockingProblem make_blocking_problem(std::span<const Point> red, const KindSet& kinds);

struct BlockingResult {
  int count = 0;
  std::vector<RatPoint> placement;
};

// Exact minimum number of blue points that block every target, with a
// realizing placement (one cell representative per blocker). Zero with an
// empty placement when there are no targets.
BlockingResult min_blockers(std::span<const Point> red, const KindSet& kinds);

// Threshold prover: nullopt when every blocking placement needs at least
// `threshold` points; otherwise some (not necessarily minimum) placement of
// size < threshold. Shares the branch-and-bound with min_blockers.
std::optional<BlockingResult> blockers_below(std::span<const Point> red, const KindSet& kinds,
                                             int threshold);

enum class ClaimStatus : std::uint8_t { Unchecked, Verified, Refuted };

std::string to_string(ClaimStatus s);

// The statement "r red points require at least b blue blockers" for a kind
// set. Refuted carries a red configuration together with a blue placement of
// size < b that blocks everything.
struct BlockersClaim {
  int r = 0;
  int b = 0;
  KindSet kinds;
  ClaimStatus status = ClaimStatus::Unchecked;
  std::string source;
  std::uint64_t configs_checked = 0;
  std::vector<Point> witness_red;
  std::vector<RatPoint> witness_blue;
};

// Configuration sources for verify_pair_claim. AllOrderTypes is built in up
// to n = 5 (1, 2 and 3 order types); beyond that it is unavailable and a
// sampled or file-backed source must be used.
struct AllOrderTypes {
  int n = 0;
};
struct SampleSource {
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  std::int64_t coord_max = 1000;
  bool dedup = true;  // evaluate one representative per chirotope
};
struct FileSource {
  std::string path;
};
using ClaimSource = std::variant<AllOrderTypes, SampleSource, FileSource>;

// Canonical realizations behind AllOrderTypes(n), n <= 5.
std::vector<std::vector<Point>> all_order_type_realizations(int n);

// Checks the claim against every configuration the source yields;
// configurations are distributed across jobs workers and merged by index, so
// the reported witness is the first refuting configuration.
BlockersClaim verify_pair_claim(BlockersClaim claim, const ClaimSource& source,
                                unsigned jobs = 0);

struct ClosureEntry {
  int r = 0;
  int b = 0;
  bool derived = false;  // false: base entry, true: derived-by-lemma
  friend bool operator==(const ClosureEntry&, const ClosureEntry&) = default;
};

// Arithmetic closure of the induction lemma: from <r-1,b-1> and <r,b> derive
// <r+1,b+1>, iterated up to r = up_to. The lemma covers exactly
// {Pant,Bowtie} and {Pant,Necklace}; anything else throws KindsNotCovered.
std::vector<ClosureEntry> induction_closure(std::span<const std::pair<int, int>> base,
                                            const KindSet& kinds, int up_to);

}  // namespace garment
