#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "garment/geom.hpp"
#include "garment/rational.hpp"

namespace garment {

// The five 4-point structures. Every quadruple in general position carries a
// fixed census: convex position yields 1 cravat + 4 necklaces + 2 bowties,
// non-convex position yields 1 skirt + 3 pants.
enum class StructureKind : std::uint8_t { Cravat, Necklace, Bowtie, Skirt, Pant };

inline constexpr std::array<StructureKind, 5> kAllKinds = {
    StructureKind::Cravat, StructureKind::Necklace, StructureKind::Bowtie,
    StructureKind::Skirt, StructureKind::Pant};

std::string to_string(StructureKind k);
std::optional<StructureKind> parse_kind(const std::string& name);

// Set of structure kinds, bitmask-backed.
class KindSet {
 public:
  KindSet() = default;
  KindSet(std::initializer_list<StructureKind> kinds) {
    for (StructureKind k : kinds) add(k);
  }
  void add(StructureKind k) { bits_ |= bit(k); }
  bool contains(StructureKind k) const { return (bits_ & bit(k)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::vector<StructureKind> list() const;
  friend bool operator==(const KindSet&, const KindSet&) = default;

 private:
  static std::uint8_t bit(StructureKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

std::string to_string(const KindSet& kinds);
// Parses comma-separated kind names ("pant,necklace"); throws Error on junk.
KindSet parse_kinds(const std::string& csv);

struct ConvexPosition {
  std::array<int, 4> hull;  // ccw, starting at the lexicographic minimum
};
struct NonConvexPosition {
  std::array<int, 3> hull;  // apexes ccw, starting at the lexicographic minimum
  int interior;
};
using QuadrupleClass = std::variant<ConvexPosition, NonConvexPosition>;

// Classifies four points given by indices into pts.
QuadrupleClass classify_quadruple(std::span<const Point> pts, const std::array<int, 4>& q);

// One structure on a concrete quadruple. idx holds point indices in canonical
// geometric order: convex kinds store the ccw hull; skirt/pant store the ccw
// apexes with the interior point last. variant keys the necklace shared edge
// (0..3), the bowtie wing pairing (0..1) and the pant broken edge (0..2).
struct StructureInstance {
  StructureKind kind;
  std::array<int, 4> idx;
  std::uint8_t variant = 0;
  friend bool operator==(const StructureInstance&, const StructureInstance&) = default;
};

std::string to_string(const StructureInstance& inst);

// All structure instances determined by one quadruple: 7 for convex position,
// 4 otherwise.
std::vector<StructureInstance> instances_on_quadruple(std::span<const Point> pts,
                                                      const std::array<int, 4>& q);

// Closed-region membership. The bowtie test never constructs the crossing
// point; each wing reduces to orientation signs against lines through the
// defining points.
bool region_contains(const StructureInstance& inst, std::span<const Point> pts,
                     const Point& probe);
bool region_contains(const StructureInstance& inst, std::span<const Point> pts,
                     const RatPoint& probe);

struct StructureStatus {
  bool monochromatic = false;
  bool same_color_clean = false;  // meaningful only when monochromatic
  bool blocked = false;           // meaningful only when monochromatic
  bool empty() const { return monochromatic && same_color_clean && !blocked; }
};

StructureStatus structure_status(const StructureInstance& inst, const ColoredPointSet& cps);

// Every instance of the requested kinds whose status is empty (monochromatic,
// no same-color fifth point, unblocked), in deterministic quadruple order.
std::vector<StructureInstance> empty_monochromatic_structures(const ColoredPointSet& cps,
                                                              const KindSet& kinds);

}  // namespace garment
