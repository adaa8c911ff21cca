#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "garment/geom.hpp"
#include "garment/structures.hpp"

namespace garment {

struct TooLarge : Error {
  using Error::Error;
};
struct BadRecordLength : Error {
  BadRecordLength(std::uint64_t at, const std::string& what)
      : Error(what + " (byte offset " + std::to_string(at) + ")"), offset(at) {}
  std::uint64_t offset;
};

// Uniform random general-position set with coordinates in [-coord_max,
// coord_max]; deterministic in seed, independent of the standard library's
// distributions.
std::vector<Point> random_point_set(int n, std::uint64_t seed, std::int64_t coord_max = 1000);

enum class GarmentVerdict {
  AllColoringsContainEmpty,
  CounterexampleColoring,
  Inconclusive,
};

std::string to_string(GarmentVerdict v);

struct GarmentReport {
  int n = 0;
  KindSet kinds;
  GarmentVerdict verdict = GarmentVerdict::Inconclusive;
  std::vector<Color> counterexample;        // set iff verdict is CounterexampleColoring
  std::uint64_t colorings_checked = 0;
  std::uint64_t colorings_total = 0;        // admissible colorings under the policy
  bool filtered_out = false;                // point set rejected by a structural filter
  std::uint64_t record_index = 0;           // source record for database scans
};

// How scan_colorings walks the coloring space.
struct ColoringPolicy {
  bool halve_by_color_swap = true;  // fix the first point red
  // Opt-in structural filter from the 11-point corollary casework: all-red
  // hull of size 3, all-blue second convex layer of size 4, six red and five
  // blue points overall. Sets failing the layer shape are filtered_out.
  bool corollary_layers = false;
  std::uint64_t max_colorings = 0;  // 0 = exhaustive; otherwise Inconclusive after the cap
};

// Checks every admissible 2-coloring of ps for an empty monochromatic
// structure of the kinds. n <= 24.
GarmentReport scan_colorings(std::span<const Point> ps, const KindSet& kinds,
                             const ColoringPolicy& policy = {}, unsigned jobs = 0);

struct SaturationPoint {
  std::int64_t samples = 0;  // cumulative samples drawn
  int new_types = 0;         // types first seen in this batch
  int total_types = 0;       // cumulative distinct chirotopes
};

struct OrderTypeSample {
  std::vector<std::vector<Point>> representatives;  // one per distinct chirotope
  std::vector<SaturationPoint> saturation;
};

// Random sets deduplicated by chirotope fingerprint; the saturation curve
// records new-types-per-batch. n <= 10.
OrderTypeSample sample_order_types(int n, std::int64_t budget, std::uint64_t seed);

// Order-type database scanning. Record layout: n points, x before y, each
// coordinate unsigned of coord_bytes (1 for n <= 8, else 2), 2-byte
// coordinates little-endian unless big_endian is set. The record length must
// divide the file length exactly.
struct DbScanOptions {
  int n = 0;
  int coord_bytes = 0;  // 0 = derive from n
  bool big_endian = false;
  KindSet kinds;
  ColoringPolicy policy;
  std::uint64_t start_record = 0;  // resume point
  std::uint64_t max_records = 0;   // 0 = to end of file
  std::uint64_t checkpoint_every = 1'000'000;
  unsigned jobs = 0;
};

struct DbScanSummary {
  std::uint64_t first_record = 0;
  std::uint64_t records_scanned = 0;
  std::uint64_t filtered_out = 0;
  std::uint64_t counterexamples = 0;
  std::uint64_t next_record = 0;  // resume here
  std::vector<GarmentReport> counterexample_reports;
};

// on_checkpoint receives the absolute record index after every
// checkpoint_every records (and once at the end).
DbScanSummary scan_order_type_db(const std::string& path, const DbScanOptions& opt,
                                 const std::function<void(std::uint64_t)>& on_checkpoint = {});

void write_order_type_db(const std::string& path,
                         const std::vector<std::vector<Point>>& sets, int coord_bytes,
                         bool big_endian = false);

struct AnnealOptions {
  std::int64_t budget = 10'000'000;      // total moves across all chains
  unsigned jobs = 0;                     // parallel chains (0 = default)
  std::int64_t coord_range = 1 << 16;    // coordinates stay in [0, coord_range)
  double t_start = 3.0;
  double t_end = 0.02;
  std::int64_t restart_after = 250'000;  // stagnant accepted-move-free span
  int trace_points = 512;                // energy trace granularity
};

struct ConstructionResult {
  int n = 0;
  KindSet kinds;
  std::uint64_t seed = 0;
  bool success = false;
  std::int64_t best_energy = -1;  // empty monochromatic structures of best state
  std::vector<Point> points;
  std::vector<Color> colors;
  std::vector<std::int64_t> energy_trace;  // downsampled best-energy curve
  std::int64_t moves_used = 0;
};

// Simulated annealing over (integer coordinates, coloring); energy = number
// of empty monochromatic structures of the kinds. Bit-reproducible for a
// fixed seed and options. Failure to reach zero is a result, not an error.
ConstructionResult lower_bound_search(int n, const KindSet& kinds, std::uint64_t seed,
                                      const AnnealOptions& opt = {});

struct CensusEntry {
  StructureInstance inst;
  StructureStatus status;
  std::optional<int> blocker;  // an opposite-color point inside, when blocked
};

struct ConstructionVerdict {
  bool ok = false;  // zero empty monochromatic structures of the kinds
  std::vector<CensusEntry> monochromatic;
};

ConstructionVerdict verify_construction(const ColoredPointSet& cps, const KindSet& kinds);

}  // namespace garment
