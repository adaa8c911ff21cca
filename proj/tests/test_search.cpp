#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "garment/search.hpp"
#include "test_util.hpp"

using garment::AnnealOptions;
using garment::BadRecordLength;
using garment::Chirotope;
using garment::Color;
using garment::ColoredPointSet;
using garment::ColoringPolicy;
using garment::ConstructionResult;
using garment::CoordOutOfRange;
using garment::DbScanOptions;
using garment::DbScanSummary;
using garment::Error;
using garment::GarmentReport;
using garment::GarmentVerdict;
using garment::KindSet;
using garment::Point;
using garment::StructureKind;
using garment::TooLarge;
using garment::ValidationMode;

namespace {

const KindSet kAll{StructureKind::Cravat, StructureKind::Necklace, StructureKind::Bowtie,
                   StructureKind::Skirt, StructureKind::Pant};
const KindSet kPB{StructureKind::Pant, StructureKind::Bowtie};

std::vector<Color> colors_from_mask(int n, std::uint32_t reds) {
  std::vector<Color> colors(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    colors[static_cast<size_t>(i)] = (reds >> i & 1) ? Color::Red : Color::Blue;
  }
  return colors;
}

// Per-coloring oracle: a coloring defeats the point set when it admits no
// empty monochromatic structure, decided by the structures-module census
// rather than the scanner's mask machinery.
bool coloring_defeats(std::span<const Point> ps, std::uint32_t reds, const KindSet& kinds) {
  const ColoredPointSet cps(std::vector<Point>(ps.begin(), ps.end()),
                            colors_from_mask(static_cast<int>(ps.size()), reds),
                            ValidationMode::Full);
  return garment::empty_monochromatic_structures(cps, kinds).empty();
}

struct OracleScan {
  GarmentVerdict verdict = GarmentVerdict::AllColoringsContainEmpty;
  std::int64_t first = -1;  // index in enumeration order
  std::uint32_t reds = 0;
};

OracleScan oracle_scan(std::span<const Point> ps, const KindSet& kinds, bool halve) {
  const int n = static_cast<int>(ps.size());
  const std::uint64_t total = std::uint64_t(1) << (halve ? n - 1 : n);
  OracleScan out;
  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint32_t reds = halve ? (static_cast<std::uint32_t>(i) << 1) | 1u
                                     : static_cast<std::uint32_t>(i);
    if (coloring_defeats(ps, reds, kinds)) {
      out.verdict = GarmentVerdict::CounterexampleColoring;
      out.first = static_cast<std::int64_t>(i);
      out.reds = reds;
      return out;
    }
  }
  return out;
}

// The 11-point layered fixture: triangle hull, quadrilateral second layer,
// four innermost points, indices deliberately interleaved.
std::vector<Point> layered_fixture() {
  return {
      {170, 130}, {0, 0},     {120, 90},  {270, 85},  {400, 10}, {215, 135},
      {260, 210}, {200, 170}, {190, 390}, {110, 200}, {165, 155},
  };
}

// Replicates the documented corollary coloring family: hull red, second layer
// blue, and each way of turning exactly three of the four innermost red.
std::vector<std::uint32_t> layered_masks(std::span<const Point> ps) {
  const auto hull = garment::convex_hull(ps);
  std::vector<bool> on_hull(ps.size(), false);
  for (int i : hull) on_hull[static_cast<size_t>(i)] = true;
  std::vector<Point> rest;
  std::vector<int> rest_idx;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (!on_hull[i]) {
      rest.push_back(ps[i]);
      rest_idx.push_back(static_cast<int>(i));
    }
  }
  std::vector<bool> on_layer2(ps.size(), false);
  for (int i : garment::convex_hull(rest)) {
    on_layer2[static_cast<size_t>(rest_idx[static_cast<size_t>(i)])] = true;
  }
  std::uint32_t base = 0;
  std::vector<int> inner;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (on_hull[i]) base |= 1u << i;
    if (!on_hull[i] && !on_layer2[i]) inner.push_back(static_cast<int>(i));
  }
  std::vector<std::uint32_t> masks;
  for (int blue : inner) {
    std::uint32_t reds = base;
    for (int i : inner) {
      if (i != blue) reds |= 1u << i;
    }
    masks.push_back(reds);
  }
  return masks;
}

std::vector<Point> shifted_random_set(int n, std::uint64_t seed, std::int64_t coord_max,
                                      std::int64_t shift) {
  auto pts = garment::random_point_set(n, seed, coord_max);
  for (auto& p : pts) {
    p.x += shift;
    p.y += shift;
  }
  return pts;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("random point sets are deterministic, ranged, and in general position") {
  const auto a = garment::random_point_set(20, 77, 50);
  const auto b = garment::random_point_set(20, 77, 50);
  CHECK(a == b);
  CHECK(garment::random_point_set(12, 1) != garment::random_point_set(12, 2));
  CHECK(a.size() == 20);
  for (const Point& p : a) {
    CHECK(p.x >= -50);
    CHECK(p.x <= 50);
    CHECK(p.y >= -50);
    CHECK(p.y <= 50);
  }
  CHECK_NOTHROW(garment::validate_general_position(a, ValidationMode::Full));
  CHECK(garment::random_point_set(0, 5).empty());

  CHECK_THROWS_AS(garment::random_point_set(-1, 5), Error);
  CHECK_THROWS_AS(garment::random_point_set(4, 5, 0), CoordOutOfRange);
  CHECK_THROWS_AS(garment::random_point_set(4, 5, garment::kCoordCap + 1), CoordOutOfRange);
  // A 5x5 grid cannot hold 11 points without a collinear triple.
  CHECK_THROWS_AS(garment::random_point_set(11, 5, 2), Error);
}

TEST_CASE("order-type sampling saturates at the known small counts") {
  const auto tri = garment::sample_order_types(3, 200, 9);
  CHECK(tri.representatives.size() == 1);

  const auto four = garment::sample_order_types(4, 3000, 1);
  CHECK(four.representatives.size() == 2);
  const auto five = garment::sample_order_types(5, 5000, 2);
  CHECK(five.representatives.size() == 3);

  std::multiset<size_t> hulls4;
  for (const auto& pts : four.representatives) hulls4.insert(garment::convex_hull(pts).size());
  CHECK(hulls4 == std::multiset<size_t>{3, 4});
  std::multiset<size_t> hulls5;
  for (const auto& pts : five.representatives) hulls5.insert(garment::convex_hull(pts).size());
  CHECK(hulls5 == std::multiset<size_t>{3, 4, 5});

  const auto again = garment::sample_order_types(5, 5000, 2);
  CHECK(again.representatives == five.representatives);

  std::set<Chirotope> fps;
  for (const auto& pts : five.representatives) {
    CHECK(pts.size() == 5);
    CHECK_NOTHROW(garment::validate_general_position(pts, ValidationMode::Full));
    fps.insert(garment::chirotope_fingerprint(pts));
  }
  CHECK(fps.size() == five.representatives.size());

  int sum = 0;
  std::int64_t prev_samples = 0;
  int prev_total = 0;
  for (const auto& sat : five.saturation) {
    CHECK(sat.samples > prev_samples);
    CHECK(sat.total_types >= prev_total);
    sum += sat.new_types;
    prev_samples = sat.samples;
    prev_total = sat.total_types;
  }
  CHECK(sum == static_cast<int>(five.representatives.size()));
  CHECK(five.saturation.back().samples == 5000);
  CHECK(five.saturation.back().total_types == 3);
  CHECK(five.saturation.back().new_types == 0);  // long since plateaued

  CHECK_THROWS_AS(garment::sample_order_types(2, 100, 0), Error);
  CHECK_THROWS_AS(garment::sample_order_types(11, 100, 0), Error);
  CHECK_THROWS_AS(garment::sample_order_types(5, 0, 0), Error);
}

TEST_CASE("coloring scans agree with the per-coloring census oracle") {
  const std::vector<KindSet> kind_choices = {
      kAll, kPB, KindSet{StructureKind::Cravat},
      KindSet{StructureKind::Necklace, StructureKind::Skirt}, KindSet{StructureKind::Skirt}};
  int counterexamples = 0;
  for (int iter = 0; iter < 40; ++iter) {
    const int n = 4 + iter % 3;
    const auto pts = garment::random_point_set(n, 100 + static_cast<std::uint64_t>(iter), 60);
    const KindSet& kinds = kind_choices[static_cast<size_t>(iter) % kind_choices.size()];

    for (const bool halve : {true, false}) {
      ColoringPolicy policy;
      policy.halve_by_color_swap = halve;
      const GarmentReport rep = garment::scan_colorings(pts, kinds, policy, 1);
      const OracleScan want = oracle_scan(pts, kinds, halve);

      REQUIRE(rep.verdict == want.verdict);
      CHECK(rep.n == n);
      CHECK(rep.colorings_total == std::uint64_t(1) << (halve ? n - 1 : n));
      CHECK_FALSE(rep.filtered_out);
      if (want.verdict == GarmentVerdict::CounterexampleColoring) {
        ++counterexamples;
        CHECK(rep.counterexample == colors_from_mask(n, want.reds));
        // A single worker stops at the first defeating coloring.
        CHECK(rep.colorings_checked == static_cast<std::uint64_t>(want.first) + 1);
        const ColoredPointSet cps(pts, rep.counterexample, ValidationMode::Full);
        CHECK(garment::verify_construction(cps, kinds).ok);
      } else {
        CHECK(rep.colorings_checked == rep.colorings_total);
        CHECK(rep.counterexample.empty());
      }
    }
  }
  CHECK(counterexamples > 20);  // small sets nearly always admit a defeating coloring
}

TEST_CASE("coloring scans are job-count invariant") {
  const auto pts = garment::random_point_set(8, 3, 200);
  for (const KindSet& kinds : {kAll, KindSet{StructureKind::Cravat}}) {
    const GarmentReport solo = garment::scan_colorings(pts, kinds, {}, 1);
    const GarmentReport team = garment::scan_colorings(pts, kinds, {}, 4);
    CHECK(solo.verdict == team.verdict);
    CHECK(solo.counterexample == team.counterexample);
    CHECK(solo.colorings_total == team.colorings_total);
  }
}

TEST_CASE("capped and degenerate coloring scans") {
  const auto pts = garment::random_point_set(11, 4, 500);
  ColoringPolicy capped;
  capped.max_colorings = 16;
  const GarmentReport rep = garment::scan_colorings(pts, kAll, capped, 1);
  CHECK(rep.verdict == GarmentVerdict::Inconclusive);
  CHECK(rep.colorings_checked == 16);
  CHECK(rep.colorings_total == 1024);

  // A cap at or above the total leaves the scan exhaustive.
  ColoringPolicy roomy;
  roomy.max_colorings = 4096;
  const GarmentReport full = garment::scan_colorings(pts, kAll, roomy, 1);
  CHECK(full.verdict != GarmentVerdict::Inconclusive);
  CHECK(full.colorings_checked == full.colorings_total);

  CHECK(garment::to_string(GarmentVerdict::AllColoringsContainEmpty) ==
        "all-colorings-contain-empty");
  CHECK(garment::to_string(GarmentVerdict::CounterexampleColoring) == "counterexample-coloring");
  CHECK(garment::to_string(GarmentVerdict::Inconclusive) == "inconclusive");

  CHECK_THROWS_AS(garment::scan_colorings(std::vector<Point>{}, kAll, {}, 1), Error);
  CHECK_THROWS_AS(garment::scan_colorings(garment::random_point_set(25, 1, 2000), kAll, {}, 1),
                  TooLarge);
  CHECK_THROWS_AS(garment::scan_colorings(pts, KindSet{}, {}, 1), Error);
  const std::vector<Point> collinear = {{0, 0}, {1, 1}, {2, 2}, {5, 0}};
  CHECK_THROWS_AS(garment::scan_colorings(collinear, kAll, {}, 1), garment::CollinearInput);
}

TEST_CASE("the corollary filter admits only the layered shape") {
  const auto fixture = layered_fixture();
  ColoringPolicy policy;
  policy.corollary_layers = true;

  const auto masks = layered_masks(fixture);
  REQUIRE(masks.size() == 4);

  for (const KindSet& kinds :
       {kAll, KindSet{StructureKind::Necklace}, KindSet{StructureKind::Cravat},
        KindSet{StructureKind::Skirt}}) {
    const GarmentReport rep = garment::scan_colorings(fixture, kinds, policy, 1);
    REQUIRE_FALSE(rep.filtered_out);
    CHECK(rep.colorings_total == 4);

    std::int64_t first = -1;
    for (size_t i = 0; i < masks.size() && first < 0; ++i) {
      if (coloring_defeats(fixture, masks[i], kinds)) first = static_cast<std::int64_t>(i);
    }
    if (first >= 0) {
      CHECK(rep.verdict == GarmentVerdict::CounterexampleColoring);
      CHECK(rep.counterexample == colors_from_mask(11, masks[static_cast<size_t>(first)]));
      CHECK(rep.colorings_checked == static_cast<std::uint64_t>(first) + 1);
    } else {
      CHECK(rep.verdict == GarmentVerdict::AllColoringsContainEmpty);
      CHECK(rep.colorings_checked == 4);
    }
  }
  // The fixture survives every kind set; with all five kinds the four layered
  // colorings all contain an empty monochromatic structure.
  CHECK(garment::scan_colorings(fixture, kAll, policy, 1).verdict ==
        GarmentVerdict::AllColoringsContainEmpty);

  // Shapes that fail the layer casework are filtered, not scanned.
  int filtered = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = garment::random_point_set(11, 900 + seed, 400);
    const bool layered = [&] {
      if (garment::convex_hull(pts).size() != 3) return false;
      std::vector<bool> on_hull(pts.size(), false);
      for (int i : garment::convex_hull(pts)) on_hull[static_cast<size_t>(i)] = true;
      std::vector<Point> rest;
      for (size_t i = 0; i < pts.size(); ++i) {
        if (!on_hull[i]) rest.push_back(pts[i]);
      }
      return garment::convex_hull(rest).size() == 4;
    }();
    const GarmentReport rep = garment::scan_colorings(pts, kAll, policy, 1);
    CHECK(rep.filtered_out == !layered);
    if (rep.filtered_out) {
      ++filtered;
      CHECK(rep.colorings_checked == 0);
      CHECK(rep.colorings_total == 0);
      CHECK(rep.verdict == GarmentVerdict::Inconclusive);
    }
  }
  CHECK(filtered > 5);  // random sets essentially never match the casework shape
  CHECK(garment::scan_colorings(garment::random_point_set(10, 1, 300), kAll, policy, 1)
            .filtered_out);
}

TEST_CASE("db round trips preserve records across widths and endianness") {
  std::vector<std::vector<Point>> narrow;
  for (std::uint64_t s = 0; s < 12; ++s) narrow.push_back(shifted_random_set(5, 40 + s, 120, 127));

  const std::string path = "test_search_db5.bin";
  garment::write_order_type_db(path, narrow, 0);
  CHECK(std::filesystem::file_size(path) == 12 * 5 * 2 * 1);

  DbScanOptions opt;
  opt.n = 5;
  opt.kinds = kAll;
  opt.jobs = 1;
  const DbScanSummary sum = garment::scan_order_type_db(path, opt);
  CHECK(sum.first_record == 0);
  CHECK(sum.records_scanned == 12);
  CHECK(sum.next_record == 12);
  CHECK(sum.filtered_out == 0);

  std::map<std::uint64_t, GarmentReport> by_record;
  for (const auto& rep : sum.counterexample_reports) by_record[rep.record_index] = rep;
  std::uint64_t expect_cex = 0;
  for (std::uint64_t rec = 0; rec < narrow.size(); ++rec) {
    const GarmentReport direct = garment::scan_colorings(narrow[rec], kAll, {}, 1);
    if (direct.verdict != GarmentVerdict::CounterexampleColoring) continue;
    ++expect_cex;
    REQUIRE(by_record.count(rec) == 1);
    CHECK(by_record[rec].counterexample == direct.counterexample);
    CHECK(by_record[rec].colorings_total == direct.colorings_total);
  }
  CHECK(sum.counterexamples == expect_cex);
  CHECK(sum.counterexample_reports.size() == expect_cex);
  std::remove(path.c_str());

  // Nine-point records take two bytes per coordinate; endianness changes the
  // bytes but not the scan.
  std::vector<std::vector<Point>> wide;
  for (std::uint64_t s = 0; s < 4; ++s) wide.push_back(shifted_random_set(9, 60 + s, 1000, 1005));
  const std::string little = "test_search_db9le.bin";
  const std::string big = "test_search_db9be.bin";
  garment::write_order_type_db(little, wide, 0);
  garment::write_order_type_db(big, wide, 0, true);
  CHECK(std::filesystem::file_size(little) == 4 * 9 * 2 * 2);
  CHECK(file_bytes(little) != file_bytes(big));

  DbScanOptions wopt;
  wopt.n = 9;
  wopt.kinds = kPB;
  wopt.jobs = 1;
  const DbScanSummary le = garment::scan_order_type_db(little, wopt);
  wopt.big_endian = true;
  const DbScanSummary be = garment::scan_order_type_db(big, wopt);
  CHECK(le.records_scanned == 4);
  CHECK(be.records_scanned == 4);
  CHECK(le.counterexamples == be.counterexamples);
  for (size_t i = 0; i < le.counterexample_reports.size(); ++i) {
    CHECK(le.counterexample_reports[i].record_index == be.counterexample_reports[i].record_index);
    CHECK(le.counterexample_reports[i].counterexample ==
          be.counterexample_reports[i].counterexample);
  }

  // An explicit two-byte width widens small records too.
  const std::string wide5 = "test_search_db5w.bin";
  garment::write_order_type_db(wide5, narrow, 2);
  CHECK(std::filesystem::file_size(wide5) == 12 * 5 * 2 * 2);
  DbScanOptions w5;
  w5.n = 5;
  w5.coord_bytes = 2;
  w5.kinds = kAll;
  w5.jobs = 1;
  CHECK(garment::scan_order_type_db(wide5, w5).counterexamples == sum.counterexamples);

  std::remove(little.c_str());
  std::remove(big.c_str());
  std::remove(wide5.c_str());
}

TEST_CASE("db scans resume, checkpoint, and bound their reads") {
  std::vector<std::vector<Point>> sets;
  for (std::uint64_t s = 0; s < 10; ++s) sets.push_back(shifted_random_set(5, 70 + s, 120, 127));
  const std::string path = "test_search_db_resume.bin";
  garment::write_order_type_db(path, sets, 0);

  DbScanOptions base;
  base.n = 5;
  base.kinds = kAll;
  base.jobs = 1;

  const DbScanSummary whole = garment::scan_order_type_db(path, base);
  DbScanOptions head = base;
  head.max_records = 4;
  const DbScanSummary first = garment::scan_order_type_db(path, head);
  CHECK(first.records_scanned == 4);
  CHECK(first.next_record == 4);
  DbScanOptions tail = base;
  tail.start_record = first.next_record;
  const DbScanSummary second = garment::scan_order_type_db(path, tail);
  CHECK(second.first_record == 4);
  CHECK(second.records_scanned == 6);
  CHECK(second.next_record == 10);

  std::vector<std::uint64_t> whole_cex, split_cex;
  for (const auto& rep : whole.counterexample_reports) whole_cex.push_back(rep.record_index);
  for (const auto& rep : first.counterexample_reports) split_cex.push_back(rep.record_index);
  for (const auto& rep : second.counterexample_reports) split_cex.push_back(rep.record_index);
  CHECK(whole_cex == split_cex);
  CHECK(whole.counterexamples == first.counterexamples + second.counterexamples);

  std::vector<std::uint64_t> ticks;
  DbScanOptions cp = base;
  cp.checkpoint_every = 4;
  garment::scan_order_type_db(path, cp, [&](std::uint64_t at) { ticks.push_back(at); });
  CHECK(ticks == std::vector<std::uint64_t>{4, 8, 10});

  ticks.clear();
  cp.start_record = 3;
  garment::scan_order_type_db(path, cp, [&](std::uint64_t at) { ticks.push_back(at); });
  CHECK(ticks == std::vector<std::uint64_t>{7, 10});

  ticks.clear();
  cp.start_record = 0;
  cp.checkpoint_every = 0;  // no periodic checkpoints, only the final one
  garment::scan_order_type_db(path, cp, [&](std::uint64_t at) { ticks.push_back(at); });
  CHECK(ticks == std::vector<std::uint64_t>{10});

  DbScanOptions over = base;
  over.start_record = 6;
  over.max_records = 100;
  CHECK(garment::scan_order_type_db(path, over).records_scanned == 4);

  ticks.clear();
  DbScanOptions at_end = base;
  at_end.start_record = 10;
  const DbScanSummary empty =
      garment::scan_order_type_db(path, at_end, [&](std::uint64_t at) { ticks.push_back(at); });
  CHECK(empty.records_scanned == 0);
  CHECK(empty.next_record == 10);
  CHECK(ticks.empty());

  DbScanOptions beyond = base;
  beyond.start_record = 11;
  CHECK_THROWS_AS(garment::scan_order_type_db(path, beyond), Error);
  std::remove(path.c_str());
}

TEST_CASE("malformed databases are rejected with precise offsets") {
  std::vector<std::vector<Point>> sets;
  for (std::uint64_t s = 0; s < 8; ++s) sets.push_back(shifted_random_set(5, 80 + s, 120, 127));
  const std::string path = "test_search_db_bad.bin";
  garment::write_order_type_db(path, sets, 0);
  {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out.write("\x01\x02\x03\x04\x05\x06\x07", 7);
  }
  DbScanOptions opt;
  opt.n = 5;
  opt.kinds = kAll;
  opt.jobs = 1;
  try {
    garment::scan_order_type_db(path, opt);
    FAIL("truncated database accepted");
  } catch (const BadRecordLength& e) {
    CHECK(e.offset == 8 * 10);
    CHECK(std::string(e.what()).find("byte offset 80") != std::string::npos);
  }
  std::remove(path.c_str());

  // A zero-length file holds zero records of any length.
  { std::ofstream out(path, std::ios::binary | std::ios::trunc); }
  CHECK(garment::scan_order_type_db(path, opt).records_scanned == 0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(garment::scan_order_type_db("test_search_db_missing.bin", opt), Error);

  // A record violating general position is reported by index.
  sets[2] = {{0, 0}, {10, 10}, {20, 20}, {5, 90}, {90, 5}};
  garment::write_order_type_db(path, sets, 0);
  try {
    garment::scan_order_type_db(path, opt);
    FAIL("collinear record accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("record 2") != std::string::npos);
  }
  std::remove(path.c_str());

  DbScanOptions tiny = opt;
  tiny.n = 2;
  CHECK_THROWS_AS(garment::scan_order_type_db(path, tiny), Error);
  DbScanOptions huge = opt;
  huge.n = 25;
  CHECK_THROWS_AS(garment::scan_order_type_db(path, huge), TooLarge);
  DbScanOptions odd = opt;
  odd.coord_bytes = 3;
  CHECK_THROWS_AS(garment::scan_order_type_db(path, odd), Error);

  CHECK_THROWS_AS(
      garment::write_order_type_db(path, {{{0, 0}, {1, 3}, {2, 1}}, {{0, 0}, {1, 3}}}, 0),
      Error);
  CHECK_THROWS_AS(garment::write_order_type_db(path, {{{-1, 0}, {1, 3}, {2, 1}}}, 1),
                  CoordOutOfRange);
  CHECK_THROWS_AS(garment::write_order_type_db(path, {{{300, 0}, {1, 3}, {2, 1}}}, 1),
                  CoordOutOfRange);
  CHECK_THROWS_AS(garment::write_order_type_db(path, {{{70000, 0}, {1, 3}, {2, 1}}}, 2),
                  CoordOutOfRange);
}

TEST_CASE("annealing reaches a verified zero-energy construction") {
  AnnealOptions opt;
  opt.budget = 300'000;
  opt.jobs = 1;
  const ConstructionResult r = garment::lower_bound_search(10, kPB, 42, opt);
  REQUIRE(r.success);
  CHECK(r.best_energy == 0);
  CHECK(r.n == 10);
  CHECK(r.seed == 42);
  CHECK(r.points.size() == 10);
  CHECK(r.colors.size() == 10);
  CHECK(r.moves_used > 0);
  CHECK(r.moves_used <= opt.budget);
  for (const Point& p : r.points) {
    CHECK(p.x >= 0);
    CHECK(p.x < opt.coord_range);
    CHECK(p.y >= 0);
    CHECK(p.y < opt.coord_range);
  }
  const ColoredPointSet cps(r.points, r.colors, ValidationMode::Full);
  CHECK(garment::verify_construction(cps, kPB).ok);
  CHECK(garment::empty_monochromatic_structures(cps, kPB).empty());

  std::int64_t prev = r.energy_trace.empty() ? 0 : r.energy_trace.front();
  for (const std::int64_t e : r.energy_trace) {
    CHECK(e <= prev);
    prev = e;
  }

  const ConstructionResult again = garment::lower_bound_search(10, kPB, 42, opt);
  CHECK(again.points == r.points);
  CHECK(again.colors == r.colors);
  CHECK(again.moves_used == r.moves_used);
  CHECK(again.energy_trace == r.energy_trace);

  const ConstructionResult other = garment::lower_bound_search(10, kPB, 43, opt);
  CHECK((other.points != r.points || other.colors != r.colors));
}

TEST_CASE("annealing failures exhaust the budget and report the best state") {
  AnnealOptions opt;
  opt.budget = 2000;
  opt.jobs = 1;
  const ConstructionResult r =
      garment::lower_bound_search(12, KindSet{StructureKind::Necklace}, 7, opt);
  CHECK_FALSE(r.success);
  CHECK(r.best_energy > 0);
  CHECK(r.moves_used == opt.budget);
  CHECK(r.energy_trace.size() <= 2 * static_cast<size_t>(opt.trace_points));
  CHECK(r.energy_trace.size() > 100);
  std::int64_t prev = r.energy_trace.front();
  for (const std::int64_t e : r.energy_trace) {
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(r.energy_trace.back() >= r.best_energy);
  // The reported energy is an honest census of the returned state.
  const ColoredPointSet cps(r.points, r.colors, ValidationMode::Full);
  CHECK(static_cast<std::int64_t>(
            garment::empty_monochromatic_structures(cps, KindSet{StructureKind::Necklace})
                .size()) == r.best_energy);
}

TEST_CASE("tiny instances succeed without spending moves") {
  AnnealOptions opt;
  opt.budget = 100;
  opt.jobs = 2;
  const ConstructionResult r =
      garment::lower_bound_search(3, KindSet{StructureKind::Pant}, 5, opt);
  CHECK(r.success);
  CHECK(r.best_energy == 0);
  CHECK(r.moves_used == 0);  // no quadruples, so the initial state already wins
  CHECK(r.points.size() == 3);
  CHECK_NOTHROW(garment::validate_general_position(r.points, ValidationMode::Full));
}

TEST_CASE("annealing rejects bad parameters") {
  const KindSet kinds{StructureKind::Pant};
  CHECK_THROWS_AS(garment::lower_bound_search(0, kinds, 1), Error);
  CHECK_THROWS_AS(garment::lower_bound_search(25, kinds, 1), TooLarge);
  CHECK_THROWS_AS(garment::lower_bound_search(6, KindSet{}, 1), Error);

  AnnealOptions opt;
  opt.budget = 0;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), Error);
  opt = {};
  opt.coord_range = 1;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), CoordOutOfRange);
  opt.coord_range = garment::kCoordCap + 1;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), CoordOutOfRange);
  opt = {};
  opt.coord_range = 8;
  CHECK_THROWS_AS(garment::lower_bound_search(10, kinds, 1, opt), Error);
  opt = {};
  opt.t_start = 0.5;
  opt.t_end = 1.0;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), Error);
  opt = {};
  opt.t_end = 0.0;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), Error);
  opt = {};
  opt.trace_points = 0;
  CHECK_THROWS_AS(garment::lower_bound_search(6, kinds, 1, opt), Error);
}
