#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "garment/io.hpp"
#include "garment/render.hpp"
#include "garment/search.hpp"

using garment::Color;
using garment::ColoredPointSet;
using garment::Error;
using garment::KindSet;
using garment::Point;
using garment::PointSetDocument;
using garment::StructureInstance;
using garment::StructureKind;
using garment::ValidationMode;

namespace {

// Seven points with no empty monochromatic skirt or bowtie but one empty
// monochromatic pant; companion of the render and CLI examples.
ColoredPointSet pant_witness_set() {
  const std::vector<Point> pts = {{64, 4}, {21, 7},  {2, 23},  {68, 79},
                                  {23, 18}, {5, 9},  {90, 100}};
  const std::vector<Color> colors = {Color::Red,  Color::Blue, Color::Blue, Color::Red,
                                     Color::Blue, Color::Red,  Color::Blue};
  return ColoredPointSet(pts, colors, ValidationMode::Full);
}

// Minimal structural XML audit: every opened tag closes in order.
bool tags_balance(const std::string& svg) {
  std::vector<std::string> stack;
  size_t at = 0;
  while ((at = svg.find('<', at)) != std::string::npos) {
    const size_t end = svg.find('>', at);
    if (end == std::string::npos) return false;
    std::string tag = svg.substr(at + 1, end - at - 1);
    at = end + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?') continue;
    if (tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (tag.back() == '/') continue;
    stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return stack.empty();
}

size_t count_of(const std::string& hay, const std::string& needle) {
  size_t count = 0;
  for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) {
    ++count;
  }
  return count;
}

// Coordinate pair lists of every polygon of the given class, in order.
std::vector<std::vector<std::string>> polygons_of(const std::string& svg,
                                                  const std::string& cls) {
  std::vector<std::vector<std::string>> out;
  const std::string key = "<polygon class=\"" + cls + "\" points=\"";
  for (size_t at = svg.find(key); at != std::string::npos; at = svg.find(key, at + 1)) {
    const size_t lo = at + key.size();
    const size_t hi = svg.find('"', lo);
    REQUIRE(hi != std::string::npos);
    std::vector<std::string> pairs;
    std::string pair;
    for (const char c : svg.substr(lo, hi - lo)) {
      if (c == ' ') {
        pairs.push_back(pair);
        pair.clear();
      } else {
        pair += c;
      }
    }
    pairs.push_back(pair);
    for (const auto& p : pairs) CHECK(count_of(p, ",") == 1);
    out.push_back(std::move(pairs));
  }
  return out;
}

}  // namespace

TEST_CASE("renders are byte-identical and structurally well formed") {
  const auto doc = garment::make_document(pant_witness_set(), "seven & <counter>");
  const std::string svg = garment::render_svg(doc);
  CHECK(svg == garment::render_svg(doc));
  CHECK(svg.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>", 0) == 0);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("viewBox=\"") != std::string::npos);
  CHECK(tags_balance(svg));
  CHECK(svg.find("<title>seven &amp; &lt;counter&gt;</title>") != std::string::npos);
  CHECK(count_of(svg, "<circle") == 7);
  CHECK(count_of(svg, "fill=\"#d63031\"") == 3);   // red points
  CHECK(count_of(svg, "fill=\"#0984e3\"") == 4);   // blue points
  CHECK(polygons_of(svg, "hull").size() == 1);
  CHECK(count_of(svg, "<polygon") == 1);  // no highlights requested
}

TEST_CASE("a convex quadruple's cravat renders as one filled quadrilateral") {
  const std::vector<Point> quad = {{0, 0}, {10, 0}, {12, 9}, {1, 8}};
  PointSetDocument doc;
  for (const Point& p : quad) doc.points.push_back({p, std::nullopt, 0});

  StructureInstance cravat;
  bool found = false;
  for (const auto& inst : garment::instances_on_quadruple(quad, {0, 1, 2, 3})) {
    if (inst.kind == StructureKind::Cravat) {
      cravat = inst;
      found = true;
    }
  }
  REQUIRE(found);

  const std::string svg = garment::render_svg(doc, std::vector<StructureInstance>{cravat});
  CHECK(svg == garment::render_svg(doc, std::vector<StructureInstance>{cravat}));
  CHECK(tags_balance(svg));
  const auto polys = polygons_of(svg, "cravat");
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].size() == 4);
  // Uncolored points render in the neutral fill.
  CHECK(count_of(svg, "fill=\"#444444\"") == 4);
}

TEST_CASE("necklace and bowtie highlights draw their constituent triangles") {
  const std::vector<Point> square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  PointSetDocument doc;
  for (const Point& p : square) doc.points.push_back({p, std::nullopt, 0});

  std::vector<StructureInstance> necklaces, bowties;
  for (const auto& inst : garment::instances_on_quadruple(square, {0, 1, 2, 3})) {
    if (inst.kind == StructureKind::Necklace) necklaces.push_back(inst);
    if (inst.kind == StructureKind::Bowtie) bowties.push_back(inst);
  }
  REQUIRE(necklaces.size() == 4);
  REQUIRE(bowties.size() == 2);

  const std::string neck_svg =
      garment::render_svg(doc, std::vector<StructureInstance>{necklaces[0]});
  const auto neck = polygons_of(neck_svg, "necklace");
  REQUIRE(neck.size() == 2);
  CHECK(neck[0].size() == 3);
  CHECK(neck[1].size() == 3);
  // Both triangles share the necklace's common edge.
  CHECK(neck[0][0] == neck[1][0]);
  CHECK(neck[0][1] == neck[1][1]);

  const std::string bow_svg =
      garment::render_svg(doc, std::vector<StructureInstance>{bowties[0]});
  const auto wings = polygons_of(bow_svg, "bowtie");
  REQUIRE(wings.size() == 2);
  CHECK(wings[0].size() == 3);
  CHECK(wings[1].size() == 3);
  // The square's diagonals cross at (5, 5), which maps to "5,-5".
  CHECK(wings[0][2] == "5,-5");
  CHECK(wings[1][2] == "5,-5");

  // A non-integer crossing prints as an exact rounded decimal.
  const std::vector<Point> skew = {{0, 0}, {9, 0}, {10, 10}, {0, 10}};
  PointSetDocument skew_doc;
  for (const Point& p : skew) skew_doc.points.push_back({p, std::nullopt, 0});
  std::vector<StructureInstance> skew_bows;
  for (const auto& inst : garment::instances_on_quadruple(skew, {0, 1, 2, 3})) {
    if (inst.kind == StructureKind::Bowtie) skew_bows.push_back(inst);
  }
  REQUIRE_FALSE(skew_bows.empty());
  const std::string skew_svg =
      garment::render_svg(skew_doc, std::vector<StructureInstance>{skew_bows[0]});
  CHECK(skew_svg.find("4.736842,-4.736842") != std::string::npos);  // 90/19
  CHECK(skew_svg == garment::render_svg(skew_doc, std::vector<StructureInstance>{skew_bows[0]}));
}

TEST_CASE("the empty pant witness renders as a notched 4-gon") {
  const ColoredPointSet cps = pant_witness_set();
  CHECK(garment::verify_construction(cps, KindSet{StructureKind::Skirt, StructureKind::Bowtie})
            .ok);
  const auto pants =
      garment::empty_monochromatic_structures(cps, KindSet{StructureKind::Pant});
  REQUIRE(pants.size() == 1);

  const auto doc = garment::make_document(cps, "pant witness");
  const std::string svg = garment::render_svg(doc, pants);
  CHECK(tags_balance(svg));
  const auto polys = polygons_of(svg, "pant");
  REQUIRE(polys.size() == 1);
  CHECK(polys[0].size() == 4);
  // The notch detours through the interior point right after the broken edge
  // start: vertices are apex e, interior, apex e+1, apex e+2.
  const StructureInstance& pant = pants[0];
  const auto& pts = cps.points();
  auto at = [&](int i) {
    return std::to_string(pts[static_cast<size_t>(pant.idx[static_cast<size_t>(i)])].x) + "," +
           std::to_string(-pts[static_cast<size_t>(pant.idx[static_cast<size_t>(i)])].y);
  };
  const int e = pant.variant;
  CHECK(polys[0][0] == at(e));
  CHECK(polys[0][1] == at(3));
  CHECK(polys[0][2] == at((e + 1) % 3));
  CHECK(polys[0][3] == at((e + 2) % 3));
}

TEST_CASE("invalid documents and highlights are rejected") {
  PointSetDocument collinear;
  for (const Point& p : std::vector<Point>{{0, 0}, {5, 5}, {10, 10}, {3, 9}}) {
    collinear.points.push_back({p, std::nullopt, 0});
  }
  CHECK_THROWS_AS(garment::render_svg(collinear), Error);

  const std::vector<Point> quad = {{0, 0}, {10, 0}, {12, 9}, {1, 8}};
  PointSetDocument doc;
  for (const Point& p : quad) doc.points.push_back({p, std::nullopt, 0});
  StructureInstance stray{StructureKind::Skirt, {0, 1, 9, 2}, 0};
  CHECK_THROWS_AS(garment::render_svg(doc, std::vector<StructureInstance>{stray}), Error);

  // A bowtie whose named diagonals do not cross is refused rather than drawn.
  StructureInstance fake{StructureKind::Bowtie, {0, 1, 3, 2}, 0};
  CHECK_THROWS_AS(garment::render_svg(doc, std::vector<StructureInstance>{fake}), Error);

  PointSetDocument tiny;
  tiny.points.push_back({{3, 4}, Color::Red, 0});
  tiny.points.push_back({{6, 1}, Color::Blue, 0});
  const std::string svg = garment::render_svg(tiny);
  CHECK(tags_balance(svg));
  CHECK(count_of(svg, "<circle") == 2);
  CHECK(count_of(svg, "<polygon") == 0);

  const std::string empty_svg = garment::render_svg(PointSetDocument{});
  CHECK(tags_balance(empty_svg));
  CHECK(empty_svg.find("viewBox=\"") != std::string::npos);
}
