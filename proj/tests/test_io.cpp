#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "garment/io.hpp"

using garment::Color;
using garment::ColoredPointSet;
using garment::DocumentPoint;
using garment::ParseError;
using garment::Point;
using garment::PointSetDocument;
using garment::StructureKind;

namespace {

PointSetDocument parse(const std::string& text) {
  std::istringstream in(text);
  return garment::read_document(in);
}

int error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    auto doc = garment::read_document(in);
    doc.to_colored_set();
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("document round trip preserves points, colors, order, and metadata") {
  PointSetDocument doc;
  doc.name = "fixture";
  doc.source = "unit";
  doc.avoided_kinds = {StructureKind::Pant, StructureKind::Bowtie};
  doc.points = {
      DocumentPoint{{0, 0}, Color::Red, 0},
      DocumentPoint{{-7, 3}, Color::Blue, 0},
      DocumentPoint{{5, 1}, Color::Red, 0},
      DocumentPoint{{2, 9}, Color::Blue, 0},
  };
  std::ostringstream out;
  garment::write_document(out, doc);
  const PointSetDocument back = parse(out.str());
  CHECK(back.schema == 1);
  CHECK(back.name == "fixture");
  CHECK(back.source == "unit");
  REQUIRE(back.avoided_kinds.size() == 2);
  CHECK(back.avoided_kinds[0] == StructureKind::Pant);
  CHECK(back.avoided_kinds[1] == StructureKind::Bowtie);
  REQUIRE(back.points.size() == doc.points.size());
  for (size_t i = 0; i < doc.points.size(); ++i) {
    CHECK(back.points[i].p == doc.points[i].p);
    CHECK(back.points[i].color == doc.points[i].color);
  }
  // A second render of the parsed document is byte-identical.
  std::ostringstream again;
  garment::write_document(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("documents built from a colored set convert back to the same set") {
  const std::vector<Point> pts = {{0, 0}, {10, 1}, {4, 8}, {6, 3}};
  const std::vector<Color> cols = {Color::Red, Color::Blue, Color::Red, Color::Red};
  const ColoredPointSet cps(pts, cols);
  const PointSetDocument doc = garment::make_document(cps, "roundtrip");
  CHECK(doc.colored());
  const ColoredPointSet back = doc.to_colored_set();
  CHECK(back.points() == pts);
  CHECK(back.colors() == cols);
}

TEST_CASE("blank lines are tolerated and multiple documents split on headers") {
  const std::string text =
      "{\"schema\":1,\"name\":\"a\"}\n"
      "{\"x\":0,\"y\":0,\"color\":\"red\"}\n"
      "\n"
      "{\"x\":3,\"y\":1,\"color\":\"blue\"}\n"
      "{\"schema\":1,\"name\":\"b\"}\n"
      "{\"x\":5,\"y\":5}\n";
  std::istringstream in(text);
  const auto docs = garment::read_documents(in);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].name == "a");
  CHECK(docs[0].points.size() == 2);
  CHECK(docs[0].colored());
  CHECK(docs[1].name == "b");
  CHECK(docs[1].points.size() == 1);
  CHECK_FALSE(docs[1].colored());

  std::istringstream in2(text);
  CHECK_THROWS_AS(garment::read_document(in2), garment::Error);  // two documents, one expected
}

TEST_CASE("parse failures carry the offending line number") {
  // Broken JSON on line 3.
  CHECK(error_line("{\"schema\":1}\n{\"x\":0,\"y\":0,\"color\":\"red\"}\nnot json\n") == 3);
  // Missing y.
  CHECK(error_line("{\"schema\":1}\n{\"x\":0,\"color\":\"red\"}\n") == 2);
  // Fractional coordinate.
  CHECK(error_line("{\"schema\":1}\n{\"x\":1.5,\"y\":0,\"color\":\"red\"}\n") == 2);
  // Coordinate cap.
  CHECK(error_line("{\"schema\":1}\n{\"x\":1073741825,\"y\":0,\"color\":\"red\"}\n") == 2);
  // Unknown color.
  CHECK(error_line("{\"schema\":1}\n{\"x\":0,\"y\":0,\"color\":\"green\"}\n") == 2);
  // Unknown kind in avoids.
  CHECK(error_line("{\"schema\":1,\"avoids\":[\"sock\"]}\n{\"x\":0,\"y\":0,\"color\":\"red\"}\n") ==
        1);
  // Unsupported schema.
  CHECK(error_line("{\"schema\":2}\n{\"x\":0,\"y\":0,\"color\":\"red\"}\n") == 1);
  // Point before any header.
  CHECK(error_line("{\"x\":0,\"y\":0,\"color\":\"red\"}\n") == 1);
  // Neither header nor point.
  CHECK(error_line("{\"schema\":1}\n{\"z\":0}\n") == 2);
}

TEST_CASE("general-position violations map back to source lines") {
  // Lines 2 and 4 duplicate; the later line is reported.
  const std::string dup =
      "{\"schema\":1}\n"
      "{\"x\":0,\"y\":0,\"color\":\"red\"}\n"
      "{\"x\":1,\"y\":5,\"color\":\"red\"}\n"
      "{\"x\":0,\"y\":0,\"color\":\"blue\"}\n";
  CHECK(error_line(dup) == 4);

  // Lines 2, 3, 5 are collinear (y = x); line 5 is reported.
  const std::string col =
      "{\"schema\":1}\n"
      "{\"x\":0,\"y\":0,\"color\":\"red\"}\n"
      "{\"x\":2,\"y\":2,\"color\":\"red\"}\n"
      "{\"x\":1,\"y\":7,\"color\":\"blue\"}\n"
      "{\"x\":5,\"y\":5,\"color\":\"blue\"}\n";
  CHECK(error_line(col) == 5);

  // An uncolored point cannot join a colored set; its line is reported.
  const std::string uncolored =
      "{\"schema\":1}\n"
      "{\"x\":0,\"y\":0,\"color\":\"red\"}\n"
      "{\"x\":2,\"y\":3}\n"
      "{\"x\":5,\"y\":1,\"color\":\"blue\"}\n";
  CHECK(error_line(uncolored) == 3);

  // to_validated_points applies the same geometry checks, colors aside.
  std::istringstream in(col);
  auto doc = garment::read_document(in);
  CHECK_THROWS_AS(doc.to_validated_points(), ParseError);
}

TEST_CASE("file round trip") {
  PointSetDocument doc;
  doc.name = "disk";
  doc.points = {DocumentPoint{{1, 2}, Color::Red, 0}, DocumentPoint{{4, 7}, Color::Blue, 0},
                DocumentPoint{{9, 3}, Color::Red, 0}};
  const std::string path = "test_io_roundtrip.jsonl";
  garment::write_document_file(path, doc);
  const PointSetDocument back = garment::read_document_file(path);
  CHECK(back.name == "disk");
  REQUIRE(back.points.size() == 3);
  CHECK(back.points[2].p == Point{9, 3});
  CHECK(garment::read_documents_file(path).size() == 1);
  std::remove(path.c_str());
  CHECK_THROWS_AS(garment::read_document_file(path), garment::Error);
}
