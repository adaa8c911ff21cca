#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "garment/geom.hpp"
#include "garment/structures.hpp"

namespace garment {

// Parse failure with the 1-based line number of the offending input line.
struct ParseError : Error {
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  int line;
};

struct DocumentPoint {
  Point p;
  std::optional<Color> color;
  int line = 0;  // source line, 0 when constructed in memory
};

// Line-oriented point-set file. The first line is a header object
//   {"schema":1,"name":...,"source":...,"avoids":[...]}
// (name/source/avoids optional); every following non-blank line is one point
//   {"x":-3,"y":7,"color":"red"}
// with integer coordinates and an optional color. Several documents may be
// concatenated in one file; each header starts a new one.
struct PointSetDocument {
  int schema = 1;
  std::string name;
  std::string source;
  std::vector<StructureKind> avoided_kinds;
  std::vector<DocumentPoint> points;

  bool colored() const;
  std::vector<Point> raw_points() const;
  // Requires every point colored; validates general position. Collinear or
  // duplicate points surface as ParseError naming the offending line.
  ColoredPointSet to_colored_set(ValidationMode mode = ValidationMode::Auto) const;
  // Color-blind variant of the same validation.
  std::vector<Point> to_validated_points(ValidationMode mode = ValidationMode::Auto) const;
};

PointSetDocument make_document(const ColoredPointSet& cps, const std::string& name = "");

// Single document (the stream must contain exactly one).
PointSetDocument read_document(std::istream& in);
PointSetDocument read_document_file(const std::string& path);

// Every concatenated document in the stream, in order.
std::vector<PointSetDocument> read_documents(std::istream& in);
std::vector<PointSetDocument> read_documents_file(const std::string& path);

void write_document(std::ostream& out, const PointSetDocument& doc);
void write_document_file(const std::string& path, const PointSetDocument& doc);

}  // namespace garment
